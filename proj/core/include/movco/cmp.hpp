// Copyright 2026 The MOVCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Cash Management problem (CMP).
//
// C cash points are scheduled over D days. The decision M[c][t] is the
// normalized cash level in {0, 1, 2, 3}, encoded by two qubits:
//
//   q(c, t, i) = 2 * (c * D + t) + i,   M = b0 + 2 * b1
//
// which is the spin form M = 3/2 + z0/2 + z1 under z = 2b - 1. Level bounds
// therefore hold by construction; the D + 1 hard constraints are
//
//   * final-day network total:  sum_c M[c][D-1] <= v_f
//   * daily transaction limit:  N_t = #{c : M[c][t] != W[c][t]} <= l
//
// where W is the cash a point would hold with no transaction that day.

#ifndef MOVCO_CMP_HPP
#define MOVCO_CMP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "movco/qsim.hpp"
#include "movco/random.hpp"

namespace movco::cmp {

inline constexpr int kLevels = 4;

struct Instance {
  int cash_points = 0;                   // C
  int days = 0;                          // D
  int levels = kLevels;                  // h
  std::vector<double> first_day_price;   // k0[c]
  std::vector<double> price;             // k[c]
  std::vector<int> prediction;           // p[c][t], row-major c * D + t
  int final_cash_limit = 0;              // v_f
  int daily_transaction_limit = 0;       // l
  std::uint64_t seed = 0;
  std::optional<int> satisfiability_cap;

  int predicted(int c, int t) const { return prediction[static_cast<std::size_t>(c * days + t)]; }
  int min_level() const { return 0; }
  int max_level() const { return levels - 1; }
  std::size_t variable_count() const { return 2 * static_cast<std::size_t>(cash_points * days); }
  int constraint_count() const { return days + 1; }

  bool operator==(const Instance&) const = default;
};

/// Throws InvalidArgument describing every violated field.
void validate(const Instance& instance);

/// Denominator of the per-sample satisfaction fraction: the satisfiability
/// cap when one is recorded, otherwise D + 1. A sample counts as feasible
/// when it satisfies this many constraints.
int satisfaction_normalizer(const Instance& instance);

inline std::size_t qubit_index(int c, int t, int i, int days) {
  return static_cast<std::size_t>(2 * (c * days + t) + i);
}

/// The cash-level matrix M[c][t], row-major.
class Schedule {
 public:
  Schedule(int cash_points, int days);
  Schedule(int cash_points, int days, std::vector<int> levels);

  int cash_points() const { return cash_points_; }
  int days() const { return days_; }
  int at(int c, int t) const { return levels_[static_cast<std::size_t>(c * days_ + t)]; }
  void set(int c, int t, int level);
  std::span<const int> levels() const { return levels_; }

  bool operator==(const Schedule&) const = default;

 private:
  int cash_points_;
  int days_;
  std::vector<int> levels_;
};

Schedule decode(const qsim::Bitstring& bits, const Instance& instance);
qsim::Bitstring encode(const Schedule& schedule);

/// W[c][t], row-major: W[c][0] = p[c][0], W[c][t] = p[c][t] + M[c][t-1] - p[c][t-1].
std::vector<int> no_transaction_cash(const Schedule& schedule, const Instance& instance);

double transaction_cost(const Schedule& schedule, const Instance& instance);

struct ConstraintReport {
  bool final_total_ok = false;
  std::vector<bool> daily_tx_ok;
  int satisfied_count = 0;
  int total = 0;         // always D + 1
  double fraction = 0;   // satisfied_count / satisfaction_normalizer
};

ConstraintReport check_constraints(const Schedule& schedule, const Instance& instance);

struct PenaltyWeights {
  double final_total = 0.0;  // lambda_f
  double daily = 0.0;        // lambda_l
};

/// Transaction cost plus lambda_f [G_D > v_f] + lambda_l sum_t [N_t > l].
/// Only strict violations are penalized, so the penalty is zero exactly on
/// the feasible set.
double penalized_cost(const Schedule& schedule, const Instance& instance,
                      const PenaltyWeights& weights);

/// sum_c k0[c] + (D - 1) sum_c k[c]; no schedule costs more.
double cost_upper_bound(const Instance& instance);

/// l = 1 for C = 2, otherwise 3C/4 rounded half away from zero.
int default_daily_limit(int cash_points);

/// Random instance: k ~ U{1..4}, k0 = 2k, p ~ U{-2..5}, v_f = C.
/// Draw order: k[0..C), then p row-major. The seed field is left at 0.
Instance generate_instance(int cash_points, int days, Rng& rng);

/// Largest number of constraints met by any schedule (exhaustive search).
/// Throws ResourceLimit when 2CD > max_bits.
int max_satisfiable(const Instance& instance, std::size_t max_bits = 24);

/// Cost and constraint tallies of one schedule.
struct Score {
  double cost = 0.0;
  int satisfied = 0;          // out of D + 1
  bool final_ok = false;
  int daily_violations = 0;   // number of days with N_t > l
};

/// Allocation-free scorer over packed bit rows; the hot path of sampling
/// and enumeration. Agrees with the Schedule-based functions above.
class Evaluator {
 public:
  explicit Evaluator(const Instance& instance);

  const Instance& instance() const { return instance_; }
  int normalizer() const { return normalizer_; }
  double cost_upper_bound() const { return cost_upper_bound_; }

  Score score(std::span<const std::uint64_t> row) const;
  Score score_index(std::uint64_t index) const;

  bool feasible(const Score& s) const { return s.satisfied >= normalizer_; }
  double fraction(const Score& s) const {
    return static_cast<double>(s.satisfied) / static_cast<double>(normalizer_);
  }
  double penalized(const Score& s, const PenaltyWeights& w) const {
    return s.cost + (s.final_ok ? 0.0 : w.final_total) + w.daily * s.daily_violations;
  }

 private:
  int level(std::span<const std::uint64_t> row, int c, int t) const {
    const std::size_t q = qubit_index(c, t, 0, days_);
    return static_cast<int>((row[q >> 6] >> (q & 63)) & 3ULL);
  }

  Instance instance_;
  int cash_points_;
  int days_;
  int normalizer_;
  double cost_upper_bound_;
  std::vector<int> day_zero_level_;   // p[c][0]
  std::vector<int> prediction_step_;  // p[c][t] - p[c][t-1], row-major, t >= 1
};

}  // namespace movco::cmp

#endif  // MOVCO_CMP_HPP
