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

// Exhaustive oracle and the quality metrics reported for a run.

#ifndef MOVCO_METRICS_HPP
#define MOVCO_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "movco/cmp.hpp"
#include "movco/qsim.hpp"

namespace movco::metrics {

struct OracleResult {
  /// Minimum cost over schedules meeting the satisfiability cap.
  double c_min = 0.0;
  double c_max = 0.0;
  /// Basis indices of every minimizer, ascending.
  std::vector<std::uint64_t> optimal_indices;
  /// Schedules meeting all D + 1 constraints.
  std::uint64_t feasible_count = 0;
  /// Most constraints met by any schedule.
  int satisfiability_cap = 0;

  std::vector<cmp::Schedule> optimal_schedules(const cmp::Instance& instance) const;
};

/// Enumerates all 2^V schedules. Throws ResourceLimit when V > max_bits.
OracleResult brute_force_solve(const cmp::Instance& instance, std::size_t max_bits = 24,
                               std::size_t threads = 1);

/// (C_max - expected_cost) / (C_max - C_min). Throws InvalidArgument when
/// C_max == C_min.
double approximation_ratio(double expected_cost, double c_max, double c_min);
double approximation_ratio(double expected_cost, const cmp::Instance& instance, double c_min);

struct Overlap {
  double rho = 0.0;
  bool success = false;  // rho > 0.1
};

inline constexpr double kSuccessThreshold = 0.1;

Overlap success_overlap(const qsim::StateVector& state,
                        std::span<const std::uint64_t> optimal_indices);

/// Product-ansatz overlap from per-qubit marginals.
Overlap success_overlap(const qsim::ParameterVector& product_params,
                        std::span<const std::uint64_t> optimal_indices);

struct Gaps {
  double p_gap = 0.0;
  std::optional<double> c_gap;  // missing when the baseline cost is 0
};

/// P_gap = P_movco - P_base; C_gap = (C_base - C_movco) / C_base.
Gaps gaps(double p_movco, double cost_movco, double p_base, double cost_base);

/// E / (C_max - C_min); maps [C_min - C_max, 0] onto [-1, 0].
std::vector<double> normalize_energy_trace(std::span<const double> energies, double c_max,
                                           double c_min);

/// Noise-free averages under the ansatz state.
struct ExactStats {
  double P = 0.0;              // expected satisfied fraction
  std::optional<double> E;     // restricted energy; statevector only
  double expected_cost = 0.0;
  double p_final_ok = 0.0;
  double expected_daily_violations = 0.0;
  /// Expected penalized cost for the given weights.
  double expected_penalized(const cmp::PenaltyWeights& w) const;
};

ExactStats exact_stats(const qsim::StateVector& state, const cmp::Evaluator& evaluator);

/// Analytic product-state statistics in O(C D h^2 + C^2 D) time; no 2^N
/// enumeration, so any qubit count works.
ExactStats exact_product_stats(const qsim::ParameterVector& product_params,
                               const cmp::Instance& instance);

/// Dispatches on the ansatz: statevector enumeration for layered
/// parameters, the analytic route for product parameters.
ExactStats exact_stats(const qsim::ParameterVector& params, const cmp::Instance& instance,
                       const qsim::SimulatorLimits& limits = {});

}  // namespace movco::metrics

#endif  // MOVCO_METRICS_HPP
