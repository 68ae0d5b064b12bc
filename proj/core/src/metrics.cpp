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

#include "movco/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "movco/error.hpp"
#include "movco/parallel.hpp"

namespace movco::metrics {

std::vector<cmp::Schedule> OracleResult::optimal_schedules(const cmp::Instance& instance) const {
  std::vector<cmp::Schedule> out;
  out.reserve(optimal_indices.size());
  for (std::uint64_t x : optimal_indices) {
    out.push_back(cmp::decode(qsim::Bitstring::from_index(instance.variable_count(), x), instance));
  }
  return out;
}

namespace {

bool same_cost(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

struct Chunk {
  int cap = -1;
  double c_min = 0.0;
  std::vector<std::uint64_t> minimizers;
  std::uint64_t feasible = 0;
};

}  // namespace

OracleResult brute_force_solve(const cmp::Instance& instance, std::size_t max_bits,
                               std::size_t threads) {
  const std::size_t bits = instance.variable_count();
  if (bits > max_bits || bits >= 64) {
    throw ResourceLimit("brute force over " + std::to_string(bits) +
                        " bits exceeds the limit of " + std::to_string(max_bits));
  }
  const cmp::Evaluator evaluator(instance);
  const int all = instance.constraint_count();
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 64);
  const std::uint64_t per_chunk = total / chunks;

  std::vector<Chunk> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t ci) {
    Chunk& ch = partial[ci];
    const std::uint64_t begin = ci * per_chunk;
    const std::uint64_t end = begin + per_chunk;
    for (std::uint64_t x = begin; x < end; ++x) {
      const cmp::Score s = evaluator.score_index(x);
      if (s.satisfied == all) {
        ++ch.feasible;
      }
      if (s.satisfied > ch.cap) {
        ch.cap = s.satisfied;
        ch.c_min = s.cost;
        ch.minimizers.assign(1, x);
      } else if (s.satisfied == ch.cap) {
        if (same_cost(s.cost, ch.c_min)) {
          ch.minimizers.push_back(x);
        } else if (s.cost < ch.c_min) {
          ch.c_min = s.cost;
          ch.minimizers.assign(1, x);
        }
      }
    }
  });

  OracleResult result;
  result.c_max = evaluator.cost_upper_bound();
  result.satisfiability_cap = -1;
  for (const Chunk& ch : partial) {
    result.feasible_count += ch.feasible;
    if (ch.cap > result.satisfiability_cap) {
      result.satisfiability_cap = ch.cap;
      result.c_min = ch.c_min;
      result.optimal_indices = ch.minimizers;
    } else if (ch.cap == result.satisfiability_cap) {
      if (same_cost(ch.c_min, result.c_min)) {
        result.optimal_indices.insert(result.optimal_indices.end(), ch.minimizers.begin(),
                                      ch.minimizers.end());
      } else if (ch.c_min < result.c_min) {
        result.c_min = ch.c_min;
        result.optimal_indices = ch.minimizers;
      }
    }
  }
  return result;
}

double approximation_ratio(double expected_cost, double c_max, double c_min) {
  if (c_max == c_min) {
    throw InvalidArgument("approximation ratio undefined: C_max equals C_min");
  }
  return (c_max - expected_cost) / (c_max - c_min);
}

double approximation_ratio(double expected_cost, const cmp::Instance& instance, double c_min) {
  return approximation_ratio(expected_cost, cmp::cost_upper_bound(instance), c_min);
}

namespace {

Overlap make_overlap(double rho) {
  rho = std::clamp(rho, 0.0, 1.0);
  return {rho, rho > kSuccessThreshold};
}

}  // namespace

Overlap success_overlap(const qsim::StateVector& state,
                        std::span<const std::uint64_t> optimal_indices) {
  double rho = 0.0;
  for (std::uint64_t x : optimal_indices) {
    if (x >= state.dimension()) {
      throw InvalidArgument("success_overlap: basis index out of range");
    }
    rho += state.probability(x);
  }
  return make_overlap(rho);
}

Overlap success_overlap(const qsim::ParameterVector& product_params,
                        std::span<const std::uint64_t> optimal_indices) {
  if (product_params.kind() != qsim::AnsatzKind::kProduct) {
    throw InvalidArgument("success_overlap: expected product-ansatz parameters");
  }
  const std::size_t n = product_params.num_qubits();
  if (n >= 64) {
    throw InvalidArgument("success_overlap: optimal indices cannot address 64+ qubits");
  }
  double rho = 0.0;
  for (std::uint64_t x : optimal_indices) {
    rho += qsim::product_basis_probability(product_params, qsim::Bitstring::from_index(n, x));
  }
  return make_overlap(rho);
}

Gaps gaps(double p_movco, double cost_movco, double p_base, double cost_base) {
  Gaps g;
  g.p_gap = p_movco - p_base;
  if (cost_base != 0.0) {
    g.c_gap = (cost_base - cost_movco) / cost_base;
  }
  return g;
}

std::vector<double> normalize_energy_trace(std::span<const double> energies, double c_max,
                                           double c_min) {
  if (c_max == c_min) {
    throw InvalidArgument("normalize_energy_trace: C_max equals C_min");
  }
  std::vector<double> out;
  out.reserve(energies.size());
  for (double e : energies) {
    out.push_back(e / (c_max - c_min));
  }
  return out;
}

double ExactStats::expected_penalized(const cmp::PenaltyWeights& w) const {
  return expected_cost + w.final_total * (1.0 - p_final_ok) + w.daily * expected_daily_violations;
}

ExactStats exact_stats(const qsim::StateVector& state, const cmp::Evaluator& evaluator) {
  if (state.num_qubits() != evaluator.instance().variable_count()) {
    throw InvalidArgument("exact_stats: state and instance sizes differ");
  }
  const double c_max = evaluator.cost_upper_bound();
  ExactStats out;
  double satisfied = 0.0;
  double restricted = 0.0;
  const auto amps = state.amplitudes();
  for (std::uint64_t x = 0; x < amps.size(); ++x) {
    const double p = std::norm(amps[x]);
    if (p == 0.0) continue;
    const cmp::Score s = evaluator.score_index(x);
    satisfied += p * s.satisfied;
    out.expected_cost += p * s.cost;
    out.expected_daily_violations += p * s.daily_violations;
    if (s.final_ok) out.p_final_ok += p;
    if (evaluator.feasible(s)) restricted += p * (s.cost - c_max);
  }
  out.P = satisfied / evaluator.normalizer();
  out.E = restricted;
  return out;
}

ExactStats exact_product_stats(const qsim::ParameterVector& product_params,
                               const cmp::Instance& instance) {
  if (product_params.kind() != qsim::AnsatzKind::kProduct) {
    throw InvalidArgument("exact_product_stats: expected product-ansatz parameters");
  }
  if (product_params.num_qubits() != instance.variable_count()) {
    throw InvalidArgument("exact_product_stats: parameter and instance sizes differ");
  }
  cmp::validate(instance);
  const int C = instance.cash_points;
  const int D = instance.days;
  const auto one = qsim::product_one_probabilities(product_params);

  // Level distribution of every cell; cells are independent.
  std::vector<std::array<double, cmp::kLevels>> cell(static_cast<std::size_t>(C * D));
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < D; ++t) {
      const double p0 = one[cmp::qubit_index(c, t, 0, D)];
      const double p1 = one[cmp::qubit_index(c, t, 1, D)];
      auto& q = cell[static_cast<std::size_t>(c * D + t)];
      q[0] = (1 - p0) * (1 - p1);
      q[1] = p0 * (1 - p1);
      q[2] = (1 - p0) * p1;
      q[3] = p0 * p1;
    }
  }
  auto level_prob = [&](int c, int t, int m) {
    return (m < 0 || m >= cmp::kLevels) ? 0.0 : cell[static_cast<std::size_t>(c * D + t)][m];
  };

  ExactStats out;
  double days_ok = 0.0;
  std::vector<double> tx(static_cast<std::size_t>(C));
  std::vector<double> count;
  for (int t = 0; t < D; ++t) {
    for (int c = 0; c < C; ++c) {
      double still;  // probability of no transaction at (c, t)
      if (t == 0) {
        still = level_prob(c, 0, instance.predicted(c, 0));
      } else {
        const int step = instance.predicted(c, t) - instance.predicted(c, t - 1);
        still = 0.0;
        for (int m = 0; m < cmp::kLevels; ++m) {
          still += level_prob(c, t - 1, m) * level_prob(c, t, m + step);
        }
      }
      tx[static_cast<std::size_t>(c)] = 1.0 - still;
      const double price = t == 0 ? instance.first_day_price[static_cast<std::size_t>(c)]
                                  : instance.price[static_cast<std::size_t>(c)];
      out.expected_cost += price * (1.0 - still);
    }
    // Poisson-binomial distribution of the day's transaction count.
    count.assign(static_cast<std::size_t>(C) + 1, 0.0);
    count[0] = 1.0;
    for (int c = 0; c < C; ++c) {
      const double r = tx[static_cast<std::size_t>(c)];
      for (int j = c + 1; j >= 1; --j) {
        count[j] = count[j] * (1.0 - r) + count[j - 1] * r;
      }
      count[0] *= 1.0 - r;
    }
    double ok = 0.0;
    for (int j = 0; j <= std::min(C, instance.daily_transaction_limit); ++j) {
      ok += count[static_cast<std::size_t>(j)];
    }
    days_ok += ok;
    out.expected_daily_violations += 1.0 - ok;
  }

  // Distribution of the final-day network total.
  std::vector<double> total(static_cast<std::size_t>(3 * C) + 1, 0.0);
  total[0] = 1.0;
  for (int c = 0; c < C; ++c) {
    std::vector<double> next(total.size(), 0.0);
    for (std::size_t s = 0; s < total.size(); ++s) {
      if (total[s] == 0.0) continue;
      for (int m = 0; m < cmp::kLevels; ++m) {
        if (s + m < next.size()) next[s + m] += total[s] * level_prob(c, D - 1, m);
      }
    }
    total = std::move(next);
  }
  for (int s = 0; s <= std::min(3 * C, instance.final_cash_limit); ++s) {
    out.p_final_ok += total[static_cast<std::size_t>(s)];
  }

  out.P = (out.p_final_ok + days_ok) / cmp::satisfaction_normalizer(instance);
  return out;
}

ExactStats exact_stats(const qsim::ParameterVector& params, const cmp::Instance& instance,
                       const qsim::SimulatorLimits& limits) {
  if (params.kind() == qsim::AnsatzKind::kProduct) {
    return exact_product_stats(params, instance);
  }
  return exact_stats(qsim::build_state(params, limits), cmp::Evaluator(instance));
}

}  // namespace movco::metrics
