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

#include "movco/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "movco/error.hpp"
#include "movco/metrics.hpp"
#include "movco/parallel.hpp"

namespace movco::baselines {

void validate(const SpsaConfig& config) {
  std::string problems;
  auto fail = [&](const std::string& what) {
    problems += problems.empty() ? what : "; " + what;
  };
  if (config.a && !(*config.a > 0.0)) fail("a must be > 0");
  if (!(config.c > 0.0)) fail("c must be > 0");
  if (config.A && !(*config.A >= 0.0)) fail("A must be >= 0");
  if (!(config.alpha > 0.0 && config.alpha <= 1.0)) fail("alpha must lie in (0, 1]");
  if (!(config.gamma > 0.0 && config.gamma <= 1.0)) fail("gamma must lie in (0, 1]");
  if (!(config.first_step > 0.0)) fail("first step must be > 0");
  if (!problems.empty()) {
    throw InvalidArgument("invalid SPSA config: " + problems);
  }
}

SpsaResult spsa_minimize(const SpsaObjective& objective, std::vector<double> theta0,
                         const SpsaConfig& config, const SpsaObserver& observer) {
  validate(config);
  SpsaResult result;
  result.theta = std::move(theta0);
  std::vector<double>& theta = result.theta;
  const std::size_t n = theta.size();
  const double big_a = config.A.value_or(0.01 * static_cast<double>(config.iterations));
  std::optional<double> a = config.a;

  std::vector<double> delta(n);
  std::array<std::vector<double>, 2> probe{std::vector<double>(n), std::vector<double>(n)};
  std::array<double, 2> value{};
  for (std::size_t k = 1; k <= config.iterations; ++k) {
    const double kd = static_cast<double>(k);
    const double ck = config.c / std::pow(kd, config.gamma);
    Rng rng = make_rng(derive_seed(config.master_seed, Stream::kSpsa, k, 2));
    for (std::size_t i = 0; i < n; ++i) {
      delta[i] = (rng() & 1ULL) ? 1.0 : -1.0;
      probe[0][i] = theta[i] + ck * delta[i];
      probe[1][i] = theta[i] - ck * delta[i];
    }
    parallel_for(2, config.threads, [&](std::size_t side) {
      const SpsaContext ctx{k, static_cast<int>(side),
                            derive_seed(config.master_seed, Stream::kSpsa, k, side)};
      value[side] = objective(probe[side], ctx);
      if (!std::isfinite(value[side])) {
        throw EvaluationError("non-finite SPSA objective at iteration " + std::to_string(k) +
                              (side == 0 ? " (+ side)" : " (- side)"));
      }
    });
    result.evaluations += 2;

    const double diff = value[0] - value[1];
    if (!a) {
      // Every component of the estimate has magnitude |diff| / (2 c_1).
      const double g = std::abs(diff) / (2.0 * ck);
      const double scale = config.first_step * std::pow(big_a + 1.0, config.alpha);
      a = g > 0.0 ? scale / g : scale;
    }
    const double ak = *a / std::pow(big_a + kd, config.alpha);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] -= ak * diff / (2.0 * ck * delta[i]);
    }

    SpsaStep step{k, result.evaluations, value[0], value[1], theta};
    if (observer) {
      observer(step);
    }
    result.history.push_back(std::move(step));
  }
  result.a = a.value_or(0.0);
  return result;
}

void validate(const PenaltyConfig& config) {
  std::string problems;
  auto fail = [&](const std::string& what) {
    problems += problems.empty() ? what : "; " + what;
  };
  if (!(config.lambda_final >= 0.0)) fail("lambda_f must be >= 0");
  if (!(config.lambda_daily >= 0.0)) fail("lambda_l must be >= 0");
  if (config.shots < 1) fail("shots must be >= 1");
  if (!problems.empty()) {
    throw InvalidArgument("invalid penalty config: " + problems);
  }
}

namespace {

void check_ansatz_fits(const cmp::Instance& instance, const PenaltyConfig& penalty) {
  const std::size_t n = instance.variable_count();
  if (penalty.ansatz.kind == qsim::AnsatzKind::kLayered &&
      n > penalty.limits.max_statevector_qubits) {
    throw ResourceLimit("layered ansatz on " + std::to_string(n) +
                        " qubits exceeds the statevector limit of " +
                        std::to_string(penalty.limits.max_statevector_qubits));
  }
}

// Final re-sampling shared by both baselines.
void finish(engine::RunResult& result, const cmp::Evaluator& evaluator,
            const PenaltyConfig& penalty, std::uint64_t master_seed) {
  Rng rng = make_rng(derive_seed(master_seed, Stream::kExtract));
  const engine::BatchStats stats = engine::batch_stats(
      qsim::sample(result.params(), penalty.shots, rng, penalty.limits), evaluator,
      penalty.weights());
  result.best_fitness = {stats.P, stats.E};
  result.best_schedule = stats.best_feasible;
  result.best_schedule_cost = stats.best_feasible_cost;
}

}  // namespace

engine::RunResult run_penalty_vqe(const cmp::Instance& instance, const PenaltyConfig& penalty,
                                  const SpsaConfig& spsa,
                                  const engine::RecordObserver& observer) {
  cmp::validate(instance);
  validate(penalty);
  validate(spsa);
  check_ansatz_fits(instance, penalty);
  const cmp::Evaluator evaluator(instance);
  const std::size_t n = instance.variable_count();

  engine::RunResult result;
  result.method = "penalty-vqe";
  result.ansatz = penalty.ansatz;
  result.num_qubits = n;

  std::array<engine::BatchStats, 2> side_stats;
  const SpsaObjective objective = [&](std::span<const double> theta, const SpsaContext& ctx) {
    const qsim::ParameterVector params(penalty.ansatz, n,
                                       std::vector<double>(theta.begin(), theta.end()));
    Rng rng = make_rng(ctx.seed);
    auto& stats = side_stats[static_cast<std::size_t>(ctx.side)];
    stats = engine::batch_stats(qsim::sample(params, penalty.shots, rng, penalty.limits),
                                evaluator, penalty.weights());
    return stats.mean_penalized;
  };
  const SpsaObserver record = [&](const SpsaStep& step) {
    engine::GenerationRecord r;
    r.generation = step.iteration;
    r.cumulative_evaluations = step.evaluations;
    r.best_P = std::max(side_stats[0].P, side_stats[1].P);
    r.mean_P = 0.5 * (side_stats[0].P + side_stats[1].P);
    r.best_E = std::min(side_stats[0].E, side_stats[1].E);
    r.mean_E = 0.5 * (side_stats[0].E + side_stats[1].E);
    r.objective = 0.5 * (step.value_plus + step.value_minus);
    r.best_params = step.theta;
    result.records.push_back(std::move(r));
    if (observer) {
      observer(result.records.back());
    }
  };

  Rng init_rng = make_rng(derive_seed(spsa.master_seed, Stream::kInit, 0));
  const auto theta0 = qsim::init_params(penalty.ansatz, static_cast<int>(n), init_rng);
  SpsaResult run = spsa_minimize(
      objective, std::vector<double>(theta0.angles().begin(), theta0.angles().end()), spsa,
      record);
  result.best_params = std::move(run.theta);
  result.evaluations = run.evaluations;
  finish(result, evaluator, penalty, spsa.master_seed);
  return result;
}

namespace {

// aux layout of penalty-GA individuals.
constexpr std::size_t kAuxP = 0;
constexpr std::size_t kAuxE = 1;

std::size_t lowest_objective(const nsga2::Population& population) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    if (population[i].objectives[0] < population[best].objectives[0]) {
      best = i;
    }
  }
  return best;
}

}  // namespace

engine::RunResult run_penalty_ga(const cmp::Instance& instance, const PenaltyConfig& penalty,
                                 const nsga2::GaConfig& ga_config, std::uint64_t master_seed,
                                 const engine::RecordObserver& observer) {
  cmp::validate(instance);
  validate(penalty);
  nsga2::validate(ga_config);
  check_ansatz_fits(instance, penalty);
  const cmp::Evaluator evaluator(instance);
  const std::size_t n = instance.variable_count();

  nsga2::GaConfig ga = ga_config;
  if (ga.bounds.empty()) {
    ga.bounds = {engine::kAngleBounds};
  }

  engine::RunResult result;
  result.method = "penalty-ga";
  result.ansatz = penalty.ansatz;
  result.num_qubits = n;

  const nsga2::Evaluator evaluate = [&](const nsga2::Genome& genome,
                                        const nsga2::EvaluationContext& ctx) {
    const qsim::ParameterVector params(penalty.ansatz, n, genome);
    Rng rng = make_rng(ctx.seed);
    const engine::BatchStats stats = engine::batch_stats(
        qsim::sample(params, penalty.shots, rng, penalty.limits), evaluator, penalty.weights());
    return nsga2::Evaluation{{stats.mean_penalized}, {stats.P, stats.E}};
  };
  const nsga2::GenerationObserver record = [&](std::size_t generation, std::size_t evaluations,
                                               const nsga2::Population& survivors) {
    const std::size_t b = lowest_objective(survivors);
    engine::GenerationRecord r;
    r.generation = generation;
    r.cumulative_evaluations = evaluations;
    r.best_P = survivors[b].aux[kAuxP];
    r.best_E = survivors[b].aux[kAuxE];
    double sum_p = 0.0;
    double sum_e = 0.0;
    for (const auto& ind : survivors) {
      sum_p += ind.aux[kAuxP];
      sum_e += ind.aux[kAuxE];
    }
    r.mean_P = sum_p / static_cast<double>(survivors.size());
    r.mean_E = sum_e / static_cast<double>(survivors.size());
    r.objective = survivors[b].objectives[0];
    r.best_params = survivors[b].genome;
    result.records.push_back(std::move(r));
    if (observer) {
      observer(result.records.back());
    }
  };

  auto evolved = nsga2::evolve(
      engine::initial_population(penalty.ansatz, static_cast<int>(n), ga.population_size,
                                 master_seed),
      evaluate, ga, master_seed, record);
  result.best_params = evolved.population[lowest_objective(evolved.population)].genome;
  result.final_population = std::move(evolved.population);
  result.evaluations = evolved.evaluations;
  finish(result, evaluator, penalty, master_seed);
  return result;
}

std::vector<SweepRow> penalty_sweep(std::span<const cmp::Instance> instances,
                                    std::span<const double> lambdas, const PenaltyConfig& penalty,
                                    const SpsaConfig& spsa) {
  if (instances.empty()) {
    throw InvalidArgument("penalty_sweep: no instances");
  }
  if (lambdas.empty()) {
    throw InvalidArgument("penalty_sweep: no lambda values");
  }
  std::vector<metrics::OracleResult> oracles;
  oracles.reserve(instances.size());
  for (const auto& instance : instances) {
    oracles.push_back(metrics::brute_force_solve(instance));
  }

  std::vector<SweepRow> rows;
  for (double lambda : lambdas) {
    PenaltyConfig pc = penalty;
    pc.lambda_final = lambda;
    pc.lambda_daily = lambda;
    SweepRow row;
    row.lambda = lambda;
    row.instances = instances.size();
    std::size_t feasible = 0;
    double ratio_sum = 0.0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      SpsaConfig sc = spsa;
      sc.master_seed = derive_seed(spsa.master_seed, Stream::kRun, i);
      const engine::RunResult run = run_penalty_vqe(instances[i], pc, sc);
      const metrics::ExactStats exact =
          metrics::exact_stats(run.params(), instances[i], pc.limits);
      if (exact.P > kFeasibleThreshold) {
        ++feasible;
        ratio_sum += metrics::approximation_ratio(exact.expected_cost, oracles[i].c_max,
                                                  oracles[i].c_min);
      }
    }
    row.fraction_feasible = static_cast<double>(feasible) / static_cast<double>(instances.size());
    if (feasible > 0) {
      row.mean_ratio = ratio_sum / static_cast<double>(feasible);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace movco::baselines
