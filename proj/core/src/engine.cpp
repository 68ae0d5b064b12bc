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

#include "movco/engine.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "movco/error.hpp"

namespace movco::engine {

BatchStats batch_stats(const qsim::SampleBatch& batch, const cmp::Evaluator& evaluator,
                       const cmp::PenaltyWeights& weights) {
  const std::size_t shots = batch.shots();
  if (shots == 0) {
    throw InvalidArgument("batch_stats: empty batch");
  }
  if (batch.num_qubits() != evaluator.instance().variable_count()) {
    throw InvalidArgument("batch_stats: batch has " + std::to_string(batch.num_qubits()) +
                          " qubits, instance needs " +
                          std::to_string(evaluator.instance().variable_count()));
  }
  // Integer tallies keep P exact; with integer prices E is exact too.
  std::uint64_t satisfied = 0;
  double restricted = 0.0;
  double cost = 0.0;
  double penalized = 0.0;
  BatchStats stats;
  std::size_t best_shot = shots;
  const double c_max = evaluator.cost_upper_bound();
  for (std::size_t k = 0; k < shots; ++k) {
    const cmp::Score s = evaluator.score(batch.row(k));
    satisfied += static_cast<std::uint64_t>(s.satisfied);
    cost += s.cost;
    penalized += evaluator.penalized(s, weights);
    if (evaluator.feasible(s)) {
      ++stats.feasible;
      restricted += s.cost - c_max;
      if (best_shot == shots || s.cost < stats.best_feasible_cost) {
        best_shot = k;
        stats.best_feasible_cost = s.cost;
      }
    }
  }
  const double k = static_cast<double>(shots);
  stats.P = static_cast<double>(satisfied) / (k * evaluator.normalizer());
  stats.E = restricted / k;
  stats.mean_cost = cost / k;
  stats.mean_penalized = penalized / k;
  if (best_shot != shots) {
    stats.best_feasible = cmp::decode(batch.bitstring(best_shot), evaluator.instance());
  }
  return stats;
}

FitnessPair fitness(const qsim::ParameterVector& params, const cmp::Evaluator& evaluator,
                    std::size_t shots, Rng& rng, const qsim::SimulatorLimits& limits) {
  const qsim::SampleBatch batch = qsim::sample(params, shots, rng, limits);
  const BatchStats stats = batch_stats(batch, evaluator);
  return {stats.P, stats.E};
}

FitnessPair fitness(const qsim::ParameterVector& params, const cmp::Instance& instance,
                    std::size_t shots, Rng& rng, const qsim::SimulatorLimits& limits) {
  return fitness(params, cmp::Evaluator(instance), shots, rng, limits);
}

std::string to_string(ExpectationMode mode) {
  return mode == ExpectationMode::kExact ? "exact" : "sampled";
}

void validate(const MovcoConfig& config) {
  std::string problems;
  if (config.shots < 1) {
    problems = "shots must be >= 1";
  }
  if (config.ansatz.kind == qsim::AnsatzKind::kLayered && config.ansatz.layers > 1000) {
    problems += problems.empty() ? "" : "; ";
    problems += "layer count is implausibly large";
  }
  try {
    nsga2::validate(config.ga);
  } catch (const InvalidArgument& e) {
    problems += problems.empty() ? "" : "; ";
    problems += e.what();
  }
  if (!problems.empty()) {
    throw InvalidArgument("invalid MOVCO config: " + problems);
  }
}

std::vector<nsga2::Genome> initial_population(const qsim::Ansatz& ansatz, int num_qubits,
                                              std::size_t size, std::uint64_t master_seed) {
  std::vector<nsga2::Genome> genomes;
  genomes.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    Rng rng = make_rng(derive_seed(master_seed, Stream::kInit, i));
    const auto params = qsim::init_params(ansatz, num_qubits, rng);
    genomes.emplace_back(params.angles().begin(), params.angles().end());
  }
  return genomes;
}

std::size_t best_index(const nsga2::Population& population) {
  if (population.empty()) {
    throw InvalidArgument("best_index: empty population");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < population.size(); ++i) {
    const auto& a = population[i].aux;
    const auto& b = population[best].aux;
    if (a[0] > b[0] || (a[0] == b[0] && a[1] < b[1])) {
      best = i;
    }
  }
  return best;
}

BestSolution extract_best(const nsga2::Population& population, const cmp::Instance& instance,
                          const qsim::Ansatz& ansatz, std::size_t shots, Rng& rng,
                          const qsim::SimulatorLimits& limits) {
  const std::size_t i = best_index(population);
  BestSolution best;
  best.params = population[i].genome;
  best.fitness = {population[i].aux[0], population[i].aux[1]};
  const cmp::Evaluator evaluator(instance);
  const qsim::ParameterVector params(ansatz, instance.variable_count(), best.params);
  const BatchStats stats = batch_stats(qsim::sample(params, shots, rng, limits), evaluator);
  best.schedule = stats.best_feasible;
  best.schedule_cost = stats.best_feasible_cost;
  return best;
}

namespace {

GenerationRecord make_record(std::size_t generation, std::size_t evaluations,
                             const nsga2::Population& population) {
  GenerationRecord r;
  r.generation = generation;
  r.cumulative_evaluations = evaluations;
  const std::size_t b = best_index(population);
  r.best_P = population[b].aux[0];
  r.best_E = population[b].aux[1];
  double sum_p = 0.0;
  double sum_e = 0.0;
  for (const auto& ind : population) {
    sum_p += ind.aux[0];
    sum_e += ind.aux[1];
  }
  r.mean_P = sum_p / static_cast<double>(population.size());
  r.mean_E = sum_e / static_cast<double>(population.size());
  r.objective = std::numeric_limits<double>::quiet_NaN();
  r.best_params = population[b].genome;
  return r;
}

}  // namespace

RunResult run_movco(const cmp::Instance& instance, const MovcoConfig& config,
                    const RecordObserver& observer) {
  cmp::validate(instance);
  validate(config);
  const cmp::Evaluator evaluator(instance);
  const std::size_t n = instance.variable_count();
  if (config.ansatz.kind == qsim::AnsatzKind::kLayered &&
      n > config.limits.max_statevector_qubits) {
    throw ResourceLimit("layered ansatz on " + std::to_string(n) +
                        " qubits exceeds the statevector limit of " +
                        std::to_string(config.limits.max_statevector_qubits));
  }

  nsga2::GaConfig ga = config.ga;
  if (ga.bounds.empty()) {
    ga.bounds = {kAngleBounds};
  }

  RunResult result;
  result.method = "movco";
  result.ansatz = config.ansatz;
  result.num_qubits = n;

  const nsga2::Evaluator evaluate = [&](const nsga2::Genome& genome,
                                        const nsga2::EvaluationContext& ctx) {
    const qsim::ParameterVector params(config.ansatz, n, genome);
    Rng rng = make_rng(ctx.seed);
    const FitnessPair f = fitness(params, evaluator, config.shots, rng, config.limits);
    return nsga2::Evaluation{{1.0 - f.P, f.E}, {f.P, f.E}};
  };
  const nsga2::GenerationObserver record = [&](std::size_t generation, std::size_t evaluations,
                                               const nsga2::Population& survivors) {
    result.records.push_back(make_record(generation, evaluations, survivors));
    if (observer) {
      observer(result.records.back());
    }
  };

  auto evolved = nsga2::evolve(initial_population(config.ansatz, static_cast<int>(n),
                                                  ga.population_size, config.master_seed),
                               evaluate, ga, config.master_seed, record);

  Rng extract_rng = make_rng(derive_seed(config.master_seed, Stream::kExtract));
  BestSolution best = extract_best(evolved.population, instance, config.ansatz, config.shots,
                                   extract_rng, config.limits);
  result.final_population = std::move(evolved.population);
  result.evaluations = evolved.evaluations;
  result.best_params = std::move(best.params);
  result.best_fitness = best.fitness;
  result.best_schedule = std::move(best.schedule);
  result.best_schedule_cost = best.schedule_cost;
  return result;
}

}  // namespace movco::engine
