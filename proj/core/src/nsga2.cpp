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

#include "movco/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "movco/error.hpp"
#include "movco/parallel.hpp"

namespace movco::nsga2 {

void validate(const GaConfig& config) {
  std::string problems;
  auto fail = [&](const std::string& what) {
    problems += problems.empty() ? what : "; " + what;
  };
  if (config.population_size < 1) fail("population size must be >= 1");
  if (config.offspring_size < 1) fail("offspring size must be >= 1");
  if (!(config.crossover_prob >= 0.0 && config.crossover_prob <= 1.0)) {
    fail("crossover probability must lie in [0, 1]");
  }
  if (config.mutation_prob && !(*config.mutation_prob >= 0.0 && *config.mutation_prob <= 1.0)) {
    fail("mutation probability must lie in [0, 1]");
  }
  if (!(config.crossover_eta >= 0.0)) fail("crossover eta must be >= 0");
  if (!(config.mutation_eta >= 0.0)) fail("mutation eta must be >= 0");
  for (const auto& b : config.bounds) {
    if (!(b.lower <= b.upper)) {
      fail("gene bounds must satisfy lower <= upper");
      break;
    }
  }
  if (!problems.empty()) {
    throw InvalidArgument("invalid GA config: " + problems);
  }
}

bool dominates(std::span<const double> p, std::span<const double> q) {
  bool strictly_better = false;
  for (std::size_t m = 0; m < p.size(); ++m) {
    if (p[m] > q[m]) {
      return false;
    }
    if (p[m] < q[m]) {
      strictly_better = true;
    }
  }
  return strictly_better;
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Objectives> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> fronts;
  if (n == 0) {
    return fronts;
  }
  for (const auto& p : points) {
    if (p.size() != points[0].size()) {
      throw InvalidArgument("nondominated_sort: objective vectors differ in length");
    }
  }

  std::vector<std::vector<std::size_t>> dominated(n);  // S_p
  std::vector<std::size_t> dominators(n, 0);           // n_p
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(points[p], points[q])) {
        dominated[p].push_back(q);
      } else if (dominates(points[q], points[p])) {
        ++dominators[p];
      }
    }
    if (dominators[p] == 0) {
      current.push_back(p);
    }
  }

  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated[p]) {
        if (--dominators[q] == 0) {
          next.push_back(q);
        }
      }
    }
    std::sort(current.begin(), current.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const Objectives> front) {
  const std::size_t r = front.size();
  std::vector<double> distance(r, 0.0);
  if (r <= 2) {
    std::fill(distance.begin(), distance.end(), kInfiniteCrowding);
    return distance;
  }
  const std::size_t objectives = front[0].size();
  std::vector<std::size_t> order(r);
  for (std::size_t m = 0; m < objectives; ++m) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a][m] < front[b][m];
    });
    distance[order.front()] = kInfiniteCrowding;
    distance[order.back()] = kInfiniteCrowding;
    const double span = front[order.back()][m] - front[order.front()][m];
    if (span <= 0.0) {
      continue;  // degenerate objective contributes nothing to interior points
    }
    for (std::size_t i = 1; i + 1 < r; ++i) {
      const std::size_t idx = order[i];
      if (distance[idx] == kInfiniteCrowding) continue;
      distance[idx] += std::abs(front[order[i + 1]][m] - front[order[i - 1]][m]) / span;
    }
  }
  return distance;
}

std::size_t tournament_select(std::span<const Individual> population, Rng& rng) {
  const std::size_t n = population.size();
  if (n == 0) {
    throw InvalidArgument("tournament_select: empty population");
  }
  if (n < 2) {
    return 0;
  }
  const std::size_t a = uniform_index(rng, n);
  std::size_t b = uniform_index(rng, n - 1);
  if (b >= a) {
    ++b;
  }
  const Individual& x = population[a];
  const Individual& y = population[b];
  if (x.rank != y.rank) {
    return x.rank < y.rank ? a : b;
  }
  if (x.crowding != y.crowding) {
    return x.crowding > y.crowding ? a : b;
  }
  return uniform01(rng) < 0.5 ? a : b;
}

double sbx_spread(double u, double eta) {
  const double exponent = 1.0 / (eta + 1.0);
  if (u <= 0.5) {
    return std::pow(2.0 * u, exponent);
  }
  return std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
}

std::pair<double, double> sbx_children(double p1, double p2, double beta) {
  // Offset form: beta = 1 and equal parents both return the parents bit-exact.
  const double shift = 0.5 * (1.0 - beta) * (p2 - p1);
  return {p1 + shift, p2 - shift};
}

namespace {

const Bounds& bounds_for(std::span<const Bounds> bounds, std::size_t gene) {
  return bounds.size() == 1 ? bounds[0] : bounds[gene];
}

void check_bounds(std::span<const Bounds> bounds, std::size_t genes, const char* who) {
  if (bounds.size() != 1 && bounds.size() != genes) {
    throw InvalidArgument(std::string(who) + ": need one bounds entry or one per gene");
  }
}

double clamp_to(double v, const Bounds& b) { return std::clamp(v, b.lower, b.upper); }

}  // namespace

std::pair<Genome, Genome> sbx_crossover(const Genome& p1, const Genome& p2, double eta,
                                        double prob, std::span<const Bounds> bounds, Rng& rng) {
  if (p1.size() != p2.size()) {
    throw InvalidArgument("sbx_crossover: parents differ in length");
  }
  check_bounds(bounds, p1.size(), "sbx_crossover");
  Genome c1 = p1;
  Genome c2 = p2;
  for (std::size_t g = 0; g < p1.size(); ++g) {
    if (uniform01(rng) >= prob) {
      continue;
    }
    const double beta = sbx_spread(uniform01(rng), eta);
    auto [a, b] = sbx_children(p1[g], p2[g], beta);
    const Bounds& bg = bounds_for(bounds, g);
    c1[g] = clamp_to(a, bg);
    c2[g] = clamp_to(b, bg);
  }
  return {std::move(c1), std::move(c2)};
}

double polynomial_perturb(double y, double u, double eta, Bounds bounds) {
  const double lower = bounds.lower;
  const double upper = bounds.upper;
  const double span = upper - lower;
  if (span <= 0.0) {
    return clamp_to(y, bounds);
  }
  const double delta1 = (y - lower) / span;
  const double delta2 = (upper - y) / span;
  const double power = 1.0 / (eta + 1.0);
  double deltaq;
  if (u <= 0.5) {
    const double xy = 1.0 - delta1;
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(xy, eta + 1.0);
    deltaq = std::pow(val, power) - 1.0;
  } else {
    const double xy = 1.0 - delta2;
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(xy, eta + 1.0);
    deltaq = 1.0 - std::pow(val, power);
  }
  return clamp_to(y + deltaq * span, bounds);
}

Genome polynomial_mutation(Genome genome, double eta, double prob,
                           std::span<const Bounds> bounds, Rng& rng) {
  check_bounds(bounds, genome.size(), "polynomial_mutation");
  for (std::size_t g = 0; g < genome.size(); ++g) {
    if (uniform01(rng) >= prob) {
      continue;
    }
    genome[g] = polynomial_perturb(genome[g], uniform01(rng), eta, bounds_for(bounds, g));
  }
  return genome;
}

Population select_survivors(Population merged, std::size_t keep) {
  std::vector<Objectives> objectives;
  objectives.reserve(merged.size());
  for (const auto& ind : merged) {
    objectives.push_back(ind.objectives);
  }
  const auto fronts = nondominated_sort(objectives);

  Population survivors;
  survivors.reserve(std::min(keep, merged.size()));
  for (std::size_t f = 0; f < fronts.size() && survivors.size() < keep; ++f) {
    const auto& front = fronts[f];
    std::vector<Objectives> front_objectives;
    front_objectives.reserve(front.size());
    for (std::size_t idx : front) {
      front_objectives.push_back(objectives[idx]);
    }
    const auto crowding = crowding_distance(front_objectives);
    for (std::size_t i = 0; i < front.size(); ++i) {
      merged[front[i]].rank = static_cast<int>(f + 1);
      merged[front[i]].crowding = crowding[i];
    }

    std::vector<std::size_t> order(front.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (survivors.size() + front.size() > keep) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return crowding[a] > crowding[b];
      });
      order.resize(keep - survivors.size());
    }
    for (std::size_t i : order) {
      survivors.push_back(std::move(merged[front[i]]));
    }
  }
  return survivors;
}

namespace {

void evaluate_batch(Population& individuals, std::size_t generation, const Evaluator& evaluator,
                    std::uint64_t master_seed, std::size_t threads) {
  parallel_for(individuals.size(), threads, [&](std::size_t i) {
    EvaluationContext ctx{generation, i, derive_seed(master_seed, Stream::kEvaluation, generation, i)};
    Evaluation result;
    try {
      result = evaluator(individuals[i].genome, ctx);
    } catch (const std::exception& e) {
      throw EvaluationError("evaluation failed at generation " + std::to_string(generation) +
                            ", individual " + std::to_string(i) + ": " + e.what());
    }
    for (double v : result.objectives) {
      if (!std::isfinite(v)) {
        throw EvaluationError("non-finite objective at generation " + std::to_string(generation) +
                              ", individual " + std::to_string(i));
      }
    }
    individuals[i].objectives = std::move(result.objectives);
    individuals[i].aux = std::move(result.aux);
  });
  for (const auto& ind : individuals) {
    if (ind.objectives.size() != individuals[0].objectives.size() || ind.objectives.empty()) {
      throw EvaluationError("evaluator returned inconsistent objective counts at generation " +
                            std::to_string(generation));
    }
  }
}

GenerationSnapshot snapshot(std::size_t generation, std::size_t evaluations,
                            const Population& population) {
  GenerationSnapshot s;
  s.generation = generation;
  s.cumulative_evaluations = evaluations;
  s.objectives.reserve(population.size());
  for (const auto& ind : population) {
    s.objectives.push_back(ind.objectives);
  }
  return s;
}

}  // namespace

EvolutionResult evolve(std::vector<Genome> initial, const Evaluator& evaluator,
                       const GaConfig& config, std::uint64_t master_seed,
                       const GenerationObserver& observer) {
  validate(config);
  if (initial.size() != config.population_size) {
    throw InvalidArgument("evolve: initial population has " + std::to_string(initial.size()) +
                          " genomes, config expects " + std::to_string(config.population_size));
  }
  const std::size_t genes = initial[0].size();
  for (const auto& g : initial) {
    if (g.size() != genes) {
      throw InvalidArgument("evolve: initial genomes differ in length");
    }
  }
  std::vector<Bounds> bounds = config.bounds;
  if (bounds.empty()) {
    throw InvalidArgument("evolve: gene bounds are required");
  }
  check_bounds(bounds, genes, "evolve");
  const double mutation_prob =
      config.mutation_prob.value_or(genes > 0 ? 1.0 / static_cast<double>(genes) : 0.0);

  EvolutionResult result;
  Population population(initial.size());
  for (std::size_t i = 0; i < initial.size(); ++i) {
    population[i].genome = std::move(initial[i]);
  }
  evaluate_batch(population, 0, evaluator, master_seed, config.threads);
  result.evaluations = population.size();
  population = select_survivors(std::move(population), config.population_size);
  result.history.push_back(snapshot(0, result.evaluations, population));
  if (observer) {
    observer(0, result.evaluations, population);
  }

  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    Rng rng = make_rng(derive_seed(master_seed, Stream::kVariation, gen));
    Population offspring;
    offspring.reserve(config.offspring_size + 1);
    while (offspring.size() < config.offspring_size) {
      const std::size_t a = tournament_select(population, rng);
      const std::size_t b = tournament_select(population, rng);
      auto [c1, c2] = sbx_crossover(population[a].genome, population[b].genome,
                                    config.crossover_eta, config.crossover_prob, bounds, rng);
      c1 = polynomial_mutation(std::move(c1), config.mutation_eta, mutation_prob, bounds, rng);
      c2 = polynomial_mutation(std::move(c2), config.mutation_eta, mutation_prob, bounds, rng);
      offspring.push_back(Individual{std::move(c1), {}, {}, 0, 0.0});
      if (offspring.size() < config.offspring_size) {
        offspring.push_back(Individual{std::move(c2), {}, {}, 0, 0.0});
      }
    }
    evaluate_batch(offspring, gen, evaluator, master_seed, config.threads);
    result.evaluations += offspring.size();

    Population merged = std::move(population);
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
    population = select_survivors(std::move(merged), config.population_size);
    result.history.push_back(snapshot(gen, result.evaluations, population));
    if (observer) {
      observer(gen, result.evaluations, population);
    }
  }
  result.population = std::move(population);
  return result;
}

}  // namespace movco::nsga2
