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

// NSGA-II over real-valued genomes. All objectives are minimized.

#ifndef MOVCO_NSGA2_HPP
#define MOVCO_NSGA2_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "movco/random.hpp"

namespace movco::nsga2 {

using Genome = std::vector<double>;
using Objectives = std::vector<double>;

/// Crowding assigned to boundary points; compares above any finite distance.
inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

struct Individual {
  Genome genome;
  Objectives objectives;
  /// Evaluator-defined payload carried alongside the objectives.
  std::vector<double> aux;
  int rank = 0;  // 0 = unset, fronts count from 1
  double crowding = 0.0;
};

using Population = std::vector<Individual>;

struct Bounds {
  double lower = 0.0;
  double upper = 1.0;
};

struct GaConfig {
  std::size_t population_size = 10;
  std::size_t offspring_size = 10;
  std::size_t generations = 100;
  double crossover_prob = 0.9;
  double crossover_eta = 15.0;
  /// Per-gene mutation probability; 1 / genome length when unset.
  std::optional<double> mutation_prob;
  double mutation_eta = 20.0;
  /// One entry per gene, or a single entry applied to every gene.
  std::vector<Bounds> bounds;
  std::size_t threads = 1;
};

/// Throws InvalidArgument on out-of-range probabilities, negative
/// distribution indices, zero sizes or inverted bounds.
void validate(const GaConfig& config);

/// p dominates q: p <= q componentwise with at least one strict inequality.
bool dominates(std::span<const double> p, std::span<const double> q);

/// Fast non-dominated sort. Returns fronts of indices into `points`; front 0
/// is the non-dominated set. Indices within a front are ascending.
std::vector<std::vector<std::size_t>> nondominated_sort(std::span<const Objectives> points);

/// Crowding distance of each point of one front, in input order.
std::vector<double> crowding_distance(std::span<const Objectives> front);

/// Binary tournament: lower rank wins, then larger crowding, then a coin.
std::size_t tournament_select(std::span<const Individual> population, Rng& rng);

/// SBX spread factor for a uniform draw u in [0, 1).
double sbx_spread(double u, double eta);

/// Children of one gene pair before clamping; c1 + c2 = p1 + p2.
std::pair<double, double> sbx_children(double p1, double p2, double beta);

std::pair<Genome, Genome> sbx_crossover(const Genome& p1, const Genome& p2, double eta,
                                        double prob, std::span<const Bounds> bounds, Rng& rng);

/// Bounded polynomial-mutation perturbation of value y for a draw u.
/// Returns the mutated, clamped value; u = 0.5 leaves y unchanged.
double polynomial_perturb(double y, double u, double eta, Bounds bounds);

Genome polynomial_mutation(Genome genome, double eta, double prob,
                           std::span<const Bounds> bounds, Rng& rng);

/// Sorts, crowds and truncates `merged` to `keep` individuals. Whole fronts
/// are taken in rank order; the partial front is filled by descending
/// crowding (stable on index). Returned individuals carry rank and crowding.
Population select_survivors(Population merged, std::size_t keep);

/// Context handed to the evaluator for each call.
struct EvaluationContext {
  std::size_t generation = 0;
  std::size_t index = 0;
  std::uint64_t seed = 0;  // derive_seed(master, kEvaluation, generation, index)
};

struct Evaluation {
  Objectives objectives;
  std::vector<double> aux;
};

using Evaluator = std::function<Evaluation(const Genome&, const EvaluationContext&)>;

struct GenerationSnapshot {
  std::size_t generation = 0;
  std::size_t cumulative_evaluations = 0;
  std::vector<Objectives> objectives;  // survivors, in population order
};

struct EvolutionResult {
  Population population;
  std::vector<GenerationSnapshot> history;  // generation 0 = initial population
  std::size_t evaluations = 0;
};

/// Called after each generation's survivor selection (and once for the
/// initial population) with the current survivors.
using GenerationObserver =
    std::function<void(std::size_t generation, std::size_t cumulative_evaluations,
                       const Population& survivors)>;

/// Generational loop. Offspring of generation g are evaluated with
/// substream seeds derived from (master_seed, g, offspring index), so any
/// thread count reproduces the serial run.
EvolutionResult evolve(std::vector<Genome> initial, const Evaluator& evaluator,
                       const GaConfig& config, std::uint64_t master_seed,
                       const GenerationObserver& observer = {});

}  // namespace movco::nsga2

#endif  // MOVCO_NSGA2_HPP
