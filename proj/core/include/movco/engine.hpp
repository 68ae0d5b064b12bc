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

// Multi-objective variational constrained optimization.
//
// Each individual of an NSGA-II population is a vector of ansatz angles. Its
// two fitness values are read off one batch of K measured schedules:
//
//   P = (1/K) sum_k satisfied_k / normalizer          (maximized)
//   E = (1/K) sum_{k feasible} (cost_k - C_max)       (minimized, <= 0)
//
// The genetic engine minimizes, so it is handed (1 - P, E).

#ifndef MOVCO_ENGINE_HPP
#define MOVCO_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "movco/cmp.hpp"
#include "movco/nsga2.hpp"
#include "movco/qsim.hpp"
#include "movco/random.hpp"

namespace movco::engine {

struct FitnessPair {
  double P = 0.0;
  double E = 0.0;
  bool operator==(const FitnessPair&) const = default;
};

/// Everything one K-shot batch says about an instance.
struct BatchStats {
  double P = 0.0;
  double E = 0.0;
  double mean_cost = 0.0;
  double mean_penalized = 0.0;  // only when weights were supplied
  std::size_t feasible = 0;     // |S|
  std::optional<cmp::Schedule> best_feasible;  // cheapest feasible sample
  double best_feasible_cost = 0.0;
};

BatchStats batch_stats(const qsim::SampleBatch& batch, const cmp::Evaluator& evaluator,
                       const cmp::PenaltyWeights& weights = {});

/// Samples K shots of the ansatz state and scores them. P and E come from
/// the same batch.
FitnessPair fitness(const qsim::ParameterVector& params, const cmp::Evaluator& evaluator,
                    std::size_t shots, Rng& rng, const qsim::SimulatorLimits& limits = {});

FitnessPair fitness(const qsim::ParameterVector& params, const cmp::Instance& instance,
                    std::size_t shots, Rng& rng, const qsim::SimulatorLimits& limits = {});

/// How reported averages (expected cost, P) are obtained.
enum class ExpectationMode { kExact, kSampled };

std::string to_string(ExpectationMode mode);

/// Default angle range of the genetic search: one full period of the
/// ansatz. Initial angles of layers >= 1 may start slightly below 0; their
/// children are clamped.
inline constexpr nsga2::Bounds kAngleBounds{0.0, 2.0 * std::numbers::pi};

struct MovcoConfig {
  qsim::Ansatz ansatz = qsim::Ansatz::layered(1);
  std::size_t shots = 8192;
  /// Population, offspring and generation counts plus operator settings.
  /// Empty bounds mean kAngleBounds on every gene.
  nsga2::GaConfig ga;
  std::uint64_t master_seed = 0;
  ExpectationMode expectation = ExpectationMode::kExact;
  qsim::SimulatorLimits limits;
};

/// Throws InvalidArgument listing every bad field.
void validate(const MovcoConfig& config);

/// One row per generation (or SPSA iteration). Row 0 of a genetic run is
/// the evaluated initial population.
struct GenerationRecord {
  std::size_t generation = 0;
  std::size_t cumulative_evaluations = 0;
  double best_P = 0.0;
  double mean_P = 0.0;
  double best_E = 0.0;
  double mean_E = 0.0;
  /// Scalar objective of single-objective methods (mean penalized cost of
  /// the selected parameters); NaN for MOVCO.
  double objective = 0.0;
  /// Angles of the individual the method would return at this point.
  std::vector<double> best_params;
};

struct RunResult {
  std::string method;
  qsim::Ansatz ansatz;
  std::size_t num_qubits = 0;
  std::vector<GenerationRecord> records;
  nsga2::Population final_population;  // empty for SPSA
  std::vector<double> best_params;
  FitnessPair best_fitness;
  std::optional<cmp::Schedule> best_schedule;
  double best_schedule_cost = 0.0;
  std::size_t evaluations = 0;

  qsim::ParameterVector params() const {
    return qsim::ParameterVector(ansatz, num_qubits, best_params);
  }
};

/// Initial angles of individual i: init_params on the kInit substream.
std::vector<nsga2::Genome> initial_population(const qsim::Ansatz& ansatz, int num_qubits,
                                              std::size_t size, std::uint64_t master_seed);

/// Maximal P, ties broken by minimal E, then by lower index. Individuals
/// must carry aux = {P, E}.
std::size_t best_index(const nsga2::Population& population);

struct BestSolution {
  std::vector<double> params;
  FitnessPair fitness;  // as evaluated during the run
  std::optional<cmp::Schedule> schedule;  // cheapest feasible re-sampled schedule
  double schedule_cost = 0.0;
};

/// Picks best_index and re-samples K shots of it with `rng` to find the
/// cheapest feasible schedule.
BestSolution extract_best(const nsga2::Population& population, const cmp::Instance& instance,
                          const qsim::Ansatz& ansatz, std::size_t shots, Rng& rng,
                          const qsim::SimulatorLimits& limits = {});

using RecordObserver = std::function<void(const GenerationRecord&)>;

RunResult run_movco(const cmp::Instance& instance, const MovcoConfig& config,
                    const RecordObserver& observer = {});

}  // namespace movco::engine

#endif  // MOVCO_ENGINE_HPP
