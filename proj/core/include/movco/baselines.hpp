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

// Penalty-method baselines: the constraints are folded into the cost as
// step penalties and a single scalar (the K-shot sample mean) is minimized,
// either by SPSA or by the same genetic operators MOVCO uses.

#ifndef MOVCO_BASELINES_HPP
#define MOVCO_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "movco/cmp.hpp"
#include "movco/engine.hpp"
#include "movco/nsga2.hpp"
#include "movco/qsim.hpp"

namespace movco::baselines {

/// Gain sequences a_k = a / (A + k)^alpha and c_k = c / k^gamma.
struct SpsaConfig {
  std::size_t iterations = 1000;
  /// Unset: chosen at the first iteration so that the largest component of
  /// the first step equals first_step.
  std::optional<double> a;
  double c = 0.1;
  /// Unset: 0.01 * iterations.
  std::optional<double> A;
  double alpha = 0.602;
  double gamma = 0.101;
  double first_step = 0.1;
  std::uint64_t master_seed = 0;
  /// The two evaluations of an iteration may run concurrently.
  std::size_t threads = 1;
};

void validate(const SpsaConfig& config);

struct SpsaContext {
  std::size_t iteration = 0;  // from 1
  int side = 0;               // 0: theta + c_k delta, 1: theta - c_k delta
  std::uint64_t seed = 0;     // derive_seed(master, kSpsa, iteration, side)
};

using SpsaObjective = std::function<double(std::span<const double> theta, const SpsaContext&)>;

struct SpsaStep {
  std::size_t iteration = 0;
  std::size_t evaluations = 0;  // cumulative, 2 per iteration
  double value_plus = 0.0;
  double value_minus = 0.0;
  std::vector<double> theta;    // after the update
};

struct SpsaResult {
  std::vector<double> theta;
  std::vector<SpsaStep> history;
  double a = 0.0;  // gain actually used
  std::size_t evaluations = 0;
};

using SpsaObserver = std::function<void(const SpsaStep&)>;

/// Non-finite objective values abort with EvaluationError naming the
/// iteration and side.
SpsaResult spsa_minimize(const SpsaObjective& objective, std::vector<double> theta0,
                         const SpsaConfig& config, const SpsaObserver& observer = {});

struct PenaltyConfig {
  double lambda_final = 25.0;
  double lambda_daily = 25.0;
  std::size_t shots = 8192;
  qsim::Ansatz ansatz = qsim::Ansatz::layered(1);
  qsim::SimulatorLimits limits;

  cmp::PenaltyWeights weights() const { return {lambda_final, lambda_daily}; }
};

void validate(const PenaltyConfig& config);

/// SPSA on the sample-mean penalized cost. Initial angles come from
/// init_params on the kInit substream (individual 0) of the SPSA seed.
engine::RunResult run_penalty_vqe(const cmp::Instance& instance, const PenaltyConfig& penalty,
                                  const SpsaConfig& spsa,
                                  const engine::RecordObserver& observer = {});

/// Single-objective genetic search on the sample-mean penalized cost with
/// MOVCO's operators and hyperparameters.
engine::RunResult run_penalty_ga(const cmp::Instance& instance, const PenaltyConfig& penalty,
                                 const nsga2::GaConfig& ga, std::uint64_t master_seed,
                                 const engine::RecordObserver& observer = {});

struct SweepRow {
  double lambda = 0.0;
  std::size_t instances = 0;
  /// Share of instances whose final state has P > 0.99.
  double fraction_feasible = 0.0;
  /// Mean approximation ratio over those instances; unset when none qualify.
  std::optional<double> mean_ratio;
};

inline constexpr double kFeasibleThreshold = 0.99;

/// Runs run_penalty_vqe for every (instance, lambda) with lambda_f =
/// lambda_l = lambda. Instance i uses SPSA seed derive_seed(master, kRun, i)
/// for every lambda. Final P and expected cost are exact. Instances must be
/// small enough for the exhaustive oracle.
std::vector<SweepRow> penalty_sweep(std::span<const cmp::Instance> instances,
                                    std::span<const double> lambdas, const PenaltyConfig& penalty,
                                    const SpsaConfig& spsa);

}  // namespace movco::baselines

#endif  // MOVCO_BASELINES_HPP
