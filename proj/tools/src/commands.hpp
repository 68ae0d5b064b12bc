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

// Subcommands of the movco tool, callable as a library.

#ifndef MOVCO_TOOLS_COMMANDS_HPP
#define MOVCO_TOOLS_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"
#include "movco/cmp.hpp"
#include "movco/engine.hpp"
#include "movco/qsim.hpp"

namespace movco::tools {

struct ExperimentConfig {
  std::string method = "movco";  // movco | penalty-vqe | penalty-ga | brute
  qsim::Ansatz ansatz = qsim::Ansatz::layered(1);
  std::size_t shots = 8192;
  std::size_t population = 10;
  std::size_t offspring = 10;
  std::size_t generations = 100;
  std::size_t iterations = 1000;  // SPSA
  double lambda_f = 25.0;
  double lambda_l = 25.0;
  std::uint64_t seed = 1;
  engine::ExpectationMode expectation = engine::ExpectationMode::kExact;
  std::size_t max_statevector_qubits = 24;

  double crossover_prob = 0.9;
  double crossover_eta = 15.0;
  std::optional<double> mutation_prob;
  double mutation_eta = 20.0;

  std::optional<double> spsa_a;
  double spsa_c = 0.1;
  std::optional<double> spsa_A;
  double spsa_alpha = 0.602;
  double spsa_gamma = 0.101;
  double spsa_first_step = 0.1;
};

Json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& doc);

/// Throws InvalidArgument listing every violated field.
void validate(const ExperimentConfig& config);

/// Writes count instances inst_<i>.json under out_dir. Instance i is drawn
/// from the seed derive_seed(seed, kInstance, i), which it records. The
/// satisfiability cap is embedded whenever 2CD <= 24.
std::vector<std::filesystem::path> cmd_generate(int cash_points, int days, std::size_t count,
                                                std::uint64_t seed,
                                                const std::filesystem::path& out_dir);

/// Runs one experiment on one instance and writes summary.json,
/// history.csv and timing.json into out_dir. Everything except timing.json
/// is a pure function of (config, instance); `threads` only changes speed.
Json cmd_run(const ExperimentConfig& config, const cmp::Instance& instance,
             const std::filesystem::path& out_dir, std::size_t threads);

/// Re-executes the config and instance embedded in a summary document.
Json cmd_rerun(const std::filesystem::path& summary_path, const std::filesystem::path& out_dir,
               std::size_t threads);

/// Runs every instance of a batch into out_dir/<instance stem>/. Instance i
/// runs with seed derive_seed(config.seed, kRun, i).
void cmd_run_batch(const ExperimentConfig& config,
                   const std::vector<std::filesystem::path>& instances,
                   const std::filesystem::path& out_dir, std::size_t threads);

/// Compares two batch result directories produced by run on the same
/// instances. Writes checkpoints.csv (one row per instance, budget and
/// method) and aggregate.csv into out_dir.
void cmd_compare(const std::filesystem::path& first_dir, const std::filesystem::path& second_dir,
                 const std::vector<std::size_t>& budgets, const std::filesystem::path& out_dir);

/// Penalty-VQE lambda sweep over a directory of instances; writes a CSV.
void cmd_sweep(const ExperimentConfig& config, const std::vector<std::filesystem::path>& instances,
               const std::vector<double>& lambdas, const std::filesystem::path& out_file,
               std::size_t threads);

}  // namespace movco::tools

#endif  // MOVCO_TOOLS_COMMANDS_HPP
