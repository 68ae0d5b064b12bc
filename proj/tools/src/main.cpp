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

// movco: generate instances, run solvers, compare and sweep.
//
// Exit codes: 0 success, 1 unexpected failure, 2 bad configuration or
// usage, 3 file-system error, 4 resource limit exceeded.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "movco/error.hpp"
#include "movco/parallel.hpp"

namespace {

using movco::tools::ExperimentConfig;

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3, kResource = 4 };

// Flags shared by run and sweep. Values start from the config defaults (or
// a --config file) and each flag given on the command line overrides one.
struct ConfigFlags {
  std::string config_file;
  std::string method;
  std::string ansatz;
  std::size_t layers = 1;
  std::optional<std::size_t> shots, population, offspring, generations, iterations;
  std::optional<double> lambda, lambda_f, lambda_l;
  std::optional<std::uint64_t> seed;
  std::string expectation;
  std::optional<std::size_t> max_qubits;
  std::optional<double> crossover_prob, crossover_eta, mutation_prob, mutation_eta;
  std::optional<double> spsa_a, spsa_c, spsa_A, spsa_alpha, spsa_gamma, spsa_first_step;

  void attach(CLI::App& app, bool with_method) {
    app.add_option("--config", config_file, "JSON config document (flags override it)");
    if (with_method) {
      app.add_option("--method", method, "movco | penalty-vqe | penalty-ga | brute");
    }
    app.add_option("--ansatz", ansatz, "layered | product");
    app.add_option("--layers", layers, "entangling layers of the layered ansatz");
    app.add_option("--shots", shots, "measurement shots K per evaluation");
    app.add_option("--population", population, "GA population size");
    app.add_option("--offspring", offspring, "GA offspring per generation");
    app.add_option("--generations", generations, "GA generations");
    app.add_option("--iterations", iterations, "SPSA iterations");
    app.add_option("--lambda", lambda, "sets both penalty weights");
    app.add_option("--lambda-f", lambda_f, "final-total penalty weight");
    app.add_option("--lambda-l", lambda_l, "daily-limit penalty weight");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--expectation", expectation, "exact | sampled");
    app.add_option("--max-qubits", max_qubits, "statevector qubit limit");
    app.add_option("--crossover-prob", crossover_prob);
    app.add_option("--crossover-eta", crossover_eta);
    app.add_option("--mutation-prob", mutation_prob);
    app.add_option("--mutation-eta", mutation_eta);
    app.add_option("--spsa-a", spsa_a);
    app.add_option("--spsa-c", spsa_c);
    app.add_option("--spsa-A", spsa_A);
    app.add_option("--spsa-alpha", spsa_alpha);
    app.add_option("--spsa-gamma", spsa_gamma);
    app.add_option("--spsa-first-step", spsa_first_step);
  }

  ExperimentConfig resolve(const CLI::App& app) const {
    ExperimentConfig c;
    if (!config_file.empty()) {
      c = movco::tools::config_from_json(movco::tools::read_json(config_file));
    }
    if (!method.empty()) c.method = method;
    if (!ansatz.empty()) {
      if (ansatz == "product") {
        c.ansatz = movco::qsim::Ansatz::product();
      } else if (ansatz == "layered") {
        c.ansatz = movco::qsim::Ansatz::layered(layers);
      } else {
        throw movco::InvalidArgument("unknown ansatz '" + ansatz + "'");
      }
    } else if (app.count("--layers") > 0) {
      c.ansatz = movco::qsim::Ansatz::layered(layers);
    }
    if (shots) c.shots = *shots;
    if (population) c.population = *population;
    if (offspring) c.offspring = *offspring;
    if (generations) c.generations = *generations;
    if (iterations) c.iterations = *iterations;
    if (lambda) c.lambda_f = c.lambda_l = *lambda;
    if (lambda_f) c.lambda_f = *lambda_f;
    if (lambda_l) c.lambda_l = *lambda_l;
    if (seed) c.seed = *seed;
    if (expectation == "exact") {
      c.expectation = movco::engine::ExpectationMode::kExact;
    } else if (expectation == "sampled") {
      c.expectation = movco::engine::ExpectationMode::kSampled;
    } else if (!expectation.empty()) {
      throw movco::InvalidArgument("unknown expectation mode '" + expectation + "'");
    }
    if (max_qubits) c.max_statevector_qubits = *max_qubits;
    if (crossover_prob) c.crossover_prob = *crossover_prob;
    if (crossover_eta) c.crossover_eta = *crossover_eta;
    if (mutation_prob) c.mutation_prob = *mutation_prob;
    if (mutation_eta) c.mutation_eta = *mutation_eta;
    if (spsa_a) c.spsa_a = *spsa_a;
    if (spsa_c) c.spsa_c = *spsa_c;
    if (spsa_A) c.spsa_A = *spsa_A;
    if (spsa_alpha) c.spsa_alpha = *spsa_alpha;
    if (spsa_gamma) c.spsa_gamma = *spsa_gamma;
    if (spsa_first_step) c.spsa_first_step = *spsa_first_step;
    return c;
  }
};

int report(const char* category, const std::exception& e, int code) {
  std::cerr << "movco: " << category << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective variational solver for cash-management scheduling"};
  app.require_subcommand(1);
  std::optional<std::size_t> threads_flag;
  app.add_option("--threads", threads_flag,
                 std::string("worker threads (default: $") + movco::kThreadsEnvVar + " or 1)");

  // generate
  auto* gen = app.add_subcommand("generate", "write random instances");
  int gen_c = 2, gen_d = 2;
  std::size_t gen_count = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("-C,--cash-points", gen_c, "cash points C")->required();
  gen->add_option("-D,--days", gen_d, "days D")->required();
  gen->add_option("--count", gen_count, "number of instances");
  gen->add_option("--seed", gen_seed, "batch seed");
  gen->add_option("--out", gen_out, "output directory")->required();

  // run
  auto* run = app.add_subcommand("run", "solve instances and write result files");
  ConfigFlags run_flags;
  run_flags.attach(*run, true);
  std::string run_instance, run_instances, run_summary, run_out;
  int run_c = 0, run_d = 0;
  std::size_t run_count = 0;
  std::uint64_t run_instance_seed = 1;
  auto* src = run->add_option_group("source", "exactly one instance source");
  src->add_option("--instance", run_instance, "instance file");
  src->add_option("--instances", run_instances, "directory of instance files");
  src->add_option("--from-summary", run_summary, "re-execute a summary.json");
  src->add_option("--generate-count", run_count, "generate this many instances in memory");
  src->require_option(1);
  run->add_option("-C,--cash-points", run_c, "C for --generate-count");
  run->add_option("-D,--days", run_d, "D for --generate-count");
  run->add_option("--instance-seed", run_instance_seed, "batch seed for --generate-count");
  run->add_option("--out", run_out, "output directory")->required();

  // compare
  auto* cmp = app.add_subcommand("compare", "compare two batches of run results");
  std::string cmp_first, cmp_second, cmp_out;
  std::vector<std::size_t> budgets;
  cmp->add_option("--first", cmp_first, "result directory of the first method")->required();
  cmp->add_option("--second", cmp_second, "result directory of the second method")->required();
  cmp->add_option("--budgets", budgets, "evaluation-budget checkpoints")
      ->delimiter(',')
      ->required();
  cmp->add_option("--out", cmp_out, "output directory")->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "penalty-VQE lambda sweep");
  ConfigFlags sweep_flags;
  sweep_flags.attach(*sweep, false);
  std::string sweep_instances, sweep_out;
  std::vector<double> lambdas;
  sweep->add_option("--instances", sweep_instances, "directory of instance files")->required();
  sweep->add_option("--lambdas", lambdas, "penalty weights")->delimiter(',')->required();
  sweep->add_option("--out", sweep_out, "output CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const std::size_t threads = threads_flag.value_or(movco::threads_from_env());
  try {
    if (*gen) {
      const auto files = movco::tools::cmd_generate(gen_c, gen_d, gen_count, gen_seed, gen_out);
      std::cout << "wrote " << files.size() << " instance file(s) to " << gen_out << "\n";
    } else if (*run) {
      if (!run_summary.empty()) {
        movco::tools::cmd_rerun(run_summary, run_out, threads);
      } else {
        const ExperimentConfig config = run_flags.resolve(*run);
        if (!run_instance.empty()) {
          movco::tools::cmd_run(config, movco::tools::read_instance(run_instance), run_out,
                                threads);
        } else if (!run_instances.empty()) {
          movco::tools::cmd_run_batch(config, movco::tools::list_instances(run_instances), run_out,
                                      threads);
        } else {
          if (run_c < 1 || run_d < 1) {
            throw movco::InvalidArgument("--generate-count needs -C and -D");
          }
          const auto dir = std::filesystem::path(run_out) / "instances";
          const auto files =
              movco::tools::cmd_generate(run_c, run_d, run_count, run_instance_seed, dir);
          movco::tools::cmd_run_batch(config, files, run_out, threads);
        }
      }
      std::cout << "results written to " << run_out << "\n";
    } else if (*cmp) {
      movco::tools::cmd_compare(cmp_first, cmp_second, budgets, cmp_out);
      std::cout << "comparison written to " << cmp_out << "\n";
    } else if (*sweep) {
      const ExperimentConfig config = sweep_flags.resolve(*sweep);
      movco::tools::cmd_sweep(config, movco::tools::list_instances(sweep_instances), lambdas,
                              sweep_out, threads);
      std::cout << "sweep written to " << sweep_out << "\n";
    }
  } catch (const movco::InvalidArgument& e) {
    return report("configuration error", e, kUsage);
  } catch (const movco::tools::IoError& e) {
    return report("I/O error", e, kIo);
  } catch (const std::filesystem::filesystem_error& e) {
    return report("I/O error", e, kIo);
  } catch (const movco::ResourceLimit& e) {
    return report("resource limit", e, kResource);
  } catch (const std::exception& e) {
    return report("error", e, kFailure);
  }
  return kOk;
}
