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

#include "commands.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "movco/baselines.hpp"
#include "movco/error.hpp"
#include "movco/metrics.hpp"
#include "movco/random.hpp"

namespace movco::tools {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kOracleBits = 24;

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

template <class T>
void get_to(const Json& doc, const char* key, T& out, std::string& problems) {
  if (!doc.contains(key)) {
    problems += problems.empty() ? "" : "; ";
    problems += std::string("missing '") + key + "'";
    return;
  }
  try {
    out = doc.at(key).get<T>();
  } catch (const Json::exception&) {
    problems += problems.empty() ? "" : "; ";
    problems += std::string("malformed '") + key + "'";
  }
}

void get_optional(const Json& doc, const char* key, std::optional<double>& out,
                  std::string& problems) {
  if (!doc.contains(key) || doc.at(key).is_null()) {
    out.reset();
    return;
  }
  double v = 0.0;
  get_to(doc, key, v, problems);
  out = v;
}

}  // namespace

Json config_to_json(const ExperimentConfig& c) {
  Json doc;
  doc["method"] = c.method;
  doc["ansatz"] = {{"kind", c.ansatz.kind == qsim::AnsatzKind::kProduct ? "product" : "layered"},
                   {"layers", c.ansatz.kind == qsim::AnsatzKind::kProduct ? 0 : c.ansatz.layers}};
  doc["shots"] = c.shots;
  doc["population"] = c.population;
  doc["offspring"] = c.offspring;
  doc["generations"] = c.generations;
  doc["iterations"] = c.iterations;
  doc["lambda_f"] = c.lambda_f;
  doc["lambda_l"] = c.lambda_l;
  doc["seed"] = c.seed;
  doc["expectation"] = engine::to_string(c.expectation);
  doc["max_statevector_qubits"] = c.max_statevector_qubits;
  doc["ga"] = {{"crossover_prob", c.crossover_prob},
               {"crossover_eta", c.crossover_eta},
               {"mutation_prob", optional_json(c.mutation_prob)},
               {"mutation_eta", c.mutation_eta}};
  doc["spsa"] = {{"a", optional_json(c.spsa_a)},       {"c", c.spsa_c},
                 {"A", optional_json(c.spsa_A)},       {"alpha", c.spsa_alpha},
                 {"gamma", c.spsa_gamma},              {"first_step", c.spsa_first_step}};
  return doc;
}

ExperimentConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) {
    throw InvalidArgument("config must be a JSON object");
  }
  ExperimentConfig c;
  std::string problems;
  get_to(doc, "method", c.method, problems);
  if (doc.contains("ansatz") && doc["ansatz"].is_object()) {
    std::string kind;
    std::size_t layers = 0;
    get_to(doc["ansatz"], "kind", kind, problems);
    get_to(doc["ansatz"], "layers", layers, problems);
    if (kind == "product") {
      c.ansatz = qsim::Ansatz::product();
    } else if (kind == "layered") {
      c.ansatz = qsim::Ansatz::layered(layers);
    } else {
      problems += problems.empty() ? "" : "; ";
      problems += "unknown ansatz kind '" + kind + "'";
    }
  } else {
    problems += problems.empty() ? "" : "; ";
    problems += "missing 'ansatz'";
  }
  get_to(doc, "shots", c.shots, problems);
  get_to(doc, "population", c.population, problems);
  get_to(doc, "offspring", c.offspring, problems);
  get_to(doc, "generations", c.generations, problems);
  get_to(doc, "iterations", c.iterations, problems);
  get_to(doc, "lambda_f", c.lambda_f, problems);
  get_to(doc, "lambda_l", c.lambda_l, problems);
  get_to(doc, "seed", c.seed, problems);
  std::string expectation;
  get_to(doc, "expectation", expectation, problems);
  if (expectation == "sampled") {
    c.expectation = engine::ExpectationMode::kSampled;
  } else if (expectation != "exact" && !expectation.empty()) {
    problems += problems.empty() ? "" : "; ";
    problems += "unknown expectation mode '" + expectation + "'";
  }
  get_to(doc, "max_statevector_qubits", c.max_statevector_qubits, problems);
  if (doc.contains("ga")) {
    const Json& ga = doc["ga"];
    get_to(ga, "crossover_prob", c.crossover_prob, problems);
    get_to(ga, "crossover_eta", c.crossover_eta, problems);
    get_optional(ga, "mutation_prob", c.mutation_prob, problems);
    get_to(ga, "mutation_eta", c.mutation_eta, problems);
  }
  if (doc.contains("spsa")) {
    const Json& sp = doc["spsa"];
    get_optional(sp, "a", c.spsa_a, problems);
    get_to(sp, "c", c.spsa_c, problems);
    get_optional(sp, "A", c.spsa_A, problems);
    get_to(sp, "alpha", c.spsa_alpha, problems);
    get_to(sp, "gamma", c.spsa_gamma, problems);
    get_to(sp, "first_step", c.spsa_first_step, problems);
  }
  if (!problems.empty()) {
    throw InvalidArgument("invalid config document: " + problems);
  }
  return c;
}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> bad;
  if (c.method != "movco" && c.method != "penalty-vqe" && c.method != "penalty-ga" &&
      c.method != "brute") {
    bad.push_back("method must be movco, penalty-vqe, penalty-ga or brute (got '" + c.method +
                  "')");
  }
  if (c.shots < 1) bad.push_back("shots must be >= 1");
  if (c.population < 1) bad.push_back("population must be >= 1");
  if (c.offspring < 1) bad.push_back("offspring must be >= 1");
  if (!(c.lambda_f >= 0.0)) bad.push_back("lambda_f must be >= 0");
  if (!(c.lambda_l >= 0.0)) bad.push_back("lambda_l must be >= 0");
  if (!(c.crossover_prob >= 0.0 && c.crossover_prob <= 1.0)) {
    bad.push_back("crossover_prob must lie in [0, 1]");
  }
  if (c.mutation_prob && !(*c.mutation_prob >= 0.0 && *c.mutation_prob <= 1.0)) {
    bad.push_back("mutation_prob must lie in [0, 1]");
  }
  if (!(c.crossover_eta >= 0.0)) bad.push_back("crossover_eta must be >= 0");
  if (!(c.mutation_eta >= 0.0)) bad.push_back("mutation_eta must be >= 0");
  if (c.spsa_a && !(*c.spsa_a > 0.0)) bad.push_back("spsa a must be > 0");
  if (!(c.spsa_c > 0.0)) bad.push_back("spsa c must be > 0");
  if (c.spsa_A && !(*c.spsa_A >= 0.0)) bad.push_back("spsa A must be >= 0");
  if (!(c.spsa_alpha > 0.0 && c.spsa_alpha <= 1.0)) bad.push_back("spsa alpha must lie in (0, 1]");
  if (!(c.spsa_gamma > 0.0 && c.spsa_gamma <= 1.0)) bad.push_back("spsa gamma must lie in (0, 1]");
  if (!(c.spsa_first_step > 0.0)) bad.push_back("spsa first_step must be > 0");
  if (c.max_statevector_qubits < 1 || c.max_statevector_qubits > 40) {
    bad.push_back("max_statevector_qubits must lie in [1, 40]");
  }
  if (!bad.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& b : bad) msg += "\n  - " + b;
    throw InvalidArgument(msg);
  }
}

std::vector<fs::path> cmd_generate(int cash_points, int days, std::size_t count,
                                   std::uint64_t seed, const fs::path& out_dir) {
  if (count < 1) {
    throw InvalidArgument("count must be >= 1");
  }
  if (cash_points < 1 || days < 1) {
    throw InvalidArgument("C and D must be >= 1");
  }
  std::vector<fs::path> written;
  const std::size_t width = std::max<std::size_t>(3, std::to_string(count - 1).size());
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t derived = derive_seed(seed, Stream::kInstance, i);
    Rng rng = make_rng(derived);
    cmp::Instance inst = cmp::generate_instance(cash_points, days, rng);
    inst.seed = derived;
    if (inst.variable_count() <= kOracleBits) {
      inst.satisfiability_cap = cmp::max_satisfiable(inst, kOracleBits);
    }
    std::string index = std::to_string(i);
    index.insert(0, width - index.size(), '0');
    const fs::path path = out_dir / ("inst_" + index + ".json");
    write_instance(path, inst);
    written.push_back(path);
  }
  return written;
}

namespace {

Json schedule_json(const cmp::Schedule& s) {
  Json rows = Json::array();
  for (int c = 0; c < s.cash_points(); ++c) {
    Json row = Json::array();
    for (int t = 0; t < s.days(); ++t) row.push_back(s.at(c, t));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct PointMetrics {
  double expected_P = std::nan("");
  double expected_cost = std::nan("");
  std::optional<double> ratio;
  std::optional<double> overlap;
};

PointMetrics evaluate_point(const qsim::ParameterVector& params, const cmp::Instance& instance,
                            const ExperimentConfig& config,
                            const std::optional<metrics::OracleResult>& oracle,
                            std::uint64_t sample_seed) {
  const qsim::SimulatorLimits limits{config.max_statevector_qubits};
  PointMetrics m;
  std::optional<qsim::StateVector> state;
  if (params.kind() == qsim::AnsatzKind::kLayered) {
    state = qsim::build_state(params, limits);
  }
  if (config.expectation == engine::ExpectationMode::kExact) {
    const metrics::ExactStats s = state ? metrics::exact_stats(*state, cmp::Evaluator(instance))
                                        : metrics::exact_product_stats(params, instance);
    m.expected_P = s.P;
    m.expected_cost = s.expected_cost;
  } else {
    Rng rng = make_rng(sample_seed);
    const auto batch = state ? qsim::sample_state(*state, config.shots, rng)
                             : qsim::sample_product(params, config.shots, rng);
    const auto s = engine::batch_stats(batch, cmp::Evaluator(instance));
    m.expected_P = s.P;
    m.expected_cost = s.mean_cost;
  }
  if (oracle) {
    if (oracle->c_max != oracle->c_min) {
      m.ratio = metrics::approximation_ratio(m.expected_cost, oracle->c_max, oracle->c_min);
    }
    m.overlap = state ? metrics::success_overlap(*state, oracle->optimal_indices).rho
                      : metrics::success_overlap(params, oracle->optimal_indices).rho;
  }
  return m;
}

Json oracle_json(const metrics::OracleResult& o, const cmp::Instance& instance) {
  Json doc;
  doc["c_min"] = o.c_min;
  doc["c_max"] = o.c_max;
  doc["feasible_count"] = o.feasible_count;
  doc["satisfiability_cap"] = o.satisfiability_cap;
  Json schedules = Json::array();
  for (const auto& s : o.optimal_schedules(instance)) schedules.push_back(schedule_json(s));
  doc["optimal_schedules"] = std::move(schedules);
  return doc;
}

const char* kHistoryHeader =
    "generation,cumulative_evaluations,best_P,mean_P,best_E,mean_E,objective,expected_P,"
    "expected_cost,approximation_ratio,overlap";

}  // namespace

Json cmd_run(const ExperimentConfig& config, const cmp::Instance& instance,
             const fs::path& out_dir, std::size_t threads) {
  validate(config);
  cmp::validate(instance);
  const auto started = std::chrono::steady_clock::now();
  const qsim::SimulatorLimits limits{config.max_statevector_qubits};
  const std::size_t bits = instance.variable_count();

  std::optional<metrics::OracleResult> oracle;
  if (config.method == "brute" || bits <= kOracleBits) {
    oracle = metrics::brute_force_solve(instance, kOracleBits, threads);
  }

  Json summary;
  summary["schema_version"] = kSummarySchemaVersion;
  summary["config"] = config_to_json(config);
  summary["instance"] = instance_to_json(instance);

  std::ostringstream history;
  history << "# movco-history v" << kHistorySchemaVersion << "\n" << kHistoryHeader << "\n";

  Json result;
  result["method"] = config.method;
  if (config.method == "brute") {
    result["evaluations"] = std::uint64_t{1} << bits;
    result["best_params"] = nullptr;
    result["best_fitness"] = nullptr;
    const auto optima = oracle->optimal_schedules(instance);
    result["best_schedule"] = optima.empty() ? Json(nullptr) : schedule_json(optima.front());
    result["best_schedule_cost"] = optima.empty() ? Json(nullptr) : Json(oracle->c_min);
    result["final"] = nullptr;
  } else {
    nsga2::GaConfig ga;
    ga.population_size = config.population;
    ga.offspring_size = config.offspring;
    ga.generations = config.generations;
    ga.crossover_prob = config.crossover_prob;
    ga.crossover_eta = config.crossover_eta;
    ga.mutation_prob = config.mutation_prob;
    ga.mutation_eta = config.mutation_eta;
    ga.threads = threads;
    baselines::PenaltyConfig penalty{config.lambda_f, config.lambda_l, config.shots,
                                     config.ansatz, limits};

    engine::RunResult run;
    if (config.method == "movco") {
      engine::MovcoConfig mc;
      mc.ansatz = config.ansatz;
      mc.shots = config.shots;
      mc.ga = ga;
      mc.master_seed = config.seed;
      mc.expectation = config.expectation;
      mc.limits = limits;
      run = engine::run_movco(instance, mc);
    } else if (config.method == "penalty-vqe") {
      baselines::SpsaConfig sc;
      sc.iterations = config.iterations;
      sc.a = config.spsa_a;
      sc.c = config.spsa_c;
      sc.A = config.spsa_A;
      sc.alpha = config.spsa_alpha;
      sc.gamma = config.spsa_gamma;
      sc.first_step = config.spsa_first_step;
      sc.master_seed = config.seed;
      sc.threads = threads;
      run = baselines::run_penalty_vqe(instance, penalty, sc);
    } else {
      run = baselines::run_penalty_ga(instance, penalty, ga, config.seed);
    }

    for (const auto& r : run.records) {
      const qsim::ParameterVector params(run.ansatz, run.num_qubits, r.best_params);
      const PointMetrics m =
          evaluate_point(params, instance, config, oracle,
                         derive_seed(config.seed, Stream::kExtract, r.generation + 1));
      history << r.generation << ',' << r.cumulative_evaluations << ','
              << format_double(r.best_P) << ',' << format_double(r.mean_P) << ','
              << format_double(r.best_E) << ',' << format_double(r.mean_E) << ','
              << format_double(r.objective) << ',' << format_double(m.expected_P) << ','
              << format_double(m.expected_cost) << ',' << format_optional(m.ratio) << ','
              << format_optional(m.overlap) << "\n";
    }

    const PointMetrics final_m = evaluate_point(run.params(), instance, config, oracle,
                                                derive_seed(config.seed, Stream::kExtract, 0));
    result["evaluations"] = run.evaluations;
    result["best_params"] = run.best_params;
    result["best_fitness"] = {{"P", run.best_fitness.P}, {"E", run.best_fitness.E}};
    result["best_schedule"] = run.best_schedule ? schedule_json(*run.best_schedule) : Json(nullptr);
    result["best_schedule_cost"] = run.best_schedule ? Json(run.best_schedule_cost) : Json(nullptr);
    Json fin;
    fin["expected_P"] = final_m.expected_P;
    fin["expected_cost"] = final_m.expected_cost;
    fin["approximation_ratio"] = optional_json(final_m.ratio);
    fin["overlap"] = optional_json(final_m.overlap);
    fin["success"] = final_m.overlap ? Json(*final_m.overlap > metrics::kSuccessThreshold)
                                     : Json(nullptr);
    result["final"] = std::move(fin);
  }
  summary["result"] = std::move(result);
  summary["oracle"] = oracle ? oracle_json(*oracle, instance) : Json(nullptr);

  write_json(out_dir / "summary.json", summary);
  write_text(out_dir / "history.csv", history.str());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_json(out_dir / "timing.json", Json{{"wall_seconds", seconds}, {"threads", threads}});
  return summary;
}

Json cmd_rerun(const fs::path& summary_path, const fs::path& out_dir, std::size_t threads) {
  const Json doc = read_json(summary_path);
  if (!doc.contains("schema_version") || doc["schema_version"] != kSummarySchemaVersion) {
    throw InvalidArgument(summary_path.string() + ": unsupported summary schema_version");
  }
  if (!doc.contains("config") || !doc.contains("instance")) {
    throw InvalidArgument(summary_path.string() + ": summary lacks config or instance");
  }
  return cmd_run(config_from_json(doc["config"]), instance_from_json(doc["instance"]), out_dir,
                 threads);
}

void cmd_run_batch(const ExperimentConfig& config, const std::vector<fs::path>& instances,
                   const fs::path& out_dir, std::size_t threads) {
  validate(config);
  if (instances.empty()) {
    throw InvalidArgument("no instances to run");
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    ExperimentConfig c = config;
    c.seed = derive_seed(config.seed, Stream::kRun, i);
    cmd_run(c, read_instance(instances[i]), out_dir / instances[i].stem(), threads);
  }
}

namespace {

struct RunFiles {
  std::string name;
  std::string method;
  std::string instance_key;
  Table history;
};

std::vector<RunFiles> load_runs(const fs::path& dir) {
  std::vector<fs::path> run_dirs;
  if (fs::exists(dir / "summary.json")) {
    run_dirs.push_back(dir);
  } else {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      throw IoError("not a directory: " + dir.string());
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_directory() && fs::exists(entry.path() / "summary.json")) {
        run_dirs.push_back(entry.path());
      }
    }
    std::sort(run_dirs.begin(), run_dirs.end());
  }
  if (run_dirs.empty()) {
    throw InvalidArgument("no run results under " + dir.string());
  }
  std::vector<RunFiles> runs;
  for (const auto& d : run_dirs) {
    const Json summary = read_json(d / "summary.json");
    if (!summary.contains("schema_version") || summary["schema_version"] != kSummarySchemaVersion) {
      throw InvalidArgument((d / "summary.json").string() + ": unsupported schema_version");
    }
    RunFiles r;
    r.name = d.filename().string();
    r.method = summary["config"]["method"].get<std::string>();
    r.instance_key = instance_to_json(instance_from_json(summary["instance"])).dump();
    r.history = read_history(d / "history.csv");
    runs.push_back(std::move(r));
  }
  return runs;
}

struct Checkpoint {
  bool present = false;
  std::size_t evaluations = 0;
  std::optional<double> P;
  std::optional<double> cost;
  std::optional<double> ratio;
  std::optional<double> overlap;
};

std::optional<double> cell(const Table& t, std::size_t row, std::string_view col) {
  const std::string& s = t.rows[row][t.column(col)];
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

Checkpoint checkpoint(const Table& t, std::size_t budget) {
  Checkpoint cp;
  const std::size_t evals = t.column("cumulative_evaluations");
  std::optional<std::size_t> pick;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (std::stoull(t.rows[r][evals]) <= budget) pick = r;
  }
  if (!pick) return cp;
  cp.present = true;
  cp.evaluations = std::stoull(t.rows[*pick][evals]);
  cp.P = cell(t, *pick, "expected_P");
  cp.cost = cell(t, *pick, "expected_cost");
  cp.ratio = cell(t, *pick, "approximation_ratio");
  cp.overlap = cell(t, *pick, "overlap");
  return cp;
}

}  // namespace

void cmd_compare(const fs::path& first_dir, const fs::path& second_dir,
                 const std::vector<std::size_t>& budgets, const fs::path& out_dir) {
  if (budgets.empty()) {
    throw InvalidArgument("at least one evaluation budget is required");
  }
  const auto first = load_runs(first_dir);
  const auto second = load_runs(second_dir);
  if (first.size() != second.size()) {
    throw InvalidArgument("instance sets differ: " + std::to_string(first.size()) + " vs " +
                          std::to_string(second.size()) + " runs");
  }
  std::map<std::string, std::size_t> second_by_key;
  for (std::size_t i = 0; i < second.size(); ++i) second_by_key[second[i].instance_key] = i;

  std::ostringstream rows;
  rows << "# movco-compare v" << kCompareSchemaVersion << "\n"
       << "instance,budget,side,method,evaluations,P,expected_cost,approximation_ratio,overlap,"
          "P_gap,C_gap\n";

  struct Tally {
    std::size_t n = 0, p99 = 0, ratio_known = 0, gap_n = 0, pgap = 0, cgap = 0, both = 0;
    std::array<std::size_t, 4> eps{};
  };
  constexpr std::array<double, 4> kEps{0.95, 0.9, 0.85, 0.8};
  std::map<std::size_t, std::array<Tally, 2>> tallies;

  for (const auto& a : first) {
    const auto it = second_by_key.find(a.instance_key);
    if (it == second_by_key.end()) {
      throw InvalidArgument("instance sets differ: " + a.name + " has no counterpart in " +
                            second_dir.string());
    }
    const RunFiles& b = second[it->second];
    for (std::size_t budget : budgets) {
      const Checkpoint ca = checkpoint(a.history, budget);
      const Checkpoint cb = checkpoint(b.history, budget);
      std::optional<double> p_gap;
      std::optional<double> c_gap;
      if (ca.present && cb.present && ca.P && cb.P && ca.cost && cb.cost) {
        const metrics::Gaps g = metrics::gaps(*ca.P, *ca.cost, *cb.P, *cb.cost);
        p_gap = g.p_gap;
        c_gap = g.c_gap;
      }
      const std::array<const Checkpoint*, 2> cps{&ca, &cb};
      const std::array<const RunFiles*, 2> runs{&a, &b};
      for (int side = 0; side < 2; ++side) {
        const Checkpoint& cp = *cps[static_cast<std::size_t>(side)];
        rows << a.name << ',' << budget << ',' << (side == 0 ? "first" : "second") << ','
             << runs[static_cast<std::size_t>(side)]->method << ','
             << (cp.present ? std::to_string(cp.evaluations) : std::string()) << ','
             << format_optional(cp.P) << ',' << format_optional(cp.cost) << ','
             << format_optional(cp.ratio) << ',' << format_optional(cp.overlap) << ','
             << format_optional(p_gap) << ',' << format_optional(c_gap) << "\n";
        Tally& t = tallies[budget][static_cast<std::size_t>(side)];
        if (!cp.present) continue;
        ++t.n;
        if (cp.P && *cp.P > baselines::kFeasibleThreshold) ++t.p99;
        if (cp.ratio) {
          ++t.ratio_known;
          for (std::size_t e = 0; e < kEps.size(); ++e) {
            if (*cp.ratio >= kEps[e]) ++t.eps[e];
          }
        }
        if (side == 0 && p_gap) {
          ++t.gap_n;
          if (*p_gap >= 0) ++t.pgap;
          if (c_gap && *c_gap >= 0) ++t.cgap;
          if (*p_gap >= 0 && c_gap && *c_gap >= 0) ++t.both;
        }
      }
    }
  }

  auto frac = [](std::size_t k, std::size_t n) {
    return n == 0 ? std::string() : format_double(static_cast<double>(k) / static_cast<double>(n));
  };
  std::ostringstream agg;
  agg << "# movco-compare v" << kCompareSchemaVersion << "\n"
      << "budget,side,method,instances,frac_P_gt_0.99,frac_eps_ge_0.95,frac_eps_ge_0.9,"
         "frac_eps_ge_0.85,frac_eps_ge_0.8,frac_P_gap_ge_0,frac_C_gap_ge_0,frac_both_gaps_ge_0\n";
  for (const auto& [budget, pair] : tallies) {
    for (int side = 0; side < 2; ++side) {
      const Tally& t = pair[static_cast<std::size_t>(side)];
      agg << budget << ',' << (side == 0 ? "first" : "second") << ','
          << (side == 0 ? first.front().method : second.front().method) << ',' << t.n << ','
          << frac(t.p99, t.n);
      for (std::size_t e = 0; e < kEps.size(); ++e) agg << ',' << frac(t.eps[e], t.ratio_known);
      agg << ',' << frac(t.pgap, t.gap_n) << ',' << frac(t.cgap, t.gap_n) << ','
          << frac(t.both, t.gap_n) << "\n";
    }
  }
  write_text(out_dir / "checkpoints.csv", rows.str());
  write_text(out_dir / "aggregate.csv", agg.str());
}

void cmd_sweep(const ExperimentConfig& config, const std::vector<fs::path>& instance_paths,
               const std::vector<double>& lambdas, const fs::path& out_file,
               std::size_t threads) {
  validate(config);
  std::vector<cmp::Instance> instances;
  for (const auto& p : instance_paths) instances.push_back(read_instance(p));
  baselines::PenaltyConfig penalty{config.lambda_f, config.lambda_l, config.shots, config.ansatz,
                                   qsim::SimulatorLimits{config.max_statevector_qubits}};
  baselines::SpsaConfig sc;
  sc.iterations = config.iterations;
  sc.a = config.spsa_a;
  sc.c = config.spsa_c;
  sc.A = config.spsa_A;
  sc.alpha = config.spsa_alpha;
  sc.gamma = config.spsa_gamma;
  sc.first_step = config.spsa_first_step;
  sc.master_seed = config.seed;
  sc.threads = threads;
  const auto table = baselines::penalty_sweep(instances, lambdas, penalty, sc);
  std::ostringstream out;
  out << "lambda,instances,fraction_P_gt_0.99,mean_approximation_ratio\n";
  for (const auto& row : table) {
    out << format_double(row.lambda) << ',' << row.instances << ','
        << format_double(row.fraction_feasible) << ',' << format_optional(row.mean_ratio) << "\n";
  }
  write_text(out_file, out.str());
}

}  // namespace movco::tools
