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

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "movco/baselines.hpp"
#include "movco/metrics.hpp"

namespace movco::baselines {
namespace {

double sum_squares(std::span<const double> t) {
  double s = 0;
  for (double v : t) s += v * v;
  return s;
}

TEST(Spsa, ConvergesOnSphere) {
  Rng rng = make_rng(1);
  std::vector<double> theta0(8);
  for (auto& v : theta0) v = uniform_real(rng, -1, 1);
  SpsaConfig cfg;
  cfg.iterations = 500;
  cfg.master_seed = 3;
  const auto r = spsa_minimize([](std::span<const double> t, const SpsaContext&) { return sum_squares(t); },
                               theta0, cfg);
  EXPECT_LT(sum_squares(r.theta), 0.1 * sum_squares(theta0));
  EXPECT_EQ(r.evaluations, 1000u);
  ASSERT_EQ(r.history.size(), 500u);
  for (std::size_t k = 0; k < 500; ++k) EXPECT_EQ(r.history[k].evaluations, 2 * (k + 1));
}

TEST(Spsa, ZeroIterationsReturnsStart) {
  SpsaConfig cfg;
  cfg.iterations = 0;
  const std::vector<double> theta0{0.1, -0.2};
  const auto r = spsa_minimize([](std::span<const double>, const SpsaContext&) { return 0.0; }, theta0, cfg);
  EXPECT_EQ(r.theta, theta0);
  EXPECT_EQ(r.evaluations, 0u);
  EXPECT_TRUE(r.history.empty());
}

TEST(Spsa, FirstStepCalibration) {
  SpsaConfig cfg;
  cfg.iterations = 100;
  cfg.first_step = 0.05;
  const std::vector<double> theta0{0.3, 0.6, -0.4};
  const auto r = spsa_minimize(
      [](std::span<const double> t, const SpsaContext&) { return 3 * t[0] - t[1] + 0.5 * t[2]; }, theta0, cfg);
  const auto& first = r.history.front().theta;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(first[i] - theta0[i]), 0.05, 1e-12);
}

TEST(Spsa, ContextsAndErrors) {
  SpsaConfig cfg;
  cfg.iterations = 5;
  cfg.master_seed = 17;
  bool ok = true;
  spsa_minimize([&](std::span<const double> t, const SpsaContext& ctx) {
    ok = ok && ctx.iteration >= 1 && ctx.iteration <= 5 &&
         ctx.seed == derive_seed(17, Stream::kSpsa, ctx.iteration, static_cast<std::uint64_t>(ctx.side));
    return sum_squares(t);
  }, {1.0, 1.0}, cfg);
  EXPECT_TRUE(ok);
  EXPECT_THROW(spsa_minimize([](std::span<const double>, const SpsaContext&) { return NAN; }, {1.0}, cfg),
               EvaluationError);
  cfg.alpha = 0;
  EXPECT_THROW(validate(cfg), InvalidArgument);
}

TEST(Spsa, ThreadCountDoesNotMatter) {
  SpsaConfig cfg;
  cfg.iterations = 50;
  const auto noisy = [](std::span<const double> t, const SpsaContext& ctx) {
    Rng rng = make_rng(ctx.seed);
    return sum_squares(t) + 0.01 * uniform01(rng);
  };
  const auto a = spsa_minimize(noisy, {0.5, -0.5, 0.2}, cfg);
  cfg.threads = 2;
  const auto b = spsa_minimize(noisy, {0.5, -0.5, 0.2}, cfg);
  EXPECT_EQ(a.theta, b.theta);
}

cmp::Instance small_instance(std::uint64_t i = 0) {
  Rng rng = make_rng(derive_seed(5, Stream::kInstance, i));
  cmp::Instance inst = cmp::generate_instance(2, 2, rng);
  inst.satisfiability_cap = cmp::max_satisfiable(inst);
  return inst;
}

TEST(PenaltyVqe, ZeroLambdaMinimizesPlainSampleCost) {
  const auto inst = small_instance();
  PenaltyConfig pc;
  pc.lambda_final = pc.lambda_daily = 0;
  pc.shots = 512;
  SpsaConfig sc;
  sc.iterations = 30;
  sc.master_seed = 8;
  const auto run = run_penalty_vqe(inst, pc, sc);

  // Independent re-run: SPSA directly on the sample-mean transaction cost.
  Rng init = make_rng(derive_seed(8, Stream::kInit, 0));
  const auto theta0 = qsim::init_params(pc.ansatz, 8, init);
  const auto plain = spsa_minimize(
      [&](std::span<const double> t, const SpsaContext& ctx) {
        Rng rng = make_rng(ctx.seed);
        const auto batch = qsim::sample(qsim::ParameterVector(pc.ansatz, 8, {t.begin(), t.end()}), 512, rng);
        double cost = 0;
        for (std::size_t k = 0; k < batch.shots(); ++k) cost += cmp::transaction_cost(cmp::decode(batch.bitstring(k), inst), inst);
        return cost / 512.0;
      },
      {theta0.angles().begin(), theta0.angles().end()}, sc);
  ASSERT_EQ(run.records.size(), 30u);
  for (std::size_t k = 0; k < 30; ++k) {
    EXPECT_EQ(run.records[k].best_params, plain.history[k].theta);
    EXPECT_DOUBLE_EQ(run.records[k].objective, 0.5 * (plain.history[k].value_plus + plain.history[k].value_minus));
  }
  EXPECT_EQ(run.evaluations, 60u);
  EXPECT_EQ(run.best_params, plain.theta);
}

TEST(PenaltyVqe, Deterministic) {
  const auto inst = small_instance(1);
  PenaltyConfig pc;
  pc.shots = 256;
  SpsaConfig sc;
  sc.iterations = 20;
  sc.master_seed = 2;
  const auto a = run_penalty_vqe(inst, pc, sc);
  sc.threads = 2;
  const auto b = run_penalty_vqe(inst, pc, sc);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    EXPECT_EQ(a.records[k].objective, b.records[k].objective);
    EXPECT_EQ(a.records[k].best_params, b.records[k].best_params);
  }
  EXPECT_EQ(a.best_fitness, b.best_fitness);
  EXPECT_EQ(a.method, "penalty-vqe");
}

TEST(PenaltyGa, ConstantObjective) {
  // Prediction -2 is below every level, so every schedule pays k0 and meets
  // both constraints: the penalized cost is 2 everywhere.
  cmp::Instance inst = testing::tiny_instance(-2);
  PenaltyConfig pc;
  pc.shots = 64;
  nsga2::GaConfig ga;
  ga.generations = 10;
  const auto r = run_penalty_ga(inst, pc, ga, 3);
  ASSERT_EQ(r.records.size(), 11u);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.objective, 2.0);
    EXPECT_EQ(rec.best_P, 1.0);
  }
  for (const auto& ind : r.final_population) EXPECT_EQ(ind.objectives, (nsga2::Objectives{2.0}));
}

TEST(PenaltyGa, AllFeasibleInstanceIsPlainCostSearch) {
  cmp::Instance inst = testing::tiny_instance(1);
  inst.final_cash_limit = 3;
  PenaltyConfig pc;
  pc.shots = 256;
  nsga2::GaConfig ga;
  ga.generations = 20;
  const auto r = run_penalty_ga(inst, pc, ga, 4);
  const double c_max = cmp::cost_upper_bound(inst);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.best_P, 1.0);
    EXPECT_NEAR(rec.objective, rec.best_E + c_max, 1e-12);  // penalty never fires
  }
  for (std::size_t g = 1; g < r.records.size(); ++g) EXPECT_LE(r.records[g].objective, r.records[g - 1].objective);
  EXPECT_EQ(r.evaluations, 10u + 20u * 10u);
}

TEST(PenaltyGa, Deterministic) {
  const auto inst = small_instance(2);
  PenaltyConfig pc;
  pc.shots = 256;
  nsga2::GaConfig ga;
  ga.generations = 8;
  const auto a = run_penalty_ga(inst, pc, ga, 6);
  ga.threads = 3;
  const auto b = run_penalty_ga(inst, pc, ga, 6);
  EXPECT_EQ(a.best_params, b.best_params);
  EXPECT_EQ(a.records.back().objective, b.records.back().objective);
}

TEST(PenaltySweep, ShapeAndErrors) {
  const std::vector<cmp::Instance> one{small_instance(0)};
  PenaltyConfig pc;
  pc.shots = 256;
  SpsaConfig sc;
  sc.iterations = 10;
  const std::vector<double> lambda{25};
  const auto rows = penalty_sweep(one, lambda, pc, sc);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].lambda, 25);
  EXPECT_EQ(rows[0].instances, 1u);
  EXPECT_GE(rows[0].fraction_feasible, 0.0);
  EXPECT_LE(rows[0].fraction_feasible, 1.0);
  EXPECT_EQ(rows[0].mean_ratio.has_value(), rows[0].fraction_feasible > 0);
  EXPECT_THROW(penalty_sweep({}, lambda, pc, sc), InvalidArgument);
  EXPECT_THROW(penalty_sweep(one, {}, pc, sc), InvalidArgument);
}

}  // namespace
}  // namespace movco::baselines
