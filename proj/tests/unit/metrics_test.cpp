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
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "movco/engine.hpp"
#include "movco/metrics.hpp"

namespace movco::metrics {
namespace {

using testing::Reference;

TEST(BruteForce, WorkedInstance) {
  const auto inst = testing::worked_instance();
  const auto r = brute_force_solve(inst);
  EXPECT_EQ(r.c_min, 14.0);
  EXPECT_EQ(r.c_max, 30.0);
  EXPECT_EQ(r.satisfiability_cap, 5);
  const auto optima = r.optimal_schedules(inst);
  EXPECT_NE(std::find(optima.begin(), optima.end(), testing::worked_optimum()), optima.end());
  for (const auto& m : optima) {
    EXPECT_EQ(cmp::transaction_cost(m, inst), 14.0);
    EXPECT_EQ(cmp::check_constraints(m, inst).satisfied_count, 5);
  }
}

TEST(BruteForce, TinyAndCappedInstances) {
  const auto tiny = brute_force_solve(testing::tiny_instance(1));
  EXPECT_EQ(tiny.c_min, 0.0);
  ASSERT_EQ(tiny.optimal_indices.size(), 1u);
  EXPECT_EQ(tiny.optimal_schedules(testing::tiny_instance(1))[0], cmp::Schedule(1, 1, {1}));

  const auto capped = brute_force_solve(testing::capped_instance());
  EXPECT_EQ(capped.feasible_count, 0u);
  EXPECT_EQ(capped.satisfiability_cap, 1);
}

TEST(BruteForce, MatchesEnumerationOracle) {
  Rng rng = make_rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const int C = 1 + trial % 3, D = 1 + trial % 4;
    const cmp::Instance inst = cmp::generate_instance(C, D, rng);
    const Reference ref{inst};
    const std::uint64_t total = std::uint64_t{1} << inst.variable_count();
    int cap = -1;
    double c_min = INFINITY;
    std::uint64_t feasible = 0;
    std::vector<std::uint64_t> best;
    for (std::uint64_t x = 0; x < total; ++x) {
      const auto m = ref.schedule(x);
      const int s = ref.satisfied(m);
      feasible += s == D + 1;
      const double c = ref.cost(m);
      if (s > cap || (s == cap && c < c_min)) {
        cap = s;
        c_min = c;
        best = {x};
      } else if (s == cap && c == c_min) {
        best.push_back(x);
      }
    }
    for (std::size_t threads : {1u, 3u}) {
      const auto r = brute_force_solve(inst, 24, threads);
      EXPECT_EQ(r.satisfiability_cap, cap);
      EXPECT_EQ(r.c_min, c_min);
      EXPECT_EQ(r.feasible_count, feasible);
      EXPECT_EQ(r.optimal_indices, best);
      EXPECT_EQ(r.feasible_count >= 1, r.satisfiability_cap == D + 1);
    }
  }
}

TEST(BruteForce, ResourceLimit) {
  Rng rng = make_rng(1);
  EXPECT_THROW(brute_force_solve(cmp::generate_instance(2, 4, rng), 12), ResourceLimit);
}

TEST(ApproximationRatio, Examples) {
  EXPECT_EQ(approximation_ratio(14.0, 30.0, 14.0), 1.0);
  EXPECT_EQ(approximation_ratio(30.0, 30.0, 14.0), 0.0);
  EXPECT_GT(approximation_ratio(10.0, 30.0, 14.0), 1.0);
  EXPECT_EQ(approximation_ratio(22.0, testing::worked_instance(), 14.0), 0.5);
  EXPECT_THROW(approximation_ratio(1.0, 5.0, 5.0), InvalidArgument);
}

TEST(SuccessOverlap, SumsOptimalProbabilities) {
  const auto basis = qsim::StateVector::basis(3, 6);
  const std::vector<std::uint64_t> hit{6}, miss{1, 2};
  EXPECT_EQ(success_overlap(basis, hit).rho, 1.0);
  EXPECT_TRUE(success_overlap(basis, hit).success);
  EXPECT_EQ(success_overlap(basis, miss).rho, 0.0);
  EXPECT_FALSE(success_overlap(basis, miss).success);

  // Uniform over 16 states: 1/16 each, so one optimum fails and two pass.
  const qsim::ParameterVector flat(qsim::Ansatz::product(), 4, std::vector<double>(4, std::numbers::pi / 4));
  const auto uniform = qsim::build_product_state(flat);
  const std::vector<std::uint64_t> one{3}, two{3, 9};
  EXPECT_FALSE(success_overlap(uniform, one).success);
  EXPECT_TRUE(success_overlap(uniform, two).success);
  EXPECT_NEAR(success_overlap(flat, two).rho, success_overlap(uniform, two).rho, 1e-15);
  EXPECT_THROW(success_overlap(basis, std::vector<std::uint64_t>{8}), InvalidArgument);
}

TEST(Gaps, Examples) {
  const auto g = gaps(0.9, 10.0, 0.8, 20.0);
  EXPECT_NEAR(g.p_gap, 0.1, 1e-15);
  ASSERT_TRUE(g.c_gap);
  EXPECT_EQ(*g.c_gap, 0.5);
  EXPECT_FALSE(gaps(1.0, 3.0, 1.0, 0.0).c_gap);
  EXPECT_LT(*gaps(0.5, 30.0, 0.5, 20.0).c_gap, 0.0);
}

TEST(NormalizeEnergyTrace, MapsOntoUnitInterval) {
  const std::vector<double> e{-16.0, -8.0, 0.0};
  EXPECT_EQ(normalize_energy_trace(e, 30.0, 14.0), (std::vector<double>{-1.0, -0.5, 0.0}));
  EXPECT_THROW(normalize_energy_trace(e, 3.0, 3.0), InvalidArgument);
}

struct Brute {
  double P = 0, E = 0, cost = 0, final_ok = 0, daily = 0, penalized = 0;
};

// Enumeration over basis probabilities with the reference cost model.
Brute enumerate(const cmp::Instance& inst, const std::vector<double>& prob) {
  const Reference ref{inst};
  const int norm = cmp::satisfaction_normalizer(inst);
  const double c_max = cmp::cost_upper_bound(inst);
  Brute b;
  for (std::uint64_t x = 0; x < prob.size(); ++x) {
    const auto m = ref.schedule(x);
    const int s = ref.satisfied(m);
    int daily = 0;
    for (int t = 0; t < inst.days; ++t) daily += ref.transactions(m, t) > inst.daily_transaction_limit;
    b.P += prob[x] * s / norm;
    if (s >= norm) b.E += prob[x] * (ref.cost(m) - c_max);
    b.cost += prob[x] * ref.cost(m);
    b.final_ok += prob[x] * ref.final_ok(m);
    b.daily += prob[x] * daily;
    b.penalized += prob[x] * cmp::penalized_cost(m, inst, {25, 7});
  }
  return b;
}

TEST(ExactStats, StatevectorMatchesEnumeration) {
  Rng rng = make_rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    cmp::Instance inst = cmp::generate_instance(2, 1 + trial % 3, rng);
    if (trial % 2) inst.satisfiability_cap = cmp::max_satisfiable(inst);
    const std::size_t n = inst.variable_count();
    std::vector<double> angles(2 * n);
    for (auto& a : angles) a = uniform_real(rng, 0, 2 * std::numbers::pi);
    const auto state = qsim::build_state(qsim::ParameterVector(qsim::Ansatz::layered(1), n, angles));
    std::vector<double> prob(state.dimension());
    for (std::uint64_t x = 0; x < prob.size(); ++x) prob[x] = state.probability(x);
    const Brute b = enumerate(inst, prob);
    const auto s = exact_stats(state, cmp::Evaluator(inst));
    EXPECT_NEAR(s.P, b.P, 1e-12);
    ASSERT_TRUE(s.E);
    EXPECT_NEAR(*s.E, b.E, 1e-12);
    EXPECT_NEAR(s.expected_cost, b.cost, 1e-12);
    EXPECT_NEAR(s.p_final_ok, b.final_ok, 1e-12);
    EXPECT_NEAR(s.expected_daily_violations, b.daily, 1e-12);
    EXPECT_NEAR(s.expected_penalized({25, 7}), b.penalized, 1e-11);
  }
}

TEST(ExactStats, ProductFormulaMatchesEnumeration) {
  Rng rng = make_rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    cmp::Instance inst = cmp::generate_instance(1 + trial % 3, 1 + (trial / 3) % 3, rng);
    if (trial % 3 == 0) inst.final_cash_limit = 1;
    if (trial % 2) inst.satisfiability_cap = cmp::max_satisfiable(inst);
    const std::size_t n = inst.variable_count();
    std::vector<double> angles(n);
    for (auto& a : angles) a = uniform_real(rng, 0, std::numbers::pi);
    const qsim::ParameterVector params(qsim::Ansatz::product(), n, angles);
    const auto state = qsim::build_product_state(params);
    std::vector<double> prob(state.dimension());
    for (std::uint64_t x = 0; x < prob.size(); ++x) prob[x] = state.probability(x);
    const Brute b = enumerate(inst, prob);
    const auto s = exact_product_stats(params, inst);
    EXPECT_NEAR(s.P, b.P, 1e-12) << trial;
    EXPECT_FALSE(s.E);
    EXPECT_NEAR(s.expected_cost, b.cost, 1e-12);
    EXPECT_NEAR(s.p_final_ok, b.final_ok, 1e-12);
    EXPECT_NEAR(s.expected_daily_violations, b.daily, 1e-12);
    const auto dispatched = exact_stats(params, inst);
    EXPECT_EQ(dispatched.P, s.P);
  }
}

TEST(ExactStats, ProductFormulaAgreesWithSamplingAtScale) {
  Rng rng = make_rng(23);
  const cmp::Instance inst = cmp::generate_instance(10, 7, rng);
  std::vector<double> angles(inst.variable_count());
  for (auto& a : angles) a = uniform_real(rng, 0, std::numbers::pi);
  const qsim::ParameterVector params(qsim::Ansatz::product(), angles.size(), angles);
  const auto exact = exact_product_stats(params, inst);
  constexpr std::size_t K = 20000;
  const auto batch = qsim::sample_product(params, K, rng);
  const cmp::Evaluator ev(inst);
  double sum = 0, sq = 0, sat = 0, sat_sq = 0;
  for (std::size_t k = 0; k < K; ++k) {
    const auto s = ev.score(batch.row(k));
    sum += s.cost;
    sq += s.cost * s.cost;
    const double f = ev.fraction(s);
    sat += f;
    sat_sq += f * f;
  }
  const double mean = sum / K, se = std::sqrt((sq / K - mean * mean) / K);
  const double pm = sat / K, pse = std::sqrt((sat_sq / K - pm * pm) / K);
  EXPECT_NEAR(exact.expected_cost, mean, 5 * se);
  EXPECT_NEAR(exact.P, pm, 5 * pse + 1e-12);
}

TEST(ExactStats, SizeMismatch) {
  const auto inst = testing::worked_instance();
  EXPECT_THROW(exact_stats(qsim::StateVector(4), cmp::Evaluator(inst)), InvalidArgument);
  EXPECT_THROW(exact_product_stats(qsim::ParameterVector(qsim::Ansatz::product(), 4, {0, 0, 0, 0}), inst),
               InvalidArgument);
}

}  // namespace
}  // namespace movco::metrics
