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
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "movco/error.hpp"
#include "movco/nsga2.hpp"

namespace movco::nsga2 {
namespace {

using Fronts = std::vector<std::vector<std::size_t>>;

Fronts sort(std::vector<Objectives> pts) { return nondominated_sort(pts); }

TEST(NondominatedSort, Examples) {
  EXPECT_EQ(sort({{1, 1}, {2, 2}}), (Fronts{{0}, {1}}));
  EXPECT_EQ(sort({{1, 3}, {3, 1}}), (Fronts{{0, 1}}));
  EXPECT_EQ(sort({{0, 0}, {1, 1}, {0, 2}, {2, 0}}), (Fronts{{0}, {1, 2, 3}}));
  EXPECT_TRUE(sort({}).empty());
  EXPECT_EQ(sort({{1, 1}, {1, 1}}), (Fronts{{0, 1}}));  // duplicates never dominate
  EXPECT_THROW(sort({{1, 1}, {1}}), InvalidArgument);
}

TEST(NondominatedSort, FrontsArePartitionWithoutInternalDominance) {
  Rng rng = make_rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Objectives> pts(1 + uniform_index(rng, 40), Objectives(3));
    for (auto& p : pts)
      for (auto& v : p) v = uniform_int(rng, 0, 4);
    const auto fronts = nondominated_sort(pts);
    std::vector<int> seen(pts.size());
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      EXPECT_TRUE(std::is_sorted(fronts[f].begin(), fronts[f].end()));
      for (std::size_t i : fronts[f]) {
        ++seen[i];
        for (std::size_t j : fronts[f]) EXPECT_FALSE(dominates(pts[j], pts[i]));
        if (f > 0) {
          // Something in the previous front dominates it.
          EXPECT_TRUE(std::any_of(fronts[f - 1].begin(), fronts[f - 1].end(),
                                  [&](std::size_t j) { return dominates(pts[j], pts[i]); }));
        }
      }
    }
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}

TEST(CrowdingDistance, Examples) {
  const auto two = crowding_distance(std::vector<Objectives>{{0, 2}, {2, 0}});
  EXPECT_TRUE(std::isinf(two[0]) && std::isinf(two[1]));
  const auto three = crowding_distance(std::vector<Objectives>{{0, 2}, {1, 1}, {2, 0}});
  EXPECT_EQ(three[1], 2.0);
  EXPECT_TRUE(std::isinf(three[0]) && std::isinf(three[2]));
  EXPECT_EQ(three[0], kInfiniteCrowding);
}

TEST(CrowdingDistance, EvenlySpacedLine) {
  // Points (i, r-1-i): every interior neighbour gap is 2/(r-1) per objective.
  for (std::size_t r = 3; r < 12; ++r) {
    std::vector<Objectives> front;
    for (std::size_t i = 0; i < r; ++i) front.push_back({double(i), double(r - 1 - i)});
    std::reverse(front.begin(), front.end());
    const auto d = crowding_distance(front);
    for (std::size_t i = 1; i + 1 < r; ++i) EXPECT_NEAR(d[i], 4.0 / double(r - 1), 1e-14);
  }
}

TEST(CrowdingDistance, ZeroSpanObjectiveContributesNothing) {
  const auto d = crowding_distance(std::vector<Objectives>{{0, 5}, {1, 5}, {3, 5}, {4, 5}});
  EXPECT_NEAR(d[1], 3.0 / 4.0, 1e-15);
  EXPECT_NEAR(d[2], 3.0 / 4.0, 1e-15);
}

Individual with(int rank, double crowding) {
  Individual ind;
  ind.rank = rank;
  ind.crowding = crowding;
  return ind;
}

TEST(Tournament, Rules) {
  Rng rng = make_rng(9);
  const Population ranks{with(1, 0.0), with(2, 9.0)};
  const Population crowd{with(1, kInfiniteCrowding), with(1, 0.5)};
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(tournament_select(ranks, rng), 0u);
    EXPECT_EQ(tournament_select(crowd, rng), 0u);
  }
  const Population single{with(1, 0.0)};
  EXPECT_EQ(tournament_select(single, rng), 0u);
}

TEST(Tournament, FairCoinOnTies) {
  Rng rng = make_rng(10);
  const Population tied{with(1, 1.0), with(1, 1.0)};
  int first = 0;
  constexpr int n = 10000;
  for (int i = 0; i < n; ++i) first += tournament_select(tied, rng) == 0;
  EXPECT_NEAR(first, n / 2.0, 4 * std::sqrt(n * 0.25));
}

TEST(Sbx, Identities) {
  EXPECT_EQ(sbx_spread(0.5, 15.0), 1.0);
  const auto [a, b] = sbx_children(0.3, 1.7, 1.0);
  EXPECT_EQ(a, 0.3);
  EXPECT_EQ(b, 1.7);
  Rng rng = make_rng(2);
  const std::vector<Bounds> bounds{{0.0, 2.0}};
  for (int i = 0; i < 100; ++i) {
    const Genome p{0.4, 1.1, 1.9};
    const auto [c1, c2] = sbx_crossover(p, p, 15.0, 1.0, bounds, rng);
    EXPECT_EQ(c1, p);
    EXPECT_EQ(c2, p);
  }
}

TEST(Sbx, MeanPreservedBeforeClamping) {
  Rng rng = make_rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double p1 = uniform_real(rng, -5, 5), p2 = uniform_real(rng, -5, 5);
    const auto [c1, c2] = sbx_children(p1, p2, sbx_spread(uniform01(rng), 15.0));
    ASSERT_NEAR(c1 + c2, p1 + p2, 1e-12);
  }
}

TEST(Sbx, ChildrenWithinBounds) {
  Rng rng = make_rng(4);
  const std::vector<Bounds> bounds{{0.0, 1.0}};
  for (int i = 0; i < 1000; ++i) {
    const Genome p1{uniform01(rng), uniform01(rng)}, p2{uniform01(rng), uniform01(rng)};
    const auto [c1, c2] = sbx_crossover(p1, p2, 15.0, 0.9, bounds, rng);
    for (double v : c1) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
    for (double v : c2) EXPECT_TRUE(v >= 0.0 && v <= 1.0);
  }
}

TEST(PolynomialMutation, ZeroProbabilityAndMedianDraw) {
  Rng rng = make_rng(5);
  const std::vector<Bounds> bounds{{0.0, 1.0}};
  const Genome g{0.1, 0.5, 0.9};
  EXPECT_EQ(polynomial_mutation(g, 20.0, 0.0, bounds, rng), g);
  EXPECT_EQ(polynomial_perturb(0.37, 0.5, 20.0, bounds[0]), 0.37);
}

TEST(PolynomialMutation, SymmetricAtMidRange) {
  Rng rng = make_rng(6);
  const std::vector<Bounds> bounds{{0.0, 1.0}};
  constexpr int n = 10000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double v = polynomial_mutation({0.5}, 20.0, 1.0, bounds, rng)[0];
    ASSERT_TRUE(v >= 0.0 && v <= 1.0);
    sum += v - 0.5;
    sq += (v - 0.5) * (v - 0.5);
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  EXPECT_LE(std::abs(mean), 4 * sd / std::sqrt(double(n)));
  EXPECT_GT(sd, 0.0);
}

TEST(SelectSurvivors, WholeFrontsThenCrowding) {
  Population merged(6);
  const std::vector<Objectives> objs{{0, 4}, {4, 0}, {2, 2}, {1, 3.5}, {5, 5}, {6, 6}};
  for (std::size_t i = 0; i < merged.size(); ++i) {
    merged[i].objectives = objs[i];
    merged[i].genome = {double(i)};
  }
  const auto kept = select_survivors(merged, 3);
  ASSERT_EQ(kept.size(), 3u);
  // Front 1 is {0,1,2,3}; the extremes are infinite, then (2,2) beats (1,3.5).
  std::vector<double> ids;
  for (const auto& k : kept) {
    ids.push_back(k.genome[0]);
    EXPECT_EQ(k.rank, 1);
  }
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(ids, (std::vector<double>{0, 1, 2}));
}

Evaluation sphere(const Genome& g, const EvaluationContext&) {
  double s = 0;
  for (double v : g) s += v * v;
  return {{s}, {}};
}

GaConfig small_config() {
  GaConfig c;
  c.population_size = 10;
  c.offspring_size = 10;
  c.generations = 50;
  c.bounds = {{-2.0, 2.0}};
  return c;
}

std::vector<Genome> start(std::size_t n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<Genome> g(n, Genome(4));
  for (auto& x : g)
    for (auto& v : x) v = uniform_real(rng, -2, 2);
  return g;
}

TEST(Evolve, ConstantEvaluator) {
  GaConfig c = small_config();
  c.generations = 20;
  const auto r = evolve(start(10, 1), [](const Genome&, const EvaluationContext&) {
    return Evaluation{{3.0, 4.0}, {}};
  }, c, 5);
  ASSERT_EQ(r.history.size(), 21u);
  for (const auto& s : r.history) {
    ASSERT_EQ(s.objectives.size(), 10u);
    for (const auto& o : s.objectives) EXPECT_EQ(o, (Objectives{3.0, 4.0}));
  }
  EXPECT_EQ(r.evaluations, 10u + 20u * 10u);
}

TEST(Evolve, SphereConverges) {
  const auto r = evolve(start(10, 2), sphere, small_config(), 6);
  double prev = INFINITY;
  for (const auto& s : r.history) {
    double best = INFINITY;
    for (const auto& o : s.objectives) best = std::min(best, o[0]);
    EXPECT_LE(best, prev);
    prev = best;
  }
  double initial = INFINITY;
  for (const auto& o : r.history.front().objectives) initial = std::min(initial, o[0]);
  EXPECT_LT(prev, initial);
}

TEST(Evolve, DeterministicAcrossThreadCounts) {
  GaConfig c = small_config();
  const auto noisy = [](const Genome& g, const EvaluationContext& ctx) {
    Rng rng = make_rng(ctx.seed);
    return Evaluation{{g[0] + uniform01(rng), g[1] - g[2]}, {double(ctx.index)}};
  };
  const auto a = evolve(start(10, 3), noisy, c, 77);
  c.threads = 3;
  const auto b = evolve(start(10, 3), noisy, c, 77);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) EXPECT_EQ(a.history[i].objectives, b.history[i].objectives);
  for (std::size_t i = 0; i < a.population.size(); ++i) EXPECT_EQ(a.population[i].genome, b.population[i].genome);
}

TEST(Evolve, ContextSeedsFollowTheCounterScheme) {
  GaConfig c = small_config();
  c.generations = 2;
  bool ok = true;
  evolve(start(10, 4), [&](const Genome& g, const EvaluationContext& ctx) {
    ok = ok && ctx.seed == derive_seed(31, Stream::kEvaluation, ctx.generation, ctx.index);
    return sphere(g, ctx);
  }, c, 31);
  EXPECT_TRUE(ok);
}

TEST(Evolve, Errors) {
  const GaConfig c = small_config();
  EXPECT_THROW(evolve(start(9, 1), sphere, c, 1), InvalidArgument);
  GaConfig no_bounds = c;
  no_bounds.bounds.clear();
  EXPECT_THROW(evolve(start(10, 1), sphere, no_bounds, 1), InvalidArgument);
  GaConfig bad = c;
  bad.crossover_prob = 1.5;
  EXPECT_THROW(validate(bad), InvalidArgument);
  EXPECT_THROW(evolve(start(10, 1), [](const Genome&, const EvaluationContext&) -> Evaluation {
    throw std::runtime_error("boom");
  }, c, 1), EvaluationError);
  EXPECT_THROW(evolve(start(10, 1), [](const Genome&, const EvaluationContext&) {
    return Evaluation{{NAN}, {}};
  }, c, 1), EvaluationError);
}

}  // namespace
}  // namespace movco::nsga2
