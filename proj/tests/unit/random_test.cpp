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

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "movco/parallel.hpp"
#include "movco/random.hpp"

namespace movco {
namespace {

TEST(DeriveSeed, PureAndDistinct) {
  EXPECT_EQ(derive_seed(1, Stream::kEvaluation, 3, 4), derive_seed(1, Stream::kEvaluation, 3, 4));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 30; ++a) {
    for (std::uint64_t b = 0; b < 30; ++b) {
      seen.insert(derive_seed(7, Stream::kEvaluation, a, b));
    }
  }
  EXPECT_EQ(seen.size(), 900u);
  EXPECT_NE(derive_seed(7, Stream::kInit, 1), derive_seed(7, Stream::kRun, 1));
  EXPECT_NE(derive_seed(7, Stream::kEvaluation, 1, 2), derive_seed(7, Stream::kEvaluation, 2, 1));
}

TEST(Uniform, Ranges) {
  Rng rng = make_rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double r = uniform_real(rng, -2.0, 3.0);
    EXPECT_GE(r, -2.0);
    EXPECT_LT(r, 3.0);
    const int k = uniform_int(rng, -2, 5);
    EXPECT_GE(k, -2);
    EXPECT_LE(k, 5);
  }
}

TEST(Uniform, IndexIsUnbiased) {
  Rng rng = make_rng(2);
  constexpr int n = 7, draws = 70000;
  std::vector<int> counts(n);
  for (int i = 0; i < draws; ++i) ++counts[uniform_index(rng, n)];
  const double expect = draws / static_cast<double>(n);
  const double sigma = std::sqrt(draws * (1.0 / n) * (1.0 - 1.0 / n));
  for (int c : counts) EXPECT_NEAR(c, expect, 4 * sigma);
}

TEST(Uniform, IntCoversEndpoints) {
  Rng rng = make_rng(3);
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) seen.insert(uniform_int(rng, 1, 4));
  EXPECT_EQ(seen, (std::set<int>{1, 2, 3, 4}));
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (std::size_t threads : {1u, 2u, 5u}) {
    std::vector<int> hits(37);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

}  // namespace
}  // namespace movco
