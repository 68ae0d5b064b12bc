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

#include <vector>

#include <benchmark/benchmark.h>

#include "movco/cmp.hpp"
#include "movco/engine.hpp"
#include "movco/metrics.hpp"
#include "movco/nsga2.hpp"
#include "movco/qsim.hpp"

namespace {

using namespace movco;

void BM_BuildLayeredState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = make_rng(1);
  const auto params = qsim::init_params(n, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qsim::build_state(params));
  state.SetComplexityN(std::int64_t{1} << n);
}
BENCHMARK(BM_BuildLayeredState)->DenseRange(8, 20, 4)->Unit(benchmark::kMicrosecond);

void BM_SampleState(benchmark::State& state) {
  Rng rng = make_rng(2);
  const auto sv = qsim::build_state(qsim::init_params(16, 1, rng));
  for (auto _ : state) benchmark::DoNotOptimize(qsim::sample_state(sv, 8192, rng));
}
BENCHMARK(BM_SampleState)->Unit(benchmark::kMicrosecond);

void BM_SampleProduct(benchmark::State& state) {
  Rng rng = make_rng(3);
  const auto params = qsim::init_product_params(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(qsim::sample_product(params, 8192, rng));
}
BENCHMARK(BM_SampleProduct)->Arg(16)->Arg(140)->Unit(benchmark::kMicrosecond);

void BM_Fitness(benchmark::State& state) {
  Rng rng = make_rng(4);
  const auto inst = cmp::generate_instance(2, 4, rng);
  const cmp::Evaluator ev(inst);
  const auto params = qsim::init_params(16, 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(engine::fitness(params, ev, 8192, rng));
}
BENCHMARK(BM_Fitness)->Unit(benchmark::kMillisecond);

void BM_NondominatedSort(benchmark::State& state) {
  Rng rng = make_rng(5);
  std::vector<nsga2::Objectives> points(static_cast<std::size_t>(state.range(0)));
  for (auto& p : points) p = {uniform01(rng), uniform01(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(nsga2::nondominated_sort(points));
}
BENCHMARK(BM_NondominatedSort)->Arg(20)->Arg(200)->Arg(2000);

void BM_BruteForce(benchmark::State& state) {
  Rng rng = make_rng(6);
  const auto inst = cmp::generate_instance(2, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::brute_force_solve(inst));
}
BENCHMARK(BM_BruteForce)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
