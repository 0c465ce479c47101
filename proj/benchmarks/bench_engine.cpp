/* Copyright 2026 The cbnorm Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <benchmark/benchmark.h>

#include "cbnorm/constructions.hpp"
#include "cbnorm/norms.hpp"
#include "cbnorm/search.hpp"

namespace {

using namespace cbnorm;

void BM_NormReportClifford(benchmark::State& state) {
  const RightModuleMap t = thm_eg_map(static_cast<int>(state.range(0))).map;
  EngineOptions o;
  o.restarts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(norm_report(t, o));
}
BENCHMARK(BM_NormReportClifford)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_NormReportP34(benchmark::State& state) {
  const RightModuleMap t = p34_example().map;
  EngineOptions o;
  o.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(norm_report(t, o));
}
BENCHMARK(BM_NormReportP34)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Ascend(benchmark::State& state) {
  const RightModuleMap t = p34_example().map;
  Rng rng = make_rng(5);
  const CMatrix x = gaussian_matrix(9, 4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ascend(t, 3, x, 500, 1e-12));
}
BENCHMARK(BM_Ascend)->Unit(benchmark::kMicrosecond);

void BM_SearchPerm33(benchmark::State& state) {
  SearchOptions o;
  o.engine.restarts = 8;
  for (auto _ : state) benchmark::DoNotOptimize(search_perm(3, 3, o));
}
BENCHMARK(BM_SearchPerm33)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
