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

#include "cbnorm/linalg.hpp"

namespace {

using namespace cbnorm;

void BM_Svd(benchmark::State& state) {
  const auto n = state.range(0);
  Rng rng = make_rng(1);
  const CMatrix x = gaussian_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(svd(x));
}
BENCHMARK(BM_Svd)->Arg(4)->Arg(9)->Arg(16)->Arg(36);

void BM_PolarFactor(benchmark::State& state) {
  const auto n = state.range(0);
  Rng rng = make_rng(2);
  const CMatrix x = gaussian_matrix(n * n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(polar_factor(x));
}
BENCHMARK(BM_PolarFactor)->Arg(3)->Arg(5)->Arg(8);

void BM_Kron(benchmark::State& state) {
  const auto n = state.range(0);
  Rng rng = make_rng(3);
  const CMatrix a = gaussian_matrix(n, n, rng);
  const CMatrix b = gaussian_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(2)->Arg(4)->Arg(8);

void BM_HaarUnitary(benchmark::State& state) {
  Rng rng = make_rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(state.range(0), rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(3)->Arg(9);

}  // namespace
