// Copyright 2026 The hrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hrb/exactmath.hpp"
#include "hrb/matrices.hpp"
#include "hrb/verify.hpp"
#include "hrb/weights.hpp"

namespace {

using namespace hrb;

void BM_RCoeffTable(benchmark::State& state) {
  const long k_max = state.range(0);
  for (auto _ : state) {
    auto t = r_coeff_table(3, k_max);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_RCoeffTable)->Arg(8)->Arg(32)->Arg(64);

void BM_RhoEval(benchmark::State& state) {
  const Precision p{state.range(0)};
  auto spec = WeightSpec::canonical(2);
  long n = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho_eval(spec, n, p));
    if (++n > 1000) n = 2;
  }
}
BENCHMARK(BM_RhoEval)->Arg(128)->Arg(512);

void BM_IdentityCheck(benchmark::State& state) {
  const long ell = state.range(0);
  const Precision p{128};
  auto g = g_param(WeightSpec::canonical(ell), widened(p, difference_guard_bits(ell, 200)));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Real> v;
  for (int i = 0; i < 64; ++i) v.push_back(Real::from_double(d(rng), g.precision()));
  FinSuppSeq u(ell, std::move(v), g.precision());
  for (auto _ : state) benchmark::DoNotOptimize(identity_check(g, u, ell));
}
BENCHMARK(BM_IdentityCheck)->DenseRange(1, 4);

void BM_FactorizationCheck(benchmark::State& state) {
  const long ell = state.range(0);
  auto g = family_sequence(WeightSpec::canonical(ell));
  for (auto _ : state) benchmark::DoNotOptimize(factorization_check(g, ell, 64, Precision{128}));
}
BENCHMARK(BM_FactorizationCheck)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CriticalityProbe(benchmark::State& state) {
  const long N = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(criticality_probe(2, {N}));
}
BENCHMARK(BM_CriticalityProbe)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
