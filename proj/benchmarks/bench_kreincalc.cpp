// Copyright 2026 The kreincalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Timings for the main pipeline stages on corpus instances.

#include <benchmark/benchmark.h>

#include <random>

#include "kreincalc/calculus.hpp"
#include "kreincalc/corpus.hpp"
#include "kreincalc/groebner.hpp"
#include "kreincalc/variety.hpp"

namespace {

using namespace kreincalc;

// <(x-1)^d (x+2), y^d (y-3)^2>: quotient dimension 2 (d + 1) (d + 2).
std::vector<Poly2> ProductGenerators(int d) {
  return {Poly2::Parse("(x - 1)^" + std::to_string(d) + "*(x + 2)"),
          Poly2::Parse("y^" + std::to_string(d) + "*(y - 3)^2")};
}

KreinOperator Operator(const Problem& p) { return {std::make_shared<KreinSpace>(p.gram), p.op}; }

void BM_Groebner(benchmark::State& state) {
  // A shear of the coordinates mixes the variables so Buchberger has work to do.
  std::vector<Poly2> gens;
  for (const auto& g : ProductGenerators(static_cast<int>(state.range(0)))) {
    gens.push_back(g.Compose(Poly2::Parse("x + y"), Poly2::Parse("y")));
  }
  for (auto _ : state) benchmark::DoNotOptimize(Groebner(gens, true));
}
BENCHMARK(BM_Groebner)->DenseRange(1, 4);

void BM_SolveVariety(benchmark::State& state) {
  const IdealData ideal = Groebner(ProductGenerators(static_cast<int>(state.range(0))), false);
  for (auto _ : state) benchmark::DoNotOptimize(SolveVariety(ideal));
}
BENCHMARK(BM_SolveVariety)->DenseRange(1, 4);

void BM_BuildEmbedding(benchmark::State& state) {
  const Problem p = GenerateProblem("random", 3, static_cast<int>(state.range(0)));
  const KreinOperator n = Operator(p);
  for (auto _ : state) benchmark::DoNotOptimize(BuildEmbedding(n, p.definitizing, {}));
}
BENCHMARK(BM_BuildEmbedding)->Arg(6)->Arg(8)->Arg(16)->Arg(32);

void BM_MakeContext(benchmark::State& state) {
  const Problem p = GenerateProblem("random", 3, static_cast<int>(state.range(0)));
  const KreinOperator n = Operator(p);
  for (auto _ : state) benchmark::DoNotOptimize(MakeContext(n, p.definitizing, {}));
}
BENCHMARK(BM_MakeContext)->Arg(6)->Arg(8)->Arg(16);

void BM_PhiOfN(benchmark::State& state) {
  const Problem p = GenerateProblem("random", 3, static_cast<int>(state.range(0)));
  const ContextPtr ctx = MakeContext(Operator(p), p.definitizing, {});
  std::mt19937_64 rng(1);
  const CalcFunction phi = RandomFunction(ctx, rng);
  for (auto _ : state) benchmark::DoNotOptimize(PhiOfN(phi));
}
BENCHMARK(BM_PhiOfN)->Arg(6)->Arg(8)->Arg(16);

void BM_HomomorphismPairs(benchmark::State& state) {
  const Problem p = GenerateProblem("random", 3, 8);
  const ContextPtr ctx = MakeContext(Operator(p), p.definitizing, {});
  for (auto _ : state) benchmark::DoNotOptimize(HomomorphismCheck(ctx, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_HomomorphismPairs)->Arg(10)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
