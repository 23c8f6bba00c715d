// Copyright 2026 The orthofact authors.
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

#include "orthofact/datagen.hpp"
#include "orthofact/harness.hpp"
#include "orthofact/solver_ding.hpp"
#include "orthofact/solver_mirzal.hpp"
#include "orthofact/solver_pg.hpp"

using namespace orthofact;

namespace {

struct Fixture {
  InstanceTriple inst;
  Matrix R, G, H;

  explicit Fixture(int n, InstanceKind kind = InstanceKind::BION)
      : inst(generate_instance(n, n / 5, kind, 1, 42)),
        R(inst.R.mat()),
        G(random_uniform_matrix(n, n / 5, 1)),
        H(random_uniform_matrix(n / 5, n, 2)) {}
};

}  // namespace

static void BM_PenalizedObjective(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(penalized_objective(fx.R, fx.G, fx.H, 1.0, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PenalizedObjective)->Arg(50)->Arg(100)->Arg(200)->Complexity();

static void BM_GradientPair(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grad_G(fx.R, fx.G, fx.H, 1.0));
    benchmark::DoNotOptimize(grad_H(fx.R, fx.G, fx.H, 1.0));
  }
}
BENCHMARK(BM_GradientPair)->Arg(50)->Arg(100)->Arg(200);

static void BM_DingStepBi(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  Matrix G = fx.G, H = fx.H;
  for (auto _ : state) {
    std::tie(G, H) = ding_step_bi(fx.R, G, H, 1e-9);
    benchmark::DoNotOptimize(G);
  }
}
BENCHMARK(BM_DingStepBi)->Arg(50)->Arg(100)->Arg(200);

static void BM_MirzalUpdateG(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mirzal_update_G(fx.R, fx.G, fx.H, 10.0, 1e-8, 1e-9, 10.0, 64));
  }
}
BENCHMARK(BM_MirzalUpdateG)->Arg(50)->Arg(100)->Arg(200);

static void BM_ArmijoSubsolveG(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  PGConfig cfg = pg_defaults_for(OrthoMode::BiOrthogonal);
  cfg.max_inner_iters = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        armijo_pg_subsolve(g_subproblem(fx.R, fx.H, 10.0), fx.G, cfg, 1e-12));
  }
}
BENCHMARK(BM_ArmijoSubsolveG)->Arg(50)->Arg(100)->Arg(200);

static void BM_SolvePgOuter(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  const ProblemSpec spec(fx.inst.R, fx.inst.k, OrthoMode::BiOrthogonal, 1.0, 1.0);
  PGConfig cfg = pg_defaults_for(OrthoMode::BiOrthogonal);
  cfg.max_outer_iters = 5;
  const FactorPair init{NonNegMatrix(fx.G), NonNegMatrix(fx.H)};
  for (auto _ : state) benchmark::DoNotOptimize(solve_pg(spec, cfg, init));
}
BENCHMARK(BM_SolvePgOuter)->Arg(50)->Arg(100);

BENCHMARK_MAIN();
