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

#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "orthofact/datagen.hpp"
#include "orthofact/solver_pg.hpp"

using namespace orthofact;

namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

// F(x) = 1/2 (x-2)^2 on 1x1 matrices; the closed-form minimizer is 2.
BlockObjective shifted_quadratic() {
  BlockObjective f;
  f.value = [](const Matrix& x) {
    const double d = x(0, 0) - 2.0;
    return 0.5 * d * d;
  };
  f.gradient = [](const Matrix& x) { return scalar(x(0, 0) - 2.0); };
  return f;
}

}  // namespace

TEST_SUITE("pg") {

TEST_CASE("project_nonneg clamps negatives and keeps everything else") {
  Matrix m(1, 2);
  m << -1.0, 2.0;
  const Matrix p = project_nonneg(m);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(0, 1) == 2.0);

  const Matrix q = oracles::random_matrix(3, 3, 1);
  CHECK(bitwise_equal(project_nonneg(q), q));

  CHECK(project_nonneg(scalar(-1e-300))(0, 0) == 0.0);
}

TEST_CASE("projected gradient covers the full sign/zero grid") {
  // x in {0, 1} times grad in {-1, 0, 1}
  for (const double x : {0.0, 1.0}) {
    for (const double g : {-1.0, 0.0, 1.0}) {
      const double out = projected_gradient(scalar(x), scalar(g))(0, 0);
      const double expected = x > 0.0 ? g : std::min(0.0, g);
      CHECK(out == expected);
    }
  }
}

TEST_CASE("subsolver returns immediately at a stationary start") {
  const SubsolveResult res =
      armijo_pg_subsolve(shifted_quadratic(), scalar(2.0), PGConfig{}, 1e-12);
  CHECK(res.iters == 0);
  CHECK_FALSE(res.stalled);
  CHECK(res.x(0, 0) == 2.0);
}

TEST_CASE("subsolver minimizes the shifted quadratic from zero") {
  PGConfig cfg;
  cfg.max_inner_iters = 100;
  std::vector<ArmijoStepEvent> steps;
  cfg.step_observer = [&](const ArmijoStepEvent& e) { steps.push_back(e); };

  const SubsolveResult res =
      armijo_pg_subsolve(shifted_quadratic(), scalar(0.0), cfg, 1e-12);
  CHECK(res.x(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(res.stalled);
  REQUIRE(!steps.empty());
  for (const auto& s : steps) CHECK(s.f_after - s.f_before <= s.armijo_rhs + 1e-12);
}

TEST_CASE("zero gradient satisfies the Armijo rule as an equality") {
  BlockObjective flat;
  flat.value = [](const Matrix&) { return 42.0; };
  flat.gradient = [](const Matrix& x) { return Matrix(Matrix::Zero(x.rows(), x.cols())); };
  PGConfig cfg;
  cfg.max_inner_iters = 3;
  // Negative tolerance forces the loop to exercise the lambda search.
  const SubsolveResult res = armijo_pg_subsolve(flat, scalar(1.5), cfg, -1.0);
  CHECK(res.iters == 3);
  CHECK_FALSE(res.stalled);
  CHECK(res.x(0, 0) == 1.5);
}

TEST_CASE("sub-problem objectives match the penalized objective up to constants") {
  const Matrix R = oracles::random_matrix(6, 5, 61);
  const Matrix G = oracles::random_matrix(6, 3, 62);
  const Matrix H = oracles::random_matrix(3, 5, 63);
  const double alpha = 2.0, beta = 7.0;

  const BlockObjective fg = g_subproblem(R, H, beta);
  const BlockObjective fh = h_subproblem(R, G, alpha);

  // F(G,H) = F_H(G) + alpha-term = F_G(H) + beta-term.
  const Matrix Ip = Matrix::Identity(3, 3);
  const double alpha_term =
      0.5 * alpha * (Matrix(H * H.transpose()) - Ip).array().square().sum();
  const double beta_term =
      0.5 * beta * (Matrix(G.transpose() * G) - Ip).array().square().sum();
  const double full = penalized_objective(R, G, H, alpha, beta);
  CHECK(fg.value(G) + alpha_term == doctest::Approx(full).epsilon(1e-12));
  CHECK(fh.value(H) + beta_term == doctest::Approx(full).epsilon(1e-12));

  // Gradients agree with the shared model gradients.
  CHECK((fg.gradient(G) - grad_G(R, G, H, beta)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((fh.gradient(H) - grad_H(R, G, H, alpha)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("with zero penalties the method solves a rank-2 NMF exactly") {
  const Matrix A = oracles::random_matrix(4, 2, 71);
  const Matrix B = oracles::random_matrix(2, 4, 72);
  const NonNegMatrix R(Matrix(A * B));
  const ProblemSpec spec(R, 2, OrthoMode::UniOrthogonal, 0.0, 0.0);

  PGConfig cfg;
  cfg.max_outer_iters = 500;
  cfg.time_limit = 60.0;
  const FactorPair init{NonNegMatrix(oracles::random_matrix(4, 2, 73)),
                        NonNegMatrix(oracles::random_matrix(2, 4, 74))};
  const SolveReport rep = solve_pg(spec, cfg, init);
  CHECK(rep.final_rse() < 1e-6);
}

TEST_CASE("global stopping test fires at an exact bi-orthonormal optimum") {
  const InstanceTriple t = generate_instance(20, 4, InstanceKind::BION, 1, 51);
  const ProblemSpec spec(t.R, 4, OrthoMode::BiOrthogonal, 1.0, 1.0);
  const SolveReport rep =
      solve_pg(spec, pg_defaults_for(OrthoMode::BiOrthogonal),
               FactorPair{t.G_true, t.H_true});
  CHECK(rep.iterations == 0);
  CHECK(rep.termination == Termination::Tolerance);
  CHECK(rep.rse_trace.size() == 1);
}

TEST_CASE("outer iterations never increase the penalized objective") {
  const InstanceTriple t = generate_instance(24, 6, InstanceKind::BION, 1, 52);
  const ProblemSpec spec(t.R, 4, OrthoMode::BiOrthogonal, 10.0, 10.0);
  PGConfig cfg = pg_defaults_for(OrthoMode::BiOrthogonal);
  cfg.max_outer_iters = 40;
  std::vector<ArmijoStepEvent> steps;
  cfg.step_observer = [&](const ArmijoStepEvent& e) { steps.push_back(e); };

  const FactorPair init{NonNegMatrix(oracles::random_matrix(24, 4, 53)),
                        NonNegMatrix(oracles::random_matrix(4, 24, 54))};
  const SolveReport rep = solve_pg(spec, cfg, init);

  for (std::size_t i = 1; i < rep.objective_trace.size(); ++i)
    CHECK(rep.objective_trace[i] <= rep.objective_trace[i - 1] + 1e-12);
  REQUIRE(!steps.empty());
  for (const auto& s : steps) {
    CHECK(s.f_after - s.f_before <= s.armijo_rhs + 1e-12);
    CHECK(s.armijo_rhs <= 1e-12);  // projected descent steps
  }
  CHECK(rep.G.mat().minCoeff() >= 0.0);
  CHECK(rep.H.mat().minCoeff() >= 0.0);
  CHECK(rep.rse_trace.size() == static_cast<std::size_t>(rep.iterations) + 1);
}

TEST_CASE("solve is deterministic for identical inputs") {
  const InstanceTriple t = generate_instance(16, 4, InstanceKind::UNION, 1, 55);
  const ProblemSpec spec(t.R, 4, OrthoMode::UniOrthogonal, 0.0, 10.0);
  PGConfig cfg;
  cfg.max_outer_iters = 30;
  const FactorPair init{NonNegMatrix(oracles::random_matrix(16, 4, 7)),
                        NonNegMatrix(oracles::random_matrix(4, 16, 8))};
  const SolveReport a = solve_pg(spec, cfg, init);
  const SolveReport b = solve_pg(spec, cfg, init);
  CHECK(bitwise_equal(a.G.mat(), b.G.mat()));
  CHECK(a.objective_trace == b.objective_trace);
}

TEST_CASE("default parameters and dataset presets are pinned") {
  const PGConfig uni = pg_defaults_for(OrthoMode::UniOrthogonal);
  CHECK(uni.sigma == 0.001);
  CHECK(uni.gamma == 0.1);
  CHECK(uni.tau == 0.1);
  CHECK(uni.epsilon == 1e-10);
  CHECK(uni.max_outer_iters == 1000);
  CHECK(uni.max_inner_iters == 20);
  const PGConfig bi = pg_defaults_for(OrthoMode::BiOrthogonal);
  CHECK(bi.sigma == 0.001);
  CHECK(bi.gamma == 0.75);
  CHECK(bi.tau == 0.5);
}

TEST_CASE("config validation rejects out-of-range parameters") {
  const InstanceTriple t = generate_instance(8, 2, InstanceKind::UNION, 1, 56);
  const ProblemSpec spec(t.R, 2, OrthoMode::UniOrthogonal, 0.0, 1.0);
  const FactorPair init{NonNegMatrix(oracles::random_matrix(8, 2, 9)),
                        NonNegMatrix(oracles::random_matrix(2, 8, 10))};
  PGConfig cfg;
  cfg.sigma = 1.5;
  CHECK_THROWS_AS(solve_pg(spec, cfg, init), ConfigError);
}

}  // TEST_SUITE
