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

#pragma once

#include <functional>

#include "orthofact/model.hpp"
#include "orthofact/report.hpp"

namespace orthofact {

// Entry-wise projection onto the non-negative orthant: max(x, 0).
Matrix project_nonneg(const Matrix& x);

// Projected gradient at a non-negative point:
//   grad_i            where x_i > 0,
//   min(0, grad_i)    where x_i = 0.
Matrix projected_gradient(const Matrix& x, const Matrix& grad);

// Telemetry for one accepted Armijo step inside the sub-problem solver.
struct ArmijoStepEvent {
  double f_before = 0.0;
  double f_after = 0.0;
  double armijo_rhs = 0.0;  // sigma * <grad, x_new - x_old>
  double lambda = 0.0;
};

struct PGConfig {
  double sigma = 0.001;        // Armijo sufficient-decrease parameter
  double gamma = 0.1;          // step-size update factor (< 1)
  double tau = 0.1;            // sub-problem tolerance shrink factor (< 1)
  double epsilon = 1e-10;      // global tolerance
  long max_outer_iters = 1000;
  long max_inner_iters = 20;
  double time_limit = 60.0;    // seconds
  int max_lambda_trials = 50;  // trial cap per inner iteration
  double lambda_min = 1e-20;
  double lambda_max = 1e20;
  std::function<void(const ArmijoStepEvent&)> step_observer;
};

// Defaults used by the benchmark harness per dataset: UNION uses
// gamma = 0.1, tau = 0.1; BION uses gamma = 0.75, tau = 0.5.
PGConfig pg_defaults_for(OrthoMode mode);

// A block sub-problem objective with its gradient.
struct BlockObjective {
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> gradient;
};

struct SubsolveResult {
  Matrix x;
  long iters = 0;          // accepted projected-gradient steps
  double last_lambda = 1.0;
  bool stalled = false;    // step-size search gave up without an Armijo step
};

// Sub-problem of the block coordinate descent with H fixed:
//   F(G) = 1/2 ||R - GH||_F^2 + beta/2 ||G^T G - I||_F^2.
BlockObjective g_subproblem(const Matrix& R, const Matrix& H, double beta);

// Sub-problem with G fixed:
//   F(H) = 1/2 ||R - GH||_F^2 + alpha/2 ||H H^T - I||_F^2.
BlockObjective h_subproblem(const Matrix& R, const Matrix& G, double alpha);

// Projected gradient descent with Armijo step-size search on one block.
// Each iteration finds lambda such that x_l = project_nonneg(x - lambda*grad)
// satisfies F(x_l) - F(x) <= sigma * <grad, x_l - x>: starting from
// lambda = 1, lambda is grown by 1/gamma while the inequality holds and the
// trial point keeps changing, or shrunk by gamma until it first holds.
// Stops once ||projected_gradient(x)||_F <= eps_sub or the iteration cap is
// reached.
SubsolveResult armijo_pg_subsolve(const BlockObjective& objective, Matrix x0,
                                  const PGConfig& cfg, double eps_sub);

// Block coordinate descent on the penalized objective: alternate Armijo
// projected-gradient solves of the G- and H-subproblems. Global stop when
// the stacked projected-gradient norm falls below epsilon times the initial
// gradient norm; sub-problem tolerances start at max(1e-7, epsilon) times
// that same norm and shrink by tau whenever a sub-solve returns from its
// first iteration.
SolveReport solve_pg(const ProblemSpec& spec, const PGConfig& cfg,
                     const FactorPair& init);

}  // namespace orthofact
