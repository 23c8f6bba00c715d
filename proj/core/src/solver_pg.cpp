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

#include "orthofact/solver_pg.hpp"

#include <chrono>
#include <cmath>
#include <utility>

namespace orthofact {

Matrix project_nonneg(const Matrix& x) { return x.cwiseMax(0.0); }

Matrix projected_gradient(const Matrix& x, const Matrix& grad) {
  if (x.rows() != grad.rows() || x.cols() != grad.cols())
    throw DimensionError("projected_gradient: shape mismatch");
  if (x.minCoeff() < 0.0)
    throw DomainError("projected_gradient: point must be non-negative");
  return (x.array() > 0.0).select(grad, grad.cwiseMin(0.0));
}

PGConfig pg_defaults_for(OrthoMode mode) {
  PGConfig cfg;
  if (mode == OrthoMode::BiOrthogonal) {
    cfg.gamma = 0.75;
    cfg.tau = 0.5;
  }
  return cfg;
}

BlockObjective g_subproblem(const Matrix& R, const Matrix& H, double beta) {
  // Everything that does not depend on G is computed once; the residual term
  // is evaluated through its expansion
  //   ||R - GH||^2 = ||R||^2 - 2<G, RH^T> + <G^T G, HH^T>.
  const Index p = H.rows();
  const double r2 = R.array().square().sum();
  const Matrix HHt = H * H.transpose();
  const Matrix RHt = R * H.transpose();
  const Matrix I = Matrix::Identity(p, p);

  BlockObjective f;
  f.value = [r2, HHt, RHt, I, beta](const Matrix& G) {
    const Matrix GtG = G.transpose() * G;
    double v = 0.5 * r2 - (G.array() * RHt.array()).sum() +
               0.5 * (GtG.array() * HHt.array()).sum();
    if (beta != 0.0) v += 0.5 * beta * (GtG - I).array().square().sum();
    return v;
  };
  f.gradient = [HHt, RHt, beta](const Matrix& G) {
    Matrix g = G * HHt - RHt;
    if (beta != 0.0) g += 2.0 * beta * (G * Matrix(G.transpose() * G) - G);
    return g;
  };
  return f;
}

BlockObjective h_subproblem(const Matrix& R, const Matrix& G, double alpha) {
  const Index p = G.cols();
  const double r2 = R.array().square().sum();
  const Matrix GtG = G.transpose() * G;
  const Matrix GtR = G.transpose() * R;
  const Matrix I = Matrix::Identity(p, p);

  BlockObjective f;
  f.value = [r2, GtG, GtR, I, alpha](const Matrix& H) {
    const Matrix HHt = H * H.transpose();
    double v = 0.5 * r2 - (H.array() * GtR.array()).sum() +
               0.5 * (GtG.array() * HHt.array()).sum();
    if (alpha != 0.0) v += 0.5 * alpha * (HHt - I).array().square().sum();
    return v;
  };
  f.gradient = [GtG, GtR, alpha](const Matrix& H) {
    Matrix g = GtG * H - GtR;
    if (alpha != 0.0) g += 2.0 * alpha * (Matrix(H * H.transpose()) * H - H);
    return g;
  };
  return f;
}

namespace {

struct Trial {
  Matrix x;
  double fval = 0.0;
  double rhs = 0.0;  // sigma * <grad, x - x_old>
  bool ok = false;
};

}  // namespace

SubsolveResult armijo_pg_subsolve(const BlockObjective& objective, Matrix x0,
                                  const PGConfig& cfg, double eps_sub) {
  if (x0.minCoeff() < 0.0)
    throw DomainError("armijo_pg_subsolve: start point must be non-negative");

  Matrix x = std::move(x0);
  double last_lambda = 1.0;
  long it = 0;
  for (;;) {
    const Matrix g = objective.gradient(x);
    if (frobenius_norm(projected_gradient(x, g)) <= eps_sub || it >= cfg.max_inner_iters)
      return SubsolveResult{std::move(x), it, last_lambda, false};

    const double fx = objective.value(x);
    auto try_lambda = [&](double lambda) {
      Trial t;
      t.x = project_nonneg(x - lambda * g);
      t.fval = objective.value(t.x);
      t.rhs = cfg.sigma * (g.array() * (t.x - x).array()).sum();
      t.ok = t.fval - fx <= t.rhs;
      return t;
    };

    int trials = 1;
    double lambda = 1.0;
    Trial best = try_lambda(lambda);
    if (best.ok) {
      // Grow the step while the rule keeps holding and the projected point
      // keeps changing.
      while (trials < cfg.max_lambda_trials) {
        const double lam_next = lambda / cfg.gamma;
        if (lam_next > cfg.lambda_max) break;
        Trial next = try_lambda(lam_next);
        ++trials;
        if (bitwise_equal(next.x, best.x) || !next.ok) break;
        lambda = lam_next;
        best = std::move(next);
      }
    } else {
      bool found = false;
      while (trials < cfg.max_lambda_trials) {
        lambda *= cfg.gamma;
        if (lambda < cfg.lambda_min) break;
        best = try_lambda(lambda);
        ++trials;
        if (best.ok) {
          found = true;
          break;
        }
      }
      if (!found) return SubsolveResult{std::move(x), it, lambda, true};
    }

    if (cfg.step_observer)
      cfg.step_observer(ArmijoStepEvent{fx, best.fval, best.rhs, lambda});
    x = std::move(best.x);
    last_lambda = lambda;
    ++it;
  }
}

SolveReport solve_pg(const ProblemSpec& spec, const PGConfig& cfg,
                     const FactorPair& init) {
  check_conforming(spec, init);
  if (!(cfg.sigma > 0.0 && cfg.sigma < 1.0) || !(cfg.gamma > 0.0 && cfg.gamma < 1.0) ||
      !(cfg.tau > 0.0 && cfg.tau < 1.0) || !(cfg.epsilon > 0.0))
    throw ConfigError("pg: need sigma, gamma, tau in (0,1) and epsilon > 0");

  const Matrix& R = spec.R().mat();
  const double alpha = spec.alpha();
  const double beta = spec.beta();
  Matrix G = init.G.mat();
  Matrix H = init.H.mat();

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  // Norm of the full initial gradient, stacked over both blocks. It anchors
  // the global test and both sub-problem tolerances.
  auto stacked_norm = [](const Matrix& a, const Matrix& b) {
    return std::sqrt(a.array().square().sum() + b.array().square().sum());
  };
  const double grad0_norm =
      stacked_norm(grad_G(R, G, H, beta), grad_H(R, G, H, alpha));
  const double global_tol = cfg.epsilon * grad0_norm;
  double eps_g = std::max(1e-7, cfg.epsilon) * grad0_norm;
  double eps_h = eps_g;

  std::vector<double> rse_trace{rse(R, G, H)};
  std::vector<double> infeas_trace{infeasibility(spec.mode(), G, H)};
  std::vector<double> obj_trace{penalized_objective(R, G, H, alpha, beta)};

  // A numerically stationary start (e.g. the exact factors of a synthetic
  // instance) leaves every relative tolerance at rounding level; the test
  // below could then never fire.
  if (grad0_norm <= 1e-12 * (1.0 + frobenius_norm(R))) {
    return SolveReport{NonNegMatrix(std::move(G)), NonNegMatrix(std::move(H)),
                       std::move(rse_trace),       std::move(infeas_trace),
                       std::move(obj_trace),       0,
                       elapsed(),                  Termination::Tolerance};
  }

  Termination why = Termination::MaxIters;
  long iters = 0;
  for (;;) {
    const Matrix gg = grad_G(R, G, H, beta);
    const Matrix gh = grad_H(R, G, H, alpha);
    if (stacked_norm(projected_gradient(G, gg), projected_gradient(H, gh)) <=
        global_tol) {
      why = Termination::Tolerance;
      break;
    }
    if (iters >= cfg.max_outer_iters) break;
    if (elapsed() > cfg.time_limit) {
      why = Termination::TimeLimit;
      break;
    }

    SubsolveResult sub_g = armijo_pg_subsolve(g_subproblem(R, H, beta), G, cfg, eps_g);
    G = std::move(sub_g.x);
    if (sub_g.iters <= 1) eps_g *= cfg.tau;

    SubsolveResult sub_h = armijo_pg_subsolve(h_subproblem(R, G, alpha), H, cfg, eps_h);
    H = std::move(sub_h.x);
    if (sub_h.iters <= 1) eps_h *= cfg.tau;

    ++iters;
    rse_trace.push_back(rse(R, G, H));
    infeas_trace.push_back(infeasibility(spec.mode(), G, H));
    obj_trace.push_back(penalized_objective(R, G, H, alpha, beta));
  }

  return SolveReport{NonNegMatrix(std::move(G)),
                     NonNegMatrix(std::move(H)),
                     std::move(rse_trace),
                     std::move(infeas_trace),
                     std::move(obj_trace),
                     iters,
                     elapsed(),
                     why};
}

}  // namespace orthofact
