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

#include "orthofact/solver_mirzal.hpp"

#include <chrono>
#include <cmath>
#include <utility>

namespace orthofact {

Matrix guard_factor(const Matrix& M, const Matrix& gradM, double nu) {
  if (M.rows() != gradM.rows() || M.cols() != gradM.cols())
    throw DimensionError("guard_factor: shape mismatch");
  return (gradM.array() < 0.0)
      .select(M.array().max(nu).matrix(), M);
}

namespace {

struct MauParts {
  Matrix grad;
  Matrix guarded;
  Matrix denom_base;  // positive part of the gradient at the guarded matrix
};

// The candidate for a given guard value; negatives are clamped away.
Matrix mau_candidate(const Matrix& X, const MauParts& parts, double delta) {
  Matrix cand =
      X.array() -
      parts.guarded.array() * parts.grad.array() / (parts.denom_base.array() + delta);
  return cand.cwiseMax(0.0);
}

MirzalUpdate mau_accept_loop(const Matrix& X, const MauParts& parts,
                             const std::function<double(const Matrix&)>& objective,
                             double f_current, double delta0, double step,
                             int max_tries) {
  double delta = delta0;
  Matrix cand;
  for (int tries = 1; tries <= max_tries; ++tries) {
    cand = mau_candidate(X, parts, delta);
    if (objective(cand) <= f_current)
      return MirzalUpdate{std::move(cand), delta, tries, true};
    delta *= step;
  }
  return MirzalUpdate{std::move(cand), delta / step, max_tries, false};
}

}  // namespace

MirzalUpdate mirzal_update_G(const Matrix& R, const Matrix& G, const Matrix& H,
                             double beta, double nu, double delta0, double step,
                             int max_tries) {
  MauParts parts;
  parts.grad = grad_G(R, G, H, beta);
  parts.guarded = guard_factor(G, parts.grad, nu);
  const Matrix HHt = H * H.transpose();
  parts.denom_base = parts.guarded * HHt;
  if (beta != 0.0)
    parts.denom_base +=
        2.0 * beta * (parts.guarded * Matrix(parts.guarded.transpose() * parts.guarded));

  auto objective = [&](const Matrix& cand) {
    return penalized_objective(R, cand, H, 0.0, beta);
  };
  const double f_current = penalized_objective(R, G, H, 0.0, beta);
  return mau_accept_loop(G, parts, objective, f_current, delta0, step, max_tries);
}

MirzalUpdate mirzal_update_H(const Matrix& R, const Matrix& G, const Matrix& H,
                             double alpha, double nu, double delta0, double step,
                             int max_tries) {
  MauParts parts;
  parts.grad = grad_H(R, G, H, alpha);
  parts.guarded = guard_factor(H, parts.grad, nu);
  const Matrix GtG = G.transpose() * G;
  parts.denom_base = GtG * parts.guarded;
  if (alpha != 0.0)
    parts.denom_base +=
        2.0 * alpha * (Matrix(parts.guarded * parts.guarded.transpose()) * parts.guarded);

  auto objective = [&](const Matrix& cand) {
    return penalized_objective(R, G, cand, alpha, 0.0);
  };
  const double f_current = penalized_objective(R, G, H, alpha, 0.0);
  return mau_accept_loop(H, parts, objective, f_current, delta0, step, max_tries);
}

SolveReport solve_mirzal(const ProblemSpec& spec, const MirzalConfig& cfg,
                         const FactorPair& init) {
  check_conforming(spec, init);
  if (!(cfg.step > 1.0) || !(cfg.nu > 0.0) || !(cfg.delta0 > 0.0))
    throw ConfigError("mirzal: need step > 1, nu > 0, delta0 > 0");

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

  std::vector<double> rse_trace{rse(R, G, H)};
  std::vector<double> infeas_trace{infeasibility(spec.mode(), G, H)};
  std::vector<double> obj_trace{penalized_objective(R, G, H, alpha, beta)};

  Termination why = Termination::MaxIters;
  long iters = 0;
  while (iters < cfg.max_outer_iters) {
    if (elapsed() > cfg.time_limit) {
      why = Termination::TimeLimit;
      break;
    }

    const double f_before_g = obj_trace.back();
    MirzalUpdate up_g = mirzal_update_G(R, G, H, beta, cfg.nu, cfg.delta0,
                                        cfg.step, cfg.max_inner_tries);
    if (!up_g.accepted) {
      why = Termination::Stall;
      break;
    }
    G = std::move(up_g.value);
    const double f_after_g = penalized_objective(R, G, H, alpha, beta);
    if (cfg.update_observer)
      cfg.update_observer(MirzalUpdateEvent{'G', f_before_g, f_after_g,
                                            up_g.tries, up_g.delta_used});

    MirzalUpdate up_h = mirzal_update_H(R, G, H, alpha, cfg.nu, cfg.delta0,
                                        cfg.step, cfg.max_inner_tries);
    if (!up_h.accepted) {
      why = Termination::Stall;
      break;
    }
    H = std::move(up_h.value);
    const double f_after_h = penalized_objective(R, G, H, alpha, beta);
    if (cfg.update_observer)
      cfg.update_observer(MirzalUpdateEvent{'H', f_after_g, f_after_h,
                                            up_h.tries, up_h.delta_used});

    ++iters;
    const double f_prev = obj_trace.back();
    rse_trace.push_back(rse(R, G, H));
    infeas_trace.push_back(infeasibility(spec.mode(), G, H));
    obj_trace.push_back(f_after_h);
    if (std::abs(f_after_h - f_prev) <= cfg.obj_stall_tol * std::max(1.0, f_prev)) {
      why = Termination::Stall;
      break;
    }
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
