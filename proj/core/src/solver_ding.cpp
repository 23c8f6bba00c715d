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

#include "orthofact/solver_ding.hpp"

#include <chrono>
#include <cmath>
#include <utility>

namespace orthofact {

namespace {

void check_step_inputs(const Matrix& R, const Matrix& G, const Matrix& H,
                       double delta) {
  if (G.rows() != R.rows() || H.cols() != R.cols() || G.cols() != H.rows())
    throw DimensionError("ding step: non-conforming dimensions");
  if (R.minCoeff() < 0.0 || G.minCoeff() < 0.0 || H.minCoeff() < 0.0)
    throw DomainError("ding step: inputs must be non-negative");
  if (!(delta > 0.0)) throw DomainError("ding step: delta must be > 0");
}

void multiply_by_sqrt_ratio(Matrix& target, const Matrix& num,
                            const Matrix& den, double delta) {
  target.array() *= (num.array() / (den.array() + delta)).sqrt();
}

}  // namespace

std::pair<Matrix, Matrix> ding_step_bi(const Matrix& R, Matrix G, Matrix H,
                                       double delta) {
  check_step_inputs(R, G, H, delta);

  const Matrix RHt = R * H.transpose();
  const Matrix den_G = G * Matrix(G.transpose() * RHt);
  multiply_by_sqrt_ratio(G, RHt, den_G, delta);

  // H uses the freshly updated G.
  const Matrix GtR = G.transpose() * R;
  const Matrix den_H = Matrix(GtR * H.transpose()) * H;
  multiply_by_sqrt_ratio(H, GtR, den_H, delta);

  return {std::move(G), std::move(H)};
}

std::pair<Matrix, Matrix> ding_step_uni(const Matrix& R, Matrix G, Matrix H,
                                        double delta) {
  check_step_inputs(R, G, H, delta);

  const Matrix RHt = R * H.transpose();
  const Matrix den_G = G * Matrix(G.transpose() * RHt);
  multiply_by_sqrt_ratio(G, RHt, den_G, delta);

  const Matrix GtR = G.transpose() * R;
  const Matrix den_H = Matrix(G.transpose() * G) * H;
  multiply_by_sqrt_ratio(H, GtR, den_H, delta);

  return {std::move(G), std::move(H)};
}

SolveReport solve_ding(const ProblemSpec& spec, const DingConfig& cfg,
                       const FactorPair& init) {
  check_conforming(spec, init);
  const Matrix& R = spec.R().mat();
  Matrix G = init.G.mat();
  Matrix H = init.H.mat();

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  std::vector<double> rse_trace{rse(R, G, H)};
  std::vector<double> infeas_trace{infeasibility(spec.mode(), G, H)};
  std::vector<double> obj_trace{
      penalized_objective(R, G, H, spec.alpha(), spec.beta())};

  Termination why = Termination::MaxIters;
  long iters = 0;
  while (iters < cfg.max_iters) {
    if (elapsed() > cfg.time_limit) {
      why = Termination::TimeLimit;
      break;
    }
    auto [g_next, h_next] = spec.mode() == OrthoMode::BiOrthogonal
                                ? ding_step_bi(R, G, H, cfg.delta)
                                : ding_step_uni(R, G, H, cfg.delta);
    G = std::move(g_next);
    H = std::move(h_next);
    ++iters;

    const double prev = rse_trace.back();
    const double cur = rse(R, G, H);
    rse_trace.push_back(cur);
    infeas_trace.push_back(infeasibility(spec.mode(), G, H));
    obj_trace.push_back(penalized_objective(R, G, H, spec.alpha(), spec.beta()));
    if (std::abs(cur - prev) <= cfg.rse_stall_tol * std::max(1.0, prev)) {
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
