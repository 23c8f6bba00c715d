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

// Telemetry for one accepted (or abandoned) modified-additive update.
struct MirzalUpdateEvent {
  char block = 'G';        // 'G' or 'H'
  double objective_before = 0.0;
  double objective_after = 0.0;
  int tries = 0;
  double delta_used = 0.0;
};

struct MirzalConfig {
  double delta0 = 1e-9;        // initial denominator guard, reset per update
  double step = 10.0;          // growth factor for the guard (> 1)
  double nu = 1e-8;            // zero-locking floor
  long max_outer_iters = 1000;
  double time_limit = 60.0;    // seconds
  int max_inner_tries = 64;    // cap on the guard-growth loop
  double obj_stall_tol = 1e-8; // relative objective change declaring convergence
  std::function<void(const MirzalUpdateEvent&)> update_observer;
};

// Zero-locking guard: entry-wise M if the gradient is >= 0, max(M, nu)
// where the gradient is negative. Output >= input everywhere.
Matrix guard_factor(const Matrix& M, const Matrix& gradM, double nu);

struct MirzalUpdate {
  Matrix value;
  double delta_used = 0.0;
  int tries = 0;
  bool accepted = false;  // objective non-increase reached within max_tries
};

// Modified additive update of G with H fixed:
//   G' = G - Gbar .* grad_G ./ (Gbar H H^T + 2 beta Gbar Gbar^T Gbar + delta)
// Negative candidate entries are clamped to 0. The guard delta starts at
// delta0 and grows by `step` until the objective
// 1/2||R-GH||^2 + beta/2||G^T G-I||^2 does not increase.
MirzalUpdate mirzal_update_G(const Matrix& R, const Matrix& G, const Matrix& H,
                             double beta, double nu, double delta0, double step,
                             int max_tries);

// Mirror update of H with G fixed (alpha-penalty side).
MirzalUpdate mirzal_update_H(const Matrix& R, const Matrix& G, const Matrix& H,
                             double alpha, double nu, double delta0, double step,
                             int max_tries);

// Outer loop: update G, then H with the new G, guards reset to delta0 each
// outer iteration. Stops on objective stall, the iteration budget, the time
// limit, or an update that cannot reach non-increase within max_inner_tries
// (reported as Stall, the previous iterate is kept).
SolveReport solve_mirzal(const ProblemSpec& spec, const MirzalConfig& cfg,
                         const FactorPair& init);

}  // namespace orthofact
