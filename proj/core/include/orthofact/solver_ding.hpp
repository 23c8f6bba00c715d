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

#include <utility>

#include "orthofact/model.hpp"
#include "orthofact/report.hpp"

namespace orthofact {

struct DingConfig {
  double delta = 1e-9;         // guard added to every update denominator
  long max_iters = 1000;
  double time_limit = 60.0;    // seconds, checked between iterations
  double rse_stall_tol = 1e-8; // relative RSE change declaring convergence
};

// One multiplicative-update sweep for the bi-orthogonal problem. G is
// updated first; H uses the updated G:
//   G <- G .* sqrt( R H^T ./ (G G^T R H^T + delta) )
//   H <- H .* sqrt( G^T R ./ (G^T R H^T H + delta) )
// Zero entries stay zero; non-negativity is preserved. Throws DomainError if
// an input has negative entries.
std::pair<Matrix, Matrix> ding_step_bi(const Matrix& R, Matrix G, Matrix H,
                                       double delta);

// Uni-orthogonal variant: same G rule, H rule
//   H <- H .* sqrt( G^T R ./ (G^T G H + delta) ).
std::pair<Matrix, Matrix> ding_step_uni(const Matrix& R, Matrix G, Matrix H,
                                        double delta);

// Iterate the multiplicative updates until the relative RSE change stalls,
// the iteration budget is exhausted or the time limit is hit.
SolveReport solve_ding(const ProblemSpec& spec, const DingConfig& cfg,
                       const FactorPair& init);

}  // namespace orthofact
