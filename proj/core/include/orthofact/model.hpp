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

#include "orthofact/matrix.hpp"

namespace orthofact {

// Which factors must have orthonormal columns/rows: G only, or G and H.
enum class OrthoMode { UniOrthogonal, BiOrthogonal };

// One factorization problem: data matrix R (m x n), inner dimension p, the
// orthogonality mode and the penalty weights. In UniOrthogonal mode the
// H-penalty weight alpha is fixed to 0.
class ProblemSpec {
 public:
  ProblemSpec(NonNegMatrix R, Index p, OrthoMode mode, double alpha, double beta);

  const NonNegMatrix& R() const { return R_; }
  Index m() const { return R_.rows(); }
  Index n() const { return R_.cols(); }
  Index p() const { return p_; }
  OrthoMode mode() const { return mode_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  NonNegMatrix R_;
  Index p_;
  OrthoMode mode_;
  double alpha_;
  double beta_;
};

// Basis factor G (m x p) and coefficient factor H (p x n).
struct FactorPair {
  NonNegMatrix G;
  NonNegMatrix H;
};

// Throws DimensionError unless G is m x p and H is p x n for the given spec.
void check_conforming(const ProblemSpec& spec, const FactorPair& fp);

// Root-square error ||R - GH||_F / (1 + ||R||_F).
double rse(const Matrix& R, const Matrix& G, const Matrix& H);

// Deviation of G from orthonormal columns: ||G^T G - I||_F / (1 + sqrt(p)).
double infeas_uni(const Matrix& G);

// Deviation of both factors: (||G^T G - I||_F + ||H H^T - I||_F) / (1 + sqrt(p)).
double infeas_bi(const Matrix& G, const Matrix& H);

// Infeasibility of (G,H) under the given mode: infeas_uni for UniOrthogonal,
// infeas_bi for BiOrthogonal.
double infeasibility(OrthoMode mode, const Matrix& G, const Matrix& H);

// Penalized objective
//   F(G,H) = 1/2 ||R - GH||_F^2 + alpha/2 ||HH^T - I||_F^2
//          + beta/2 ||G^T G - I||_F^2.
double penalized_objective(const Matrix& R, const Matrix& G, const Matrix& H,
                           double alpha, double beta);

// Gradient of the penalized objective with respect to G:
//   G HH^T - R H^T + 2 beta (G G^T G - G).
Matrix grad_G(const Matrix& R, const Matrix& G, const Matrix& H, double beta);

// Gradient of the penalized objective with respect to H:
//   G^T G H - G^T R + 2 alpha (H H^T H - H).
Matrix grad_H(const Matrix& R, const Matrix& G, const Matrix& H, double alpha);

// Typed overloads working on a problem and its factor pair.
double rse(const ProblemSpec& spec, const FactorPair& fp);
double penalized_objective(const ProblemSpec& spec, const FactorPair& fp);
Matrix grad_G(const ProblemSpec& spec, const FactorPair& fp);
Matrix grad_H(const ProblemSpec& spec, const FactorPair& fp);

}  // namespace orthofact
