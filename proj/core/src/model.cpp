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

#include "orthofact/model.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace orthofact {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw DimensionError(what);
}

Matrix identity(Index p) { return Matrix::Identity(p, p); }

}  // namespace

ProblemSpec::ProblemSpec(NonNegMatrix R, Index p, OrthoMode mode, double alpha,
                         double beta)
    : R_(std::move(R)),
      p_(p),
      mode_(mode),
      // alpha has no meaning without the H-orthogonality constraint
      alpha_(mode == OrthoMode::UniOrthogonal ? 0.0 : alpha),
      beta_(beta) {
  if (p_ < 1 || p_ > std::min(R_.rows(), R_.cols()))
    throw DimensionError("ProblemSpec: p must satisfy 1 <= p <= min(m,n)");
  if (alpha < 0.0 || beta < 0.0)
    throw DomainError("ProblemSpec: penalty parameters must be >= 0");
}

void check_conforming(const ProblemSpec& spec, const FactorPair& fp) {
  require(fp.G.rows() == spec.m() && fp.G.cols() == spec.p(),
          "factor pair: G must be m x p");
  require(fp.H.rows() == spec.p() && fp.H.cols() == spec.n(),
          "factor pair: H must be p x n");
}

double rse(const Matrix& R, const Matrix& G, const Matrix& H) {
  require(G.rows() == R.rows() && H.cols() == R.cols() && G.cols() == H.rows(),
          "rse: non-conforming dimensions");
  const double resid = frobenius_norm(R - G * H);
  return resid / (1.0 + frobenius_norm(R));
}

double infeas_uni(const Matrix& G) {
  const Index p = G.cols();
  const double dev = frobenius_norm(Matrix(G.transpose() * G) - identity(p));
  return dev / (1.0 + std::sqrt(static_cast<double>(p)));
}

double infeas_bi(const Matrix& G, const Matrix& H) {
  require(G.cols() == H.rows(), "infeas_bi: G cols must match H rows");
  const Index p = G.cols();
  const double dev_g = frobenius_norm(Matrix(G.transpose() * G) - identity(p));
  const double dev_h = frobenius_norm(Matrix(H * H.transpose()) - identity(p));
  return (dev_g + dev_h) / (1.0 + std::sqrt(static_cast<double>(p)));
}

double infeasibility(OrthoMode mode, const Matrix& G, const Matrix& H) {
  return mode == OrthoMode::UniOrthogonal ? infeas_uni(G) : infeas_bi(G, H);
}

double penalized_objective(const Matrix& R, const Matrix& G, const Matrix& H,
                           double alpha, double beta) {
  require(G.rows() == R.rows() && H.cols() == R.cols() && G.cols() == H.rows(),
          "penalized_objective: non-conforming dimensions");
  const Index p = G.cols();
  double f = 0.5 * (R - G * H).array().square().sum();
  if (beta != 0.0) {
    f += 0.5 * beta *
         (Matrix(G.transpose() * G) - identity(p)).array().square().sum();
  }
  if (alpha != 0.0) {
    f += 0.5 * alpha *
         (Matrix(H * H.transpose()) - identity(p)).array().square().sum();
  }
  return f;
}

Matrix grad_G(const Matrix& R, const Matrix& G, const Matrix& H, double beta) {
  require(G.rows() == R.rows() && H.cols() == R.cols() && G.cols() == H.rows(),
          "grad_G: non-conforming dimensions");
  Matrix g = G * Matrix(H * H.transpose()) - R * H.transpose();
  if (beta != 0.0) g += 2.0 * beta * (G * Matrix(G.transpose() * G) - G);
  return g;
}

Matrix grad_H(const Matrix& R, const Matrix& G, const Matrix& H, double alpha) {
  require(G.rows() == R.rows() && H.cols() == R.cols() && G.cols() == H.rows(),
          "grad_H: non-conforming dimensions");
  Matrix g = Matrix(G.transpose() * G) * H - G.transpose() * R;
  if (alpha != 0.0) g += 2.0 * alpha * (Matrix(H * H.transpose()) * H - H);
  return g;
}

double rse(const ProblemSpec& spec, const FactorPair& fp) {
  check_conforming(spec, fp);
  return rse(spec.R().mat(), fp.G.mat(), fp.H.mat());
}

double penalized_objective(const ProblemSpec& spec, const FactorPair& fp) {
  check_conforming(spec, fp);
  return penalized_objective(spec.R().mat(), fp.G.mat(), fp.H.mat(),
                             spec.alpha(), spec.beta());
}

Matrix grad_G(const ProblemSpec& spec, const FactorPair& fp) {
  check_conforming(spec, fp);
  return grad_G(spec.R().mat(), fp.G.mat(), fp.H.mat(), spec.beta());
}

Matrix grad_H(const ProblemSpec& spec, const FactorPair& fp) {
  check_conforming(spec, fp);
  return grad_H(spec.R().mat(), fp.G.mat(), fp.H.mat(), spec.alpha());
}

}  // namespace orthofact
