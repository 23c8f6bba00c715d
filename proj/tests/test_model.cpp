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

#include "oracles.hpp"
#include "orthofact/model.hpp"

using namespace orthofact;

namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

}  // namespace

TEST_SUITE("model") {

TEST_CASE("rse is zero at an exact factorization") {
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(rse(I, I, I) == 0.0);
}

TEST_CASE("rse of the all-zero factorization of [[1]] is 1/2") {
  CHECK(rse(scalar(1.0), scalar(0.0), scalar(0.0)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("rse of 2I against I*I matches the direct evaluation") {
  // sqrt(2) / (1 + 2*sqrt(2)), frozen from the brute-force oracle
  const Matrix R = 2.0 * Matrix::Identity(2, 2);
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(rse(R, I, I) == doctest::Approx(0.3693980625181293).epsilon(1e-14));
  CHECK(rse(R, I, I) == doctest::Approx(oracles::naive_rse(R, I, I)).epsilon(1e-14));
}

TEST_CASE("rse rejects non-conforming dimensions") {
  CHECK_THROWS_AS(rse(Matrix::Zero(2, 2), Matrix::Zero(3, 1), Matrix::Zero(1, 2)),
                  DimensionError);
}

TEST_CASE("infeas_uni: orthonormal, duplicated and single-column cases") {
  CHECK(infeas_uni(Matrix::Identity(2, 2)) == 0.0);

  Matrix ones(2, 1);
  ones << 1.0, 1.0;  // G^T G = [2], ||[1]||/(1+1)
  CHECK(infeas_uni(ones) == doctest::Approx(0.5).epsilon(1e-15));

  Matrix unit(2, 1);
  unit << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(infeas_uni(unit) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("infeas_bi: identity, scaled identity and rank-one cases") {
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(infeas_bi(I, I) == 0.0);

  // G = I, H = 2I: (0 + ||3I||_F)/(1+sqrt(2)) = 3 sqrt(2)/(1+sqrt(2))
  CHECK(infeas_bi(I, Matrix(2.0 * I)) ==
        doctest::Approx(1.7573593128807152).epsilon(1e-14));

  Matrix g(2, 1), h(1, 2);
  g << 1.0, 1.0;
  h << 1.0, 1.0;
  CHECK(infeas_bi(g, h) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("penalized objective vanishes at an exact orthonormal factorization") {
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(penalized_objective(I, I, I, 1.0, 1.0) == 0.0);
}

TEST_CASE("penalized objective: residual plus G-penalty") {
  // R=[[1]], G=[[1]], H=[[0]]: 1/2*1 + 1/2*0 = 0.5
  CHECK(penalized_objective(scalar(1.0), scalar(1.0), scalar(0.0), 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("penalized objective with zero penalties is half the squared residual") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Matrix R = oracles::random_matrix(5, 4, seed);
    const Matrix G = oracles::random_matrix(5, 2, seed + 10);
    const Matrix H = oracles::random_matrix(2, 4, seed + 20);
    const double resid = oracles::naive_frobenius(R - oracles::naive_product(G, H));
    CHECK(penalized_objective(R, G, H, 0.0, 0.0) ==
          doctest::Approx(0.5 * resid * resid).epsilon(1e-12));
  }
}

TEST_CASE("gradients vanish at the orthonormal fixed point") {
  const Matrix I = Matrix::Identity(2, 2);
  CHECK(grad_G(I, I, I, 1.0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(grad_H(I, I, I, 1.0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("gradient simplifications: beta=0, H=I, R=0 gives grad_G = G") {
  const Matrix R = Matrix::Zero(3, 3);
  const Matrix G = oracles::random_matrix(3, 3, 5);
  const Matrix I = Matrix::Identity(3, 3);
  CHECK((grad_G(R, G, I, 0.0) - G).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((grad_H(R, I, G, 0.0) - G).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gradients agree with central finite differences") {
  int pair = 0;
  const double weights[] = {0.0, 1.0, 10.0};
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const double alpha = weights[pair % 3];
    const double beta = weights[(pair / 3) % 3];
    ++pair;
    const Matrix R = oracles::random_matrix(5, 4, 100 + seed);
    const Matrix G = oracles::random_matrix(5, 2, 200 + seed);
    const Matrix H = oracles::random_matrix(2, 4, 300 + seed);

    const Matrix fd_g = oracles::finite_difference(
        [&](const Matrix& X) { return penalized_objective(R, X, H, alpha, beta); },
        G, 1e-6);
    const Matrix fd_h = oracles::finite_difference(
        [&](const Matrix& X) { return penalized_objective(R, G, X, alpha, beta); },
        H, 1e-6);

    CHECK(oracles::max_gradient_rel_error(grad_G(R, G, H, beta), fd_g) < 1e-5);
    CHECK(oracles::max_gradient_rel_error(grad_H(R, G, H, alpha), fd_h) < 1e-5);
  }
}

TEST_CASE("metric and gradient evaluations are pure") {
  const Matrix R = oracles::random_matrix(6, 5, 7);
  const Matrix G = oracles::random_matrix(6, 2, 8);
  const Matrix H = oracles::random_matrix(2, 5, 9);
  CHECK(rse(R, G, H) == rse(R, G, H));
  CHECK(penalized_objective(R, G, H, 1.0, 10.0) ==
        penalized_objective(R, G, H, 1.0, 10.0));
  CHECK(bitwise_equal(grad_G(R, G, H, 10.0), grad_G(R, G, H, 10.0)));
  CHECK(bitwise_equal(grad_H(R, G, H, 1.0), grad_H(R, G, H, 1.0)));
}

TEST_CASE("ProblemSpec forces alpha to zero in uni-orthogonal mode") {
  const ProblemSpec uni(NonNegMatrix(Matrix::Identity(4, 4)), 2,
                        OrthoMode::UniOrthogonal, 5.0, 2.0);
  CHECK(uni.alpha() == 0.0);
  CHECK(uni.beta() == 2.0);
  const ProblemSpec bi(NonNegMatrix(Matrix::Identity(4, 4)), 2,
                       OrthoMode::BiOrthogonal, 5.0, 2.0);
  CHECK(bi.alpha() == 5.0);
}

TEST_CASE("ProblemSpec validates p and the factor pair dimensions") {
  const NonNegMatrix R(Matrix::Identity(4, 3));
  CHECK_THROWS_AS(ProblemSpec(R, 4, OrthoMode::UniOrthogonal, 0.0, 1.0),
                  DimensionError);
  CHECK_THROWS_AS(ProblemSpec(R, 0, OrthoMode::UniOrthogonal, 0.0, 1.0),
                  DimensionError);

  const ProblemSpec spec(R, 2, OrthoMode::UniOrthogonal, 0.0, 1.0);
  const FactorPair bad{NonNegMatrix(Matrix::Zero(4, 3)),
                       NonNegMatrix(Matrix::Zero(3, 3))};
  CHECK_THROWS_AS(check_conforming(spec, bad), DimensionError);
}

}  // TEST_SUITE
