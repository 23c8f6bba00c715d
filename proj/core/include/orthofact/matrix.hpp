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

#include <Eigen/Core>
#include <cstdint>
#include <span>

#include "orthofact/errors.hpp"

namespace orthofact {

// Dense row-major double matrix; the working type of every algorithm here.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

// sqrt of the sum of squared entries. Throws DimensionError on an empty
// matrix.
double frobenius_norm(const Matrix& m);

// Exact bit-for-bit equality of shape and entries.
bool bitwise_equal(const Matrix& a, const Matrix& b);

// Seeded matrix with entries uniform in (0,1); shared initializer of all
// solvers so cross-algorithm comparisons start from the same distribution.
Matrix random_uniform_matrix(Index rows, Index cols, std::uint64_t seed);

// Dense matrix with every entry >= 0 and at least one row and column,
// validated on construction.
class NonNegMatrix {
 public:
  explicit NonNegMatrix(Matrix m);

  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  const Matrix& mat() const { return m_; }
  std::span<const double> data() const {
    return {m_.data(), static_cast<std::size_t>(m_.size())};
  }

 private:
  Matrix m_;
};

}  // namespace orthofact
