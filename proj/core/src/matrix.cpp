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

#include "orthofact/matrix.hpp"

#include <cmath>
#include <cstring>
#include <utility>

#include "orthofact/rng.hpp"

namespace orthofact {

double frobenius_norm(const Matrix& m) {
  if (m.size() == 0) throw DimensionError("frobenius_norm: empty matrix");
  return std::sqrt(m.array().square().sum());
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  return std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

Matrix random_uniform_matrix(Index rows, Index cols, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.uniform01();
  return m;
}

NonNegMatrix::NonNegMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() < 1 || m_.cols() < 1)
    throw DimensionError("NonNegMatrix: need at least one row and column");
  if (!(m_.minCoeff() >= 0.0))  // also rejects NaN
    throw DomainError("NonNegMatrix: negative or NaN entry");
}

}  // namespace orthofact
