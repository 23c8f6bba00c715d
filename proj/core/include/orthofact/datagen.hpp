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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "orthofact/matrix.hpp"

namespace orthofact {

// UNION: only G is orthonormal by construction. BION: G has orthonormal
// columns and H has orthonormal rows, so R = GH is square with exactly k
// unit singular values.
enum class InstanceKind { UNION, BION };

std::string to_string(InstanceKind kind);

// A generated problem instance together with the factors it was built from.
struct InstanceTriple {
  NonNegMatrix R;       // n x n
  NonNegMatrix G_true;  // n x k, orthonormal columns
  NonNegMatrix H_true;  // k x n; orthonormal rows for BION, dense uniform for UNION
  int n = 0;
  int k = 0;
  int id = 0;  // replicate index, 1-based
  InstanceKind kind = InstanceKind::UNION;
  std::uint64_t seed = 0;
  // False when the triple was read from an R file without its _G_/_H_
  // companions; G_true and H_true are then zero placeholders.
  bool has_true_factors = true;
};

// Deterministic core of the factor construction: place values[i] at
// (i, positions[i]), repair columns whose Euclidean norm is below 1e-8 by
// moving the first nonzero element of the largest column into them, then
// scale every column to unit norm. Column supports stay pairwise disjoint,
// so the result has exactly orthonormal columns.
Matrix orthonormal_factor_from_positions(int rows, int cols,
                                         std::span<const int> positions,
                                         std::span<const double> values);

// Random sparse factor with orthonormal columns: one uniform(0,1) entry per
// row at a uniformly chosen column, followed by the repair/normalize pass
// above. Requires rows >= cols.
Matrix generate_orthonormal_factor(int rows, int cols, std::uint64_t seed);

// Build one synthetic instance. Requires n >= 2k.
InstanceTriple generate_instance(int n, int k, InstanceKind kind, int id,
                                 std::uint64_t seed);

// Filename grammar: NMF_{BIOG|UNION}_data_{R|G|H}_n=<n>_k=<k>_id=<id>.txt
// (the bi-orthonormal dataset uses token BIOG).
std::string instance_filename(InstanceKind kind, char which, int n, int k, int id);

// Seed for an instance, derived from a master seed so that whole datasets
// regenerate bit-identically.
std::uint64_t instance_seed(std::uint64_t master_seed, InstanceKind kind,
                            int n, int k, int id);

// Write R, G, H as whitespace-delimited decimal text (17 significant
// digits), one matrix row per line. Returns the three paths written.
std::array<std::filesystem::path, 3> write_instance(const InstanceTriple& t,
                                                    const std::filesystem::path& dir);

// Read an instance from its R file. Companion _G_/_H_ files are loaded when
// present and the product invariant R = G*H is validated; n, k, id and kind
// are inferred from the filename. The seed cannot be recovered and is 0.
InstanceTriple read_instance(const std::filesystem::path& path_R);

// Plain whitespace-delimited matrix text I/O.
Matrix read_matrix_text(const std::filesystem::path& path);
void write_matrix_text(const Matrix& m, const std::filesystem::path& path);

}  // namespace orthofact
