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

#include "orthofact/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <utility>
#include <vector>

#include "orthofact/rng.hpp"

namespace orthofact {

namespace {

constexpr double kZeroColumnTol = 1e-8;

double column_norm(const Matrix& m, int col) {
  return std::sqrt(m.col(col).array().square().sum());
}

// Smallest-index column whose norm is below the tolerance, or -1.
int find_deficient_column(const Matrix& m) {
  for (int c = 0; c < m.cols(); ++c)
    if (column_norm(m, c) < kZeroColumnTol) return c;
  return -1;
}

// Largest-norm column; ties broken by the smallest index.
int find_largest_column(const Matrix& m) {
  int best = 0;
  double best_norm = column_norm(m, 0);
  for (int c = 1; c < m.cols(); ++c) {
    const double nrm = column_norm(m, c);
    if (nrm > best_norm) {
      best = c;
      best_norm = nrm;
    }
  }
  return best;
}

int first_nonzero_row(const Matrix& m, int col) {
  for (int r = 0; r < m.rows(); ++r)
    if (m(r, col) != 0.0) return r;
  return -1;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(InstanceKind kind) {
  return kind == InstanceKind::BION ? "BION" : "UNION";
}

Matrix orthonormal_factor_from_positions(int rows, int cols,
                                         std::span<const int> positions,
                                         std::span<const double> values) {
  if (rows < cols || cols < 1)
    throw DimensionError("orthonormal factor: need rows >= cols >= 1");
  if (positions.size() != static_cast<std::size_t>(rows) ||
      values.size() != static_cast<std::size_t>(rows))
    throw DimensionError("orthonormal factor: one position/value per row");

  Matrix g = Matrix::Zero(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const int c = positions[r];
    if (c < 0 || c >= cols)
      throw DimensionError("orthonormal factor: position out of range");
    if (values[r] < 0.0)
      throw DomainError("orthonormal factor: negative value");
    g(r, c) = values[r];
  }

  // Repair: feed empty (or numerically empty) columns one element at a time
  // from the currently largest column. Each move keeps exactly one nonzero
  // per row, so column supports stay pairwise disjoint.
  int budget = rows * cols + cols;
  for (int deficient = find_deficient_column(g); deficient != -1;
       deficient = find_deficient_column(g)) {
    if (--budget < 0) throw Error("orthonormal factor: column repair did not converge");
    const int donor = find_largest_column(g);
    const int row = first_nonzero_row(g, donor);
    if (donor == deficient || row == -1)
      throw Error("orthonormal factor: no donor column available");
    g(row, deficient) = g(row, donor);
    g(row, donor) = 0.0;
  }

  for (int c = 0; c < cols; ++c) g.col(c) /= column_norm(g, c);
  return g;
}

Matrix generate_orthonormal_factor(int rows, int cols, std::uint64_t seed) {
  if (rows < cols || cols < 1)
    throw DimensionError("generate_orthonormal_factor: need rows >= cols >= 1");
  Xoshiro256pp rng(seed);
  std::vector<int> positions(rows);
  std::vector<double> values(rows);
  for (int r = 0; r < rows; ++r)
    positions[r] = static_cast<int>(rng.below(static_cast<std::uint64_t>(cols)));
  for (int r = 0; r < rows; ++r) values[r] = rng.uniform01();
  return orthonormal_factor_from_positions(rows, cols, positions, values);
}

InstanceTriple generate_instance(int n, int k, InstanceKind kind, int id,
                                 std::uint64_t seed) {
  if (k < 1 || n < 2 * k)
    throw DimensionError("generate_instance: need n >= 2k, k >= 1");
  if (id < 1) throw DomainError("generate_instance: id is 1-based");

  Matrix g = generate_orthonormal_factor(n, k, derive_seed(seed, 1));
  Matrix h;
  if (kind == InstanceKind::BION) {
    // Orthonormal rows, built as the transpose of a column-orthonormal factor.
    h = generate_orthonormal_factor(n, k, derive_seed(seed, 2)).transpose();
  } else {
    h = random_uniform_matrix(k, n, derive_seed(seed, 2));
  }
  Matrix r = g * h;
  return InstanceTriple{NonNegMatrix(std::move(r)), NonNegMatrix(std::move(g)),
                        NonNegMatrix(std::move(h)), n, k, id, kind, seed, true};
}

std::string instance_filename(InstanceKind kind, char which, int n, int k, int id) {
  if (which != 'R' && which != 'G' && which != 'H')
    throw ConfigError("instance_filename: matrix tag must be R, G or H");
  std::ostringstream name;
  name << "NMF_" << (kind == InstanceKind::BION ? "BIOG" : "UNION") << "_data_"
       << which << "_n=" << n << "_k=" << k << "_id=" << id << ".txt";
  return name.str();
}

std::uint64_t instance_seed(std::uint64_t master_seed, InstanceKind kind,
                            int n, int k, int id) {
  std::uint64_t s = derive_seed(master_seed, kind == InstanceKind::BION ? 2 : 1);
  s = derive_seed(s, static_cast<std::uint64_t>(n));
  s = derive_seed(s, static_cast<std::uint64_t>(k));
  s = derive_seed(s, static_cast<std::uint64_t>(id));
  return s;
}

void write_matrix_text(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

Matrix read_matrix_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::vector<double> row;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + tok + "' in " + path.string());
      }
      if (used != tok.size())
        throw ParseError("malformed number '" + tok + "' in " + path.string());
      row.push_back(v);
    }
    if (row.empty()) continue;  // blank line
    if (!rows.empty() && row.size() != rows.front().size())
      throw DimensionError("ragged rows in " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no matrix data in " + path.string());

  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

std::array<std::filesystem::path, 3> write_instance(const InstanceTriple& t,
                                                    const std::filesystem::path& dir) {
  if (dir.empty()) throw IoError("write_instance: empty output directory");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("write_instance: cannot create " + dir.string());

  const auto path_R = dir / instance_filename(t.kind, 'R', t.n, t.k, t.id);
  const auto path_G = dir / instance_filename(t.kind, 'G', t.n, t.k, t.id);
  const auto path_H = dir / instance_filename(t.kind, 'H', t.n, t.k, t.id);
  write_matrix_text(t.R.mat(), path_R);
  write_matrix_text(t.G_true.mat(), path_G);
  write_matrix_text(t.H_true.mat(), path_H);
  return {path_R, path_G, path_H};
}

InstanceTriple read_instance(const std::filesystem::path& path_R) {
  static const std::regex kName(
      R"(NMF_(BIOG|UNION)_data_R_n=([0-9]+)_k=([0-9]+)_id=([0-9]+)\.txt)");
  std::smatch match;
  const std::string name = path_R.filename().string();
  if (!std::regex_match(name, match, kName))
    throw FilenameError("not an instance R file: " + name);

  const InstanceKind kind =
      match[1] == "BIOG" ? InstanceKind::BION : InstanceKind::UNION;
  const int n = std::stoi(match[2]);
  const int k = std::stoi(match[3]);
  const int id = std::stoi(match[4]);

  Matrix r = read_matrix_text(path_R);
  if (r.rows() != n || r.cols() != n)
    throw DimensionError("matrix in " + name + " is not " + std::to_string(n) +
                         "x" + std::to_string(n));

  const auto dir = path_R.parent_path();
  const auto path_G = dir / instance_filename(kind, 'G', n, k, id);
  const auto path_H = dir / instance_filename(kind, 'H', n, k, id);
  const bool has_G = std::filesystem::exists(path_G);
  const bool has_H = std::filesystem::exists(path_H);
  if (has_G != has_H)
    throw IoError("companion file missing: need both _G_ and _H_ or neither");

  Matrix g, h;
  if (has_G) {
    g = read_matrix_text(path_G);
    h = read_matrix_text(path_H);
    if (g.rows() != n || g.cols() != k || h.rows() != k || h.cols() != n)
      throw DimensionError("companion factor dimensions disagree with " + name);
    if (((r - g * h).array().abs() > 1e-12).any())
      throw DomainError("companion factors do not reproduce R in " + name);
  } else {
    // No factors on disk; keep placeholders of the right shape.
    g = Matrix::Zero(n, k);
    h = Matrix::Zero(k, n);
  }

  return InstanceTriple{NonNegMatrix(std::move(r)), NonNegMatrix(std::move(g)),
                        NonNegMatrix(std::move(h)), n, k, id, kind, 0, has_G};
}

}  // namespace orthofact
