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

#include <filesystem>
#include <fstream>
#include <vector>

#include "oracles.hpp"
#include "orthofact/datagen.hpp"
#include "orthofact/model.hpp"

using namespace orthofact;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("orthofact_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("datagen") {

TEST_CASE("single column factor has unit norm") {
  // With one column every row's entry lands in it; normalization makes the
  // column an exact unit vector.
  const Matrix g = generate_orthonormal_factor(2, 1, 7);
  CHECK(g.minCoeff() > 0.0);
  CHECK(g.col(0).norm() == doctest::Approx(1.0).epsilon(1e-15));

  // A row count of one gives the single-entry case: that entry becomes 1.
  const Matrix single = generate_orthonormal_factor(1, 1, 7);
  CHECK(single(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("generated factors have exactly orthonormal columns") {
  for (std::uint64_t seed : {1u, 2u, 3u, 17u}) {
    const Matrix g = generate_orthonormal_factor(4, 2, seed);
    const Matrix gram = g.transpose() * g;
    CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(g.minCoeff() >= 0.0);
  }
}

TEST_CASE("column supports are pairwise disjoint") {
  const Matrix g = generate_orthonormal_factor(40, 8, 5);
  for (int r = 0; r < g.rows(); ++r) {
    int nonzeros = 0;
    for (int c = 0; c < g.cols(); ++c)
      if (g(r, c) != 0.0) ++nonzeros;
    CHECK(nonzeros <= 1);
  }
  // Off-diagonal Gram entries are exactly zero, not just small.
  const Matrix gram = g.transpose() * g;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != j) CHECK(gram(i, j) == 0.0);
}

TEST_CASE("zero-column repair moves an element out of the crowded column") {
  // All rows initially land in column 0.
  const std::vector<int> positions(4, 0);
  const std::vector<double> values{0.9, 0.5, 0.7, 0.3};
  const Matrix g = orthonormal_factor_from_positions(4, 2, positions, values);
  const Matrix gram = g.transpose() * g;
  CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  // The donor's first nonzero (row 0) moved to column 1 and was normalized.
  CHECK(g(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g(0, 0) == 0.0);
}

TEST_CASE("factor generation rejects rows < cols") {
  CHECK_THROWS_AS(generate_orthonormal_factor(2, 3, 1), DimensionError);
}

TEST_CASE("factor generation is deterministic per seed") {
  CHECK(bitwise_equal(generate_orthonormal_factor(30, 6, 11),
                      generate_orthonormal_factor(30, 6, 11)));
  CHECK_FALSE(bitwise_equal(generate_orthonormal_factor(30, 6, 11),
                            generate_orthonormal_factor(30, 6, 12)));
}

TEST_CASE("BION instances satisfy both orthogonality invariants exactly") {
  const InstanceTriple t = generate_instance(50, 10, InstanceKind::BION, 1, 77);
  CHECK(t.R.rows() == 50);
  CHECK(t.R.cols() == 50);
  CHECK(infeas_bi(t.G_true.mat(), t.H_true.mat()) < 1e-12);
  CHECK(rse(t.R.mat(), t.G_true.mat(), t.H_true.mat()) < 1e-14);
  CHECK(t.R.mat().minCoeff() >= 0.0);
}

TEST_CASE("UNION instances have an orthonormal G and strictly positive H") {
  const InstanceTriple t = generate_instance(50, 20, InstanceKind::UNION, 1, 77);
  CHECK(infeas_uni(t.G_true.mat()) < 1e-12);
  CHECK(t.H_true.mat().minCoeff() > 0.0);
  CHECK(rse(t.R.mat(), t.G_true.mat(), t.H_true.mat()) < 1e-14);
}

TEST_CASE("instance generation is bit-identical per (n,k,kind,id,seed)") {
  const InstanceTriple a = generate_instance(24, 6, InstanceKind::BION, 2, 123);
  const InstanceTriple b = generate_instance(24, 6, InstanceKind::BION, 2, 123);
  CHECK(bitwise_equal(a.R.mat(), b.R.mat()));
  CHECK(bitwise_equal(a.G_true.mat(), b.G_true.mat()));
  CHECK(bitwise_equal(a.H_true.mat(), b.H_true.mat()));
}

TEST_CASE("instance generation rejects n < 2k") {
  CHECK_THROWS_AS(generate_instance(10, 6, InstanceKind::UNION, 1, 1),
                  DimensionError);
}

TEST_CASE("filenames follow the dataset grammar") {
  CHECK(instance_filename(InstanceKind::BION, 'R', 200, 80, 5) ==
        "NMF_BIOG_data_R_n=200_k=80_id=5.txt");
  CHECK(instance_filename(InstanceKind::UNION, 'G', 50, 10, 1) ==
        "NMF_UNION_data_G_n=50_k=10_id=1.txt");
}

TEST_CASE("write_instance emits three files with one matrix row per line") {
  const auto dir = temp_dir("write");
  const InstanceTriple t = generate_instance(20, 4, InstanceKind::BION, 3, 5);
  const auto paths = write_instance(t, dir);
  CHECK(paths[0].filename() == "NMF_BIOG_data_R_n=20_k=4_id=3.txt");

  std::ifstream in(paths[0]);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 20);

  fs::remove_all(dir);
}

TEST_CASE("write then read round-trips bit-exactly") {
  const auto dir = temp_dir("roundtrip");
  const InstanceTriple t = generate_instance(16, 4, InstanceKind::UNION, 2, 99);
  const auto paths = write_instance(t, dir);

  const InstanceTriple back = read_instance(paths[0]);
  CHECK(back.kind == InstanceKind::UNION);
  CHECK(back.n == 16);
  CHECK(back.k == 4);
  CHECK(back.id == 2);
  CHECK(back.has_true_factors);
  CHECK(bitwise_equal(back.R.mat(), t.R.mat()));
  CHECK(bitwise_equal(back.G_true.mat(), t.G_true.mat()));
  CHECK(bitwise_equal(back.H_true.mat(), t.H_true.mat()));

  fs::remove_all(dir);
}

TEST_CASE("write_instance rejects an empty directory path") {
  const InstanceTriple t = generate_instance(8, 2, InstanceKind::UNION, 1, 1);
  CHECK_THROWS_AS(write_instance(t, fs::path{}), IoError);
}

TEST_CASE("read_instance distinguishes its error kinds") {
  const auto dir = temp_dir("errors");

  SUBCASE("filename not matching the grammar") {
    const auto bad = dir / "NMF_BIOG_data_R_n=10.txt";
    std::ofstream(bad) << "1 2\n3 4\n";
    CHECK_THROWS_AS(read_instance(bad), FilenameError);
  }

  SUBCASE("malformed number") {
    const auto bad = dir / "NMF_UNION_data_R_n=2_k=1_id=1.txt";
    std::ofstream(bad) << "1 2\n3 4x\n";
    CHECK_THROWS_AS(read_instance(bad), ParseError);
  }

  SUBCASE("ragged rows") {
    const auto bad = dir / "NMF_UNION_data_R_n=2_k=1_id=1.txt";
    std::ofstream(bad) << "1 2\n3\n";
    CHECK_THROWS_AS(read_instance(bad), DimensionError);
  }

  SUBCASE("dimensions disagreeing with the filename") {
    const auto bad = dir / "NMF_UNION_data_R_n=3_k=1_id=1.txt";
    std::ofstream(bad) << "1 2\n3 4\n";
    CHECK_THROWS_AS(read_instance(bad), DimensionError);
  }

  SUBCASE("companion factors violating the product invariant") {
    const InstanceTriple t = generate_instance(8, 2, InstanceKind::BION, 1, 13);
    const auto paths = write_instance(t, dir);
    Matrix g = t.G_true.mat();
    g(0, 0) += 0.5;
    g(0, 1) += 0.25;  // keep it nonzero but wrong
    write_matrix_text(g, paths[1]);
    CHECK_THROWS_AS(read_instance(paths[0]), DomainError);
  }

  SUBCASE("exactly one companion present") {
    const InstanceTriple t = generate_instance(8, 2, InstanceKind::BION, 1, 13);
    const auto paths = write_instance(t, dir);
    fs::remove(paths[2]);
    CHECK_THROWS_AS(read_instance(paths[0]), IoError);
  }

  fs::remove_all(dir);
}

TEST_CASE("read_instance without companions yields placeholder factors") {
  const auto dir = temp_dir("lonely");
  const InstanceTriple t = generate_instance(8, 2, InstanceKind::UNION, 1, 4);
  const auto paths = write_instance(t, dir);
  fs::remove(paths[1]);
  fs::remove(paths[2]);
  const InstanceTriple back = read_instance(paths[0]);
  CHECK_FALSE(back.has_true_factors);
  CHECK(back.G_true.rows() == 8);
  CHECK(back.G_true.cols() == 2);
  fs::remove_all(dir);
}

}  // TEST_SUITE
