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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "orthofact/datagen.hpp"
#include "orthofact/solver_ding.hpp"
#include "orthofact/solver_mirzal.hpp"
#include "orthofact/solver_pg.hpp"

namespace orthofact {

enum class Algorithm { Ding, Mirzal, Pg };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

// Settings for all three solver families. When pg_kind_presets is true the
// harness substitutes the per-dataset gamma/tau defaults (UNION 0.1/0.1,
// BION 0.75/0.5); explicitly configuring pg.gamma or pg.tau turns that off.
struct SolverSettings {
  DingConfig ding;
  MirzalConfig mirzal;
  PGConfig pg;
  bool pg_kind_presets = true;
};

// Apply one key=value entry (e.g. "pg.sigma=0.01"). Unknown keys or
// unparsable values raise ConfigError.
void apply_config_entry(const std::string& key, const std::string& value,
                        SolverSettings& settings);

// key=value config file with '#' comments and optional [section] headers.
// Returns the keys that were set.
std::vector<std::string> load_config_file(const std::filesystem::path& path,
                                          SolverSettings& settings);

// Stable 64-bit FNV-1a hash of the numeric settings, as 16 hex digits.
// Recorded in every CSV so results can be traced back to their config.
std::string config_hash(const SolverSettings& settings);

// Cartesian experiment sweep. p is round(p_fraction * k), at least 1; Ding
// does not take penalty parameters and runs once per cell regardless of the
// beta list (recorded with beta = 0).
struct ExperimentGrid {
  InstanceKind kind = InstanceKind::UNION;
  std::vector<int> ns = {50, 100};
  std::vector<double> k_fractions = {0.2, 0.4};
  std::vector<double> p_fractions = {0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<double> betas = {1.0, 10.0, 100.0, 1000.0};
  std::vector<Algorithm> algorithms = {Algorithm::Ding, Algorithm::Mirzal,
                                       Algorithm::Pg};
  int replicates = 5;
  std::uint64_t master_seed = 1;
};

// One raw CSV row.
struct RunRecord {
  InstanceKind kind = InstanceKind::UNION;
  int n = 0;
  int k = 0;
  int p = 0;
  int replicate = 0;
  std::uint64_t seed = 0;  // instance seed
  Algorithm alg = Algorithm::Ding;
  double alpha = 0.0;
  double beta = 0.0;
  double final_rse = 0.0;
  double final_infeas = 0.0;
  long iters = 0;
  double wall_seconds = 0.0;
  Termination termination = Termination::MaxIters;
};

// Mean RSE / infeasibility over replicates, the grouping used by the
// paper-style result tables.
struct AggregateRow {
  InstanceKind kind = InstanceKind::UNION;
  int n = 0;
  int p_pct = 0;  // p as percentage of k
  Algorithm alg = Algorithm::Ding;
  double beta = 0.0;
  long runs = 0;
  double mean_rse = 0.0;
  double mean_infeas = 0.0;
};

// Seeded strictly positive uniform(0,1) initial factors for a problem.
FactorPair random_init(const ProblemSpec& spec, std::uint64_t seed);

// Seed for one solve, derived from the instance seed and the run parameters
// so reruns are bit-identical regardless of scheduling.
std::uint64_t solve_seed(std::uint64_t inst_seed, Algorithm alg, int p, double beta);

// Dispatch one solve with the settings for the chosen algorithm (applying
// the PG dataset presets when enabled).
SolveReport run_solver(Algorithm alg, const ProblemSpec& spec,
                       const SolverSettings& settings, const FactorPair& init);

// Solve one instance for one grid cell and condense the report into a row.
RunRecord run_single(const InstanceTriple& inst, Algorithm alg, int p,
                     double alpha, double beta, const SolverSettings& settings);

// Run the full grid with a bounded worker pool. Instances are generated on
// the fly from seeds derived from the master seed; the row order (and every
// column except wall_seconds) is reproducible for a fixed grid and seed.
std::vector<RunRecord> run_benchmark(
    const ExperimentGrid& grid, const SolverSettings& settings, int workers,
    const std::function<void(std::size_t done, std::size_t total)>& progress = {});

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& rows);

// Raw CSV: "# orthofact-csv v1" header, provenance comments (master seed,
// config hash), then one row per solve with columns
//   kind,n,k,p,replicate,seed,alg,alpha,beta,final_rse,final_infeas,iters,
//   wall_seconds,termination
const char* raw_csv_columns();
std::string raw_csv_line(const RunRecord& r);
void write_raw_csv(const std::filesystem::path& path,
                   const std::vector<RunRecord>& rows,
                   std::uint64_t master_seed, const std::string& cfg_hash);
std::vector<RunRecord> read_raw_csv(const std::filesystem::path& path);

void write_aggregate_csv(const std::filesystem::path& path,
                         const std::vector<AggregateRow>& rows,
                         std::uint64_t master_seed, const std::string& cfg_hash);

// Plot-data files behind the figures: one file per (kind, n, algorithm,
// metric) with x = p as % of k and one column per beta. Returns the paths.
std::vector<std::filesystem::path> write_plot_data(
    const std::filesystem::path& dir, const std::vector<RunRecord>& raw);

}  // namespace orthofact
