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

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "orthofact/harness.hpp"

namespace {

using namespace orthofact;

std::vector<InstanceKind> parse_kinds(const std::string& kind) {
  if (kind == "UNION") return {InstanceKind::UNION};
  if (kind == "BION") return {InstanceKind::BION};
  if (kind == "BOTH") return {InstanceKind::UNION, InstanceKind::BION};
  throw ConfigError("unknown kind '" + kind + "' (expected UNION, BION or BOTH)");
}

struct CommonSolverFlags {
  std::string config_file;
  double time_limit = -1.0;  // < 0: keep defaults
  long max_iters = -1;

  SolverSettings settings() const {
    SolverSettings s;
    if (!config_file.empty()) load_config_file(config_file, s);
    if (time_limit >= 0.0) {
      s.ding.time_limit = time_limit;
      s.mirzal.time_limit = time_limit;
      s.pg.time_limit = time_limit;
    }
    if (max_iters >= 0) {
      s.ding.max_iters = max_iters;
      s.mirzal.max_outer_iters = max_iters;
      s.pg.max_outer_iters = max_iters;
    }
    return s;
  }
};

void add_common_solver_flags(CLI::App* cmd, CommonSolverFlags& flags) {
  cmd->add_option("--config", flags.config_file,
                  "key=value config file mirroring the solver settings");
  cmd->add_option("--time-limit", flags.time_limit,
                  "wall-clock budget per solve in seconds");
  cmd->add_option("--max-iters", flags.max_iters,
                  "outer iteration budget for every solver");
}

int cmd_generate(const std::string& out_dir, const std::string& kind,
                 std::vector<int> ns, std::vector<double> k_fracs,
                 int replicates, std::uint64_t seed) {
  std::size_t files = 0;
  for (InstanceKind k : parse_kinds(kind)) {
    for (int n : ns) {
      for (double kf : k_fracs) {
        const int kk = std::max(1, static_cast<int>(std::lround(kf * n)));
        for (int id = 1; id <= replicates; ++id) {
          const InstanceTriple t =
              generate_instance(n, kk, k, id, instance_seed(seed, k, n, kk, id));
          files += write_instance(t, out_dir).size();
        }
      }
    }
  }
  std::cout << "wrote " << files << " files to " << out_dir << "\n";
  return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& alg_name,
              int p, double p_frac, double beta, std::optional<double> alpha,
              std::uint64_t seed, const CommonSolverFlags& flags,
              const std::string& trace_path, const std::string& format) {
  const InstanceTriple inst = read_instance(instance_path);
  const Algorithm alg = algorithm_from_string(alg_name);
  const OrthoMode mode = inst.kind == InstanceKind::BION
                             ? OrthoMode::BiOrthogonal
                             : OrthoMode::UniOrthogonal;

  if (p <= 0) p = std::max(1, static_cast<int>(std::lround(p_frac * inst.k)));
  const double eff_beta = alg == Algorithm::Ding ? 0.0 : beta;
  const double eff_alpha =
      alg == Algorithm::Ding
          ? 0.0
          : alpha.value_or(mode == OrthoMode::BiOrthogonal ? beta : 0.0);

  ProblemSpec spec(inst.R, p, mode, eff_alpha, eff_beta);
  const SolverSettings settings = flags.settings();
  const FactorPair init = random_init(spec, solve_seed(seed, alg, p, eff_beta));
  const SolveReport report = run_solver(alg, spec, settings, init);

  const RunRecord rec{inst.kind,          inst.n,
                      inst.k,             p,
                      inst.id,            seed,
                      alg,                spec.alpha(),
                      eff_beta,           report.final_rse(),
                      report.final_infeas(), report.iterations,
                      report.wall_seconds, report.termination};

  if (format == "json") {
    nlohmann::json j{{"kind", to_string(rec.kind)},
                     {"n", rec.n},
                     {"k", rec.k},
                     {"p", rec.p},
                     {"replicate", rec.replicate},
                     {"seed", rec.seed},
                     {"alg", to_string(rec.alg)},
                     {"alpha", rec.alpha},
                     {"beta", rec.beta},
                     {"final_rse", rec.final_rse},
                     {"final_infeas", rec.final_infeas},
                     {"iters", rec.iters},
                     {"wall_seconds", rec.wall_seconds},
                     {"termination", to_string(rec.termination)}};
    std::cout << j.dump() << "\n";
  } else if (format == "csv") {
    std::cout << raw_csv_columns() << "\n" << raw_csv_line(rec) << "\n";
  } else {
    throw ConfigError("unknown format '" + format + "' (expected csv or json)");
  }

  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    if (!out) throw IoError("cannot write " + trace_path);
    out << "# orthofact-trace v1\n";
    out << "iter,rse,infeas,objective\n";
    char buf[96];
    for (std::size_t i = 0; i < report.rse_trace.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g", i,
                    report.rse_trace[i], report.infeas_trace[i],
                    report.objective_trace[i]);
      out << buf << "\n";
    }
  }
  return 0;
}

int cmd_benchmark(const std::string& out_base, const std::string& kind,
                  std::vector<int> ns, std::vector<double> k_fracs,
                  std::vector<double> p_fracs, std::vector<double> betas,
                  std::vector<std::string> alg_names, int replicates,
                  std::uint64_t seed, const CommonSolverFlags& flags, int jobs,
                  bool quiet) {
  if (alg_names.empty()) throw ConfigError("benchmark: empty algorithm list");
  std::vector<Algorithm> algs;
  for (const auto& a : alg_names) algs.push_back(algorithm_from_string(a));

  const SolverSettings settings = flags.settings();
  std::vector<RunRecord> rows;
  for (InstanceKind k : parse_kinds(kind)) {
    ExperimentGrid grid;
    grid.kind = k;
    grid.ns = ns;
    grid.k_fractions = k_fracs;
    grid.p_fractions = p_fracs;
    grid.betas = betas;
    grid.algorithms = algs;
    grid.replicates = replicates;
    grid.master_seed = seed;
    auto progress = [&](std::size_t done, std::size_t total) {
      if (!quiet)
        std::cerr << "\r" << to_string(k) << " " << done << "/" << total
                  << std::flush;
    };
    auto part = run_benchmark(grid, settings, jobs, progress);
    if (!quiet) std::cerr << "\n";
    rows.insert(rows.end(), part.begin(), part.end());
  }

  const std::string hash = config_hash(settings);
  const std::filesystem::path raw_path = out_base + "_raw.csv";
  const std::filesystem::path agg_path = out_base + "_agg.csv";
  if (raw_path.has_parent_path())
    std::filesystem::create_directories(raw_path.parent_path());
  write_raw_csv(raw_path, rows, seed, hash);
  write_aggregate_csv(agg_path, aggregate(rows), seed, hash);
  std::cout << "wrote " << raw_path.string() << " (" << rows.size()
            << " rows) and " << agg_path.string() << "\n";
  return 0;
}

int cmd_report(const std::string& raw_csv, const std::string& out_dir) {
  const auto rows = read_raw_csv(raw_csv);
  const auto files = write_plot_data(out_dir, rows);
  for (const auto& f : files) std::cout << f.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthofact: orthogonal non-negative matrix factorization solvers"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write synthetic instance files");
  std::string gen_out, gen_kind = "BOTH";
  std::vector<int> gen_ns = {50, 100, 200, 500, 1000};
  std::vector<double> gen_kfracs = {0.2, 0.4};
  int gen_reps = 5;
  std::uint64_t gen_seed = 1;
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--kind", gen_kind, "UNION, BION or BOTH")->capture_default_str();
  gen->add_option("--n", gen_ns, "matrix sizes")->capture_default_str();
  gen->add_option("--k-frac", gen_kfracs, "true rank as fraction of n")->capture_default_str();
  gen->add_option("--replicates", gen_reps, "instances per (n,k)")->capture_default_str();
  gen->add_option("--seed", gen_seed, "master seed")->capture_default_str();

  // solve
  auto* solve = app.add_subcommand("solve", "run one solver on one instance file");
  std::string solve_path, solve_alg, solve_trace, solve_format = "csv";
  int solve_p = 0;
  double solve_pfrac = 1.0, solve_beta = 1.0;
  std::optional<double> solve_alpha;
  std::uint64_t solve_seed_v = 1;
  CommonSolverFlags solve_flags;
  solve->add_option("instance", solve_path, "path to an _R_ instance file")->required();
  solve->add_option("--alg", solve_alg, "ding, mirzal or pg")->required();
  solve->add_option("--p", solve_p, "inner dimension (overrides --p-frac)");
  solve->add_option("--p-frac", solve_pfrac, "inner dimension as fraction of k")->capture_default_str();
  solve->add_option("--beta", solve_beta, "orthogonality penalty on G")->capture_default_str();
  solve->add_option("--alpha", solve_alpha, "orthogonality penalty on H (default: beta for BION, 0 for UNION)");
  solve->add_option("--seed", solve_seed_v, "initialization seed")->capture_default_str();
  solve->add_option("--trace", solve_trace, "write per-iteration trace CSV here");
  solve->add_option("--format", solve_format, "csv or json")->capture_default_str();
  add_common_solver_flags(solve, solve_flags);

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "sweep an experiment grid, write raw+aggregate CSV");
  std::string bench_out, bench_kind = "BOTH";
  std::vector<int> bench_ns = {50, 100};
  std::vector<double> bench_kfracs = {0.2, 0.4};
  std::vector<double> bench_pfracs = {0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<double> bench_betas = {1.0, 10.0, 100.0, 1000.0};
  std::vector<std::string> bench_algs = {"ding", "mirzal", "pg"};
  int bench_reps = 5, bench_jobs = 0;
  bool bench_quiet = false;
  std::uint64_t bench_seed = 1;
  CommonSolverFlags bench_flags;
  bench->add_option("--out", bench_out, "output base path (writes <out>_raw.csv, <out>_agg.csv)")->required();
  bench->add_option("--kind", bench_kind, "UNION, BION or BOTH")->capture_default_str();
  bench->add_option("--n", bench_ns, "matrix sizes")->capture_default_str();
  bench->add_option("--k-frac", bench_kfracs, "true rank as fraction of n")->capture_default_str();
  bench->add_option("--p-frac", bench_pfracs, "inner dimension as fraction of k")->capture_default_str();
  bench->add_option("--beta", bench_betas, "penalty values")->capture_default_str();
  bench->add_option("--alg", bench_algs, "algorithms to run")->capture_default_str();
  bench->add_option("--replicates", bench_reps, "instances per (n,k)")->capture_default_str();
  bench->add_option("--seed", bench_seed, "master seed")->capture_default_str();
  bench->add_option("--jobs", bench_jobs, "worker threads (0 = hardware)")->capture_default_str();
  bench->add_flag("--quiet", bench_quiet, "suppress progress output");
  add_common_solver_flags(bench, bench_flags);

  // report
  auto* rep = app.add_subcommand("report", "turn a raw CSV into plot-data files");
  std::string rep_csv, rep_out;
  rep->add_option("raw_csv", rep_csv, "raw CSV from benchmark")->required();
  rep->add_option("--out", rep_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(gen_out, gen_kind, gen_ns, gen_kfracs, gen_reps, gen_seed);
    if (solve->parsed())
      return cmd_solve(solve_path, solve_alg, solve_p, solve_pfrac, solve_beta,
                       solve_alpha, solve_seed_v, solve_flags, solve_trace,
                       solve_format);
    if (bench->parsed())
      return cmd_benchmark(bench_out, bench_kind, bench_ns, bench_kfracs,
                           bench_pfracs, bench_betas, bench_algs, bench_reps,
                           bench_seed, bench_flags, bench_jobs, bench_quiet);
    if (rep->parsed()) return cmd_report(rep_csv, rep_out);
  } catch (const orthofact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
