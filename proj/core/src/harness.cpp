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

#include "orthofact/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "orthofact/rng.hpp"

namespace orthofact {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

constexpr const char* kRawColumns =
    "kind,n,k,p,replicate,seed,alg,alpha,beta,final_rse,final_infeas,iters,"
    "wall_seconds,termination";

constexpr const char* kAggColumns =
    "kind,n,p_pct,alg,beta,runs,mean_rse,mean_infeas";

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Tolerance: return "tolerance";
    case Termination::Stall: return "stall";
    case Termination::MaxIters: return "max_iters";
    case Termination::TimeLimit: return "time_limit";
  }
  throw Error("unknown termination");
}

Termination termination_from_string(const std::string& s) {
  if (s == "tolerance") return Termination::Tolerance;
  if (s == "stall") return Termination::Stall;
  if (s == "max_iters") return Termination::MaxIters;
  if (s == "time_limit") return Termination::TimeLimit;
  throw ParseError("unknown termination '" + s + "'");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Ding: return "ding";
    case Algorithm::Mirzal: return "mirzal";
    case Algorithm::Pg: return "pg";
  }
  throw Error("unknown algorithm");
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "ding") return Algorithm::Ding;
  if (s == "mirzal") return Algorithm::Mirzal;
  if (s == "pg") return Algorithm::Pg;
  throw ConfigError("unknown algorithm '" + s + "' (expected ding, mirzal or pg)");
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad value for " + key + ": '" + value + "'");
  }
  if (used != value.size())
    throw ConfigError("bad value for " + key + ": '" + value + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v)) throw ConfigError(key + " must be an integer");
  return static_cast<long>(v);
}

}  // namespace

void apply_config_entry(const std::string& key, const std::string& value,
                        SolverSettings& s) {
  if (key == "ding.delta") s.ding.delta = parse_double(key, value);
  else if (key == "ding.max_iters") s.ding.max_iters = parse_long(key, value);
  else if (key == "ding.time_limit") s.ding.time_limit = parse_double(key, value);
  else if (key == "ding.rse_stall_tol") s.ding.rse_stall_tol = parse_double(key, value);
  else if (key == "mirzal.delta0") s.mirzal.delta0 = parse_double(key, value);
  else if (key == "mirzal.step") s.mirzal.step = parse_double(key, value);
  else if (key == "mirzal.nu") s.mirzal.nu = parse_double(key, value);
  else if (key == "mirzal.max_outer_iters") s.mirzal.max_outer_iters = parse_long(key, value);
  else if (key == "mirzal.time_limit") s.mirzal.time_limit = parse_double(key, value);
  else if (key == "mirzal.max_inner_tries") s.mirzal.max_inner_tries = static_cast<int>(parse_long(key, value));
  else if (key == "mirzal.obj_stall_tol") s.mirzal.obj_stall_tol = parse_double(key, value);
  else if (key == "pg.sigma") s.pg.sigma = parse_double(key, value);
  else if (key == "pg.gamma") { s.pg.gamma = parse_double(key, value); s.pg_kind_presets = false; }
  else if (key == "pg.tau") { s.pg.tau = parse_double(key, value); s.pg_kind_presets = false; }
  else if (key == "pg.epsilon") s.pg.epsilon = parse_double(key, value);
  else if (key == "pg.max_outer_iters") s.pg.max_outer_iters = parse_long(key, value);
  else if (key == "pg.max_inner_iters") s.pg.max_inner_iters = parse_long(key, value);
  else if (key == "pg.time_limit") s.pg.time_limit = parse_double(key, value);
  else if (key == "pg.max_lambda_trials") s.pg.max_lambda_trials = static_cast<int>(parse_long(key, value));
  else if (key == "pg.lambda_min") s.pg.lambda_min = parse_double(key, value);
  else if (key == "pg.lambda_max") s.pg.lambda_max = parse_double(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

std::vector<std::string> load_config_file(const std::filesystem::path& path,
                                          SolverSettings& settings) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());

  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };

  std::vector<std::string> keys;
  std::string line, section;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value in config: '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.find('.') == std::string::npos && !section.empty())
      key = section + "." + key;
    apply_config_entry(key, value, settings);
    keys.push_back(key);
  }
  return keys;
}

std::string config_hash(const SolverSettings& s) {
  std::ostringstream canon;
  canon << "ding.delta=" << fmt(s.ding.delta)
        << ";ding.max_iters=" << s.ding.max_iters
        << ";ding.time_limit=" << fmt(s.ding.time_limit)
        << ";ding.rse_stall_tol=" << fmt(s.ding.rse_stall_tol)
        << ";mirzal.delta0=" << fmt(s.mirzal.delta0)
        << ";mirzal.step=" << fmt(s.mirzal.step)
        << ";mirzal.nu=" << fmt(s.mirzal.nu)
        << ";mirzal.max_outer_iters=" << s.mirzal.max_outer_iters
        << ";mirzal.time_limit=" << fmt(s.mirzal.time_limit)
        << ";mirzal.max_inner_tries=" << s.mirzal.max_inner_tries
        << ";mirzal.obj_stall_tol=" << fmt(s.mirzal.obj_stall_tol)
        << ";pg.sigma=" << fmt(s.pg.sigma) << ";pg.gamma=" << fmt(s.pg.gamma)
        << ";pg.tau=" << fmt(s.pg.tau) << ";pg.epsilon=" << fmt(s.pg.epsilon)
        << ";pg.max_outer_iters=" << s.pg.max_outer_iters
        << ";pg.max_inner_iters=" << s.pg.max_inner_iters
        << ";pg.time_limit=" << fmt(s.pg.time_limit)
        << ";pg.max_lambda_trials=" << s.pg.max_lambda_trials
        << ";pg.lambda_min=" << fmt(s.pg.lambda_min)
        << ";pg.lambda_max=" << fmt(s.pg.lambda_max)
        << ";pg.kind_presets=" << (s.pg_kind_presets ? 1 : 0);

  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
  for (unsigned char c : canon.str()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FactorPair random_init(const ProblemSpec& spec, std::uint64_t seed) {
  return FactorPair{
      NonNegMatrix(random_uniform_matrix(spec.m(), spec.p(), derive_seed(seed, 1))),
      NonNegMatrix(random_uniform_matrix(spec.p(), spec.n(), derive_seed(seed, 2)))};
}

std::uint64_t solve_seed(std::uint64_t inst_seed, Algorithm alg, int p, double beta) {
  std::uint64_t s = derive_seed(inst_seed, 10 + static_cast<std::uint64_t>(alg));
  s = derive_seed(s, static_cast<std::uint64_t>(p));
  s = derive_seed(s, std::bit_cast<std::uint64_t>(beta));
  return s;
}

SolveReport run_solver(Algorithm alg, const ProblemSpec& spec,
                       const SolverSettings& settings, const FactorPair& init) {
  switch (alg) {
    case Algorithm::Ding:
      return solve_ding(spec, settings.ding, init);
    case Algorithm::Mirzal:
      return solve_mirzal(spec, settings.mirzal, init);
    case Algorithm::Pg: {
      PGConfig cfg = settings.pg;
      if (settings.pg_kind_presets) {
        const PGConfig preset = pg_defaults_for(spec.mode());
        cfg.gamma = preset.gamma;
        cfg.tau = preset.tau;
      }
      return solve_pg(spec, cfg, init);
    }
  }
  throw Error("unknown algorithm");
}

RunRecord run_single(const InstanceTriple& inst, Algorithm alg, int p,
                     double alpha, double beta, const SolverSettings& settings) {
  const OrthoMode mode = inst.kind == InstanceKind::BION
                             ? OrthoMode::BiOrthogonal
                             : OrthoMode::UniOrthogonal;
  const double eff_alpha = alg == Algorithm::Ding ? 0.0 : alpha;
  const double eff_beta = alg == Algorithm::Ding ? 0.0 : beta;
  ProblemSpec spec(inst.R, p, mode, eff_alpha, eff_beta);
  const FactorPair init = random_init(spec, solve_seed(inst.seed, alg, p, beta));
  const SolveReport report = run_solver(alg, spec, settings, init);

  return RunRecord{inst.kind,
                   inst.n,
                   inst.k,
                   p,
                   inst.id,
                   inst.seed,
                   alg,
                   spec.alpha(),
                   eff_beta,
                   report.final_rse(),
                   report.final_infeas(),
                   report.iterations,
                   report.wall_seconds,
                   report.termination};
}

namespace {

struct Cell {
  int n, k, p, id;
  Algorithm alg;
  double alpha, beta;
  std::uint64_t inst_seed;
};

std::vector<Cell> expand_grid(const ExperimentGrid& grid) {
  if (grid.ns.empty() || grid.k_fractions.empty() || grid.p_fractions.empty() ||
      grid.algorithms.empty() || grid.replicates < 1)
    throw ConfigError("experiment grid: empty dimension");
  const bool needs_beta =
      std::any_of(grid.algorithms.begin(), grid.algorithms.end(),
                  [](Algorithm a) { return a != Algorithm::Ding; });
  if (needs_beta && grid.betas.empty())
    throw ConfigError("experiment grid: empty beta list");
  for (double pf : grid.p_fractions)
    if (!(pf > 0.0 && pf <= 1.0))
      throw ConfigError("experiment grid: p fractions must be in (0,1]");

  std::vector<Cell> cells;
  for (int n : grid.ns) {
    for (double kf : grid.k_fractions) {
      const int k = std::max(1, static_cast<int>(std::lround(kf * n)));
      for (int id = 1; id <= grid.replicates; ++id) {
        const std::uint64_t seed = instance_seed(grid.master_seed, grid.kind, n, k, id);
        for (double pf : grid.p_fractions) {
          const int p = std::max(1, static_cast<int>(std::lround(pf * k)));
          for (Algorithm alg : grid.algorithms) {
            if (alg == Algorithm::Ding) {
              cells.push_back(Cell{n, k, p, id, alg, 0.0, 0.0, seed});
            } else {
              for (double beta : grid.betas) {
                const double alpha =
                    grid.kind == InstanceKind::BION ? beta : 0.0;
                cells.push_back(Cell{n, k, p, id, alg, alpha, beta, seed});
              }
            }
          }
        }
      }
    }
  }
  return cells;
}

}  // namespace

std::vector<RunRecord> run_benchmark(
    const ExperimentGrid& grid, const SolverSettings& settings, int workers,
    const std::function<void(std::size_t, std::size_t)>& progress) {
  const std::vector<Cell> cells = expand_grid(grid);
  std::vector<RunRecord> records(cells.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& c = cells[i];
      try {
        const InstanceTriple inst =
            generate_instance(c.n, c.k, grid.kind, c.id, c.inst_seed);
        records[i] = run_single(inst, c.alg, c.p, c.alpha, c.beta, settings);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(cells.size());  // drain remaining work
        return;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(d, cells.size());
      }
    }
  };

  int pool = workers > 0 ? workers
                         : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::max(1, std::min<int>(pool, static_cast<int>(cells.size())));
  if (pool == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& rows) {
  struct Accum {
    long runs = 0;
    double rse_sum = 0.0;
    double infeas_sum = 0.0;
  };
  std::map<std::tuple<int, int, int, int, double>, Accum> groups;
  for (const RunRecord& r : rows) {
    const int p_pct = static_cast<int>(std::lround(100.0 * r.p / r.k));
    auto& acc = groups[{static_cast<int>(r.kind), r.n, p_pct,
                        static_cast<int>(r.alg), r.beta}];
    ++acc.runs;
    acc.rse_sum += r.final_rse;
    acc.infeas_sum += r.final_infeas;
  }

  std::vector<AggregateRow> out;
  out.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    const auto& [kind, n, p_pct, alg, beta] = key;
    out.push_back(AggregateRow{static_cast<InstanceKind>(kind), n, p_pct,
                               static_cast<Algorithm>(alg), beta, acc.runs,
                               acc.rse_sum / static_cast<double>(acc.runs),
                               acc.infeas_sum / static_cast<double>(acc.runs)});
  }
  return out;
}

const char* raw_csv_columns() { return kRawColumns; }

std::string raw_csv_line(const RunRecord& r) {
  std::ostringstream out;
  out << to_string(r.kind) << ',' << r.n << ',' << r.k << ',' << r.p << ','
      << r.replicate << ',' << r.seed << ',' << to_string(r.alg) << ','
      << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << fmt(r.final_rse) << ','
      << fmt(r.final_infeas) << ',' << r.iters << ',' << fmt_fixed(r.wall_seconds)
      << ',' << to_string(r.termination);
  return out.str();
}

void write_raw_csv(const std::filesystem::path& path,
                   const std::vector<RunRecord>& rows,
                   std::uint64_t master_seed, const std::string& cfg_hash) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "# orthofact-csv v1\n";
  out << "# master_seed=" << master_seed << "\n";
  out << "# config_hash=" << cfg_hash << "\n";
  out << kRawColumns << "\n";
  for (const RunRecord& r : rows) out << raw_csv_line(r) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<RunRecord> read_raw_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());

  std::vector<RunRecord> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kRawColumns)
        throw ParseError("unexpected raw CSV header in " + path.string());
      header_seen = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 14)
      throw ParseError("expected 14 CSV fields, got " +
                       std::to_string(f.size()) + " in " + path.string());
    RunRecord r;
    if (f[0] == "UNION") r.kind = InstanceKind::UNION;
    else if (f[0] == "BION") r.kind = InstanceKind::BION;
    else throw ParseError("unknown kind '" + f[0] + "'");
    r.n = std::stoi(f[1]);
    r.k = std::stoi(f[2]);
    r.p = std::stoi(f[3]);
    r.replicate = std::stoi(f[4]);
    r.seed = std::stoull(f[5]);
    r.alg = algorithm_from_string(f[6]);
    r.alpha = std::stod(f[7]);
    r.beta = std::stod(f[8]);
    r.final_rse = std::stod(f[9]);
    r.final_infeas = std::stod(f[10]);
    r.iters = std::stol(f[11]);
    r.wall_seconds = std::stod(f[12]);
    r.termination = termination_from_string(f[13]);
    rows.push_back(r);
  }
  if (!header_seen) throw ParseError("no CSV header in " + path.string());
  return rows;
}

void write_aggregate_csv(const std::filesystem::path& path,
                         const std::vector<AggregateRow>& rows,
                         std::uint64_t master_seed, const std::string& cfg_hash) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "# orthofact-csv v1 aggregate\n";
  out << "# master_seed=" << master_seed << "\n";
  out << "# config_hash=" << cfg_hash << "\n";
  out << kAggColumns << "\n";
  for (const AggregateRow& r : rows) {
    out << to_string(r.kind) << ',' << r.n << ',' << r.p_pct << ','
        << to_string(r.alg) << ',' << fmt(r.beta) << ',' << r.runs << ','
        << fmt(r.mean_rse) << ',' << fmt(r.mean_infeas) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::filesystem::path> write_plot_data(
    const std::filesystem::path& dir, const std::vector<RunRecord>& raw) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());

  const std::vector<AggregateRow> aggs = aggregate(raw);

  // (kind, n, alg) -> beta set and p_pct -> beta -> (rse, infeas)
  using GroupKey = std::tuple<int, int, int>;
  std::map<GroupKey, std::set<double>> betas;
  std::map<GroupKey, std::map<int, std::map<double, std::pair<double, double>>>> data;
  for (const AggregateRow& a : aggs) {
    const GroupKey key{static_cast<int>(a.kind), a.n, static_cast<int>(a.alg)};
    betas[key].insert(a.beta);
    data[key][a.p_pct][a.beta] = {a.mean_rse, a.mean_infeas};
  }

  std::vector<std::filesystem::path> written;
  for (const auto& [key, series] : data) {
    const auto kind = static_cast<InstanceKind>(std::get<0>(key));
    const int n = std::get<1>(key);
    const auto alg = static_cast<Algorithm>(std::get<2>(key));
    for (const bool rse_metric : {true, false}) {
      const std::string metric = rse_metric ? "rse" : "infeas";
      const auto path = dir / ("plot_" + to_string(kind) + "_n" +
                               std::to_string(n) + "_" + to_string(alg) + "_" +
                               metric + ".dat");
      std::ofstream out(path);
      if (!out) throw IoError("cannot write " + path.string());
      out << "# orthofact-plot v1\n";
      out << "# kind=" << to_string(kind) << " n=" << n
          << " alg=" << to_string(alg) << " metric=" << metric << "\n";
      out << "# p_pct";
      for (double b : betas[key])
        out << ' ' << (alg == Algorithm::Ding ? to_string(alg) : "beta=" + fmt(b));
      out << "\n";
      for (const auto& [p_pct, by_beta] : series) {
        out << p_pct;
        for (double b : betas[key]) {
          const auto it = by_beta.find(b);
          if (it == by_beta.end())
            out << " nan";
          else
            out << ' ' << fmt(rse_metric ? it->second.first : it->second.second);
        }
        out << "\n";
      }
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace orthofact
