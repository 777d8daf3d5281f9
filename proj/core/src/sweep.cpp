#include "pdi/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pdi/double_dressed.hpp"
#include "pdi/dressed.hpp"
#include "pdi/oracle.hpp"
#include "pdi/susceptibility.hpp"

namespace pdi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string sanitize(std::string msg) {
  for (char& c : msg) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return msg;
}

SystemParams with_sweep_value(const SystemParams& base, const std::string& param, double v) {
  SystemParams p = base;
  if (param == "delta_over_2omega") p.Delta = 2.0 * p.Omega * v;
  else if (param == "Delta") p.Delta = v;
  else if (param == "Omega") p.Omega = v;
  else if (param == "G") p.G = v;
  else if (param == "omega") p.omega = v;
  else throw std::invalid_argument("unknown sweep parameter '" + param + "'");
  return p;
}

SweepResult run_point_sweep(const RunConfig& cfg) {
  SweepResult result;
  result.columns = {cfg.sweep_param, "Rz", "Re_Rplus", "Im_Rplus", "Sz"};
  const bool collective = cfg.mode == RunMode::CollectiveSweep;
  if (collective) {
    result.columns.insert(result.columns.end(), {"x", "Rz_tilde", "Sz_per_N"});
  }
  result.columns.push_back("error");

  const auto grid = uniform_grid(cfg.sweep_min, cfg.sweep_max, cfg.sweep_points);
  result.rows.resize(grid.size());
  const size_t ncols = result.columns.size() - 1;

  parallel_for(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
    SweepRow& row = result.rows[i];
    row.values.assign(ncols, kNaN);
    row.values[0] = grid[i];
    try {
      const SystemParams p = with_sweep_value(cfg.params, cfg.sweep_param, grid[i]);
      const DressedFrame f = derive_dressed(p);
      const SteadyState s = steady_state_single(f);
      row.values[1] = s.Rz;
      row.values[2] = s.Rplus.real();
      row.values[3] = s.Rplus.imag();
      row.values[4] = s.Sz;
      if (collective) {
        const DoubleDressedFrame g = derive_double_dressed(f, p);
        const CollectiveState c = collective_state(f, g, p.N);
        row.values[5] = c.x;
        row.values[6] = c.Rz_tilde;
        row.values[7] = c.Sz_per_emitter;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  });
  return result;
}

SweepResult run_spectrum(const RunConfig& cfg) {
  SweepResult result;
  result.columns = {"delta_p", "re_chi", "im_chi", "n", "error"};

  const DressedFrame f = derive_dressed(cfg.params);
  const DoubleDressedFrame g = derive_double_dressed(f, cfg.params);
  double rz_tilde;
  if (cfg.rz_source == "collective") {
    rz_tilde = collective_inversion(g.x, cfg.params.N) / cfg.params.N;
  } else {
    rz_tilde = collective_inversion(g.x, 1);
  }
  const auto grid = uniform_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points);
  const Spectrum spec = chi_closed_form(f, g, rz_tilde, grid);

  std::optional<double> pref;
  if (cfg.params.physical && cfg.params.physical->d > 0.0 && cfg.params.physical->Nbar > 0.0) {
    pref = susceptibility_prefactor(*cfg.params.physical, cfg.params.gamma_ref);
  }

  result.rows.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
    SweepRow& row = result.rows[i];
    row.values = {grid[i], spec.chi[i].real(), spec.chi[i].imag(), kNaN};
    if (pref) {
      try {
        row.values[3] = refractive_index(spec.chi[i].real(), *pref);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  });
  return result;
}

Spectrum read_spectrum_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("extract: cannot open input spectrum '" + path + "'");
  Spectrum s;
  std::string line;
  bool header_skipped = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_skipped) {  // column-name row
      header_skipped = true;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',') && vals.size() < 3) {
      vals.push_back(std::strtod(cell.c_str(), nullptr));
    }
    if (vals.size() >= 3) {
      s.detunings.push_back(vals[0]);
      s.chi.emplace_back(vals[1], vals[2]);
    }
  }
  if (s.detunings.empty()) throw std::runtime_error("extract: no rows in input spectrum");
  return s;
}

SweepResult run_extract(const RunConfig& cfg) {
  SweepResult result;
  result.columns = {"S_measured", "G_R", "G", "d_diff_debye"};

  Spectrum spec;
  if (!cfg.in.empty()) {
    spec = read_spectrum_csv(cfg.in);
  } else {
    const DressedFrame f = derive_dressed(cfg.params);
    const DoubleDressedFrame g = derive_double_dressed(f, cfg.params);
    const double rz = collective_inversion(g.x, 1);
    spec = chi_closed_form(f, g, rz, uniform_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points));
  }
  const DipoleExtraction ex = extract_dipole_difference(spec, cfg.params);
  SweepRow row;
  row.values = {ex.separation, ex.G_R, ex.G, ex.d_diff_debye};
  result.rows.push_back(row);

  std::ostringstream os;
  os << "S = " << fmt17(ex.separation) << "  G_R = " << fmt17(ex.G_R) << "  G = " << fmt17(ex.G)
     << "  |d22-d11| = " << fmt17(ex.d_diff_debye) << " Debye";
  result.report = os.str();
  return result;
}

struct OracleCheckRow {
  std::string name;
  int n;
  double max_err;
  double tol;
};

SweepResult run_oracle_check(const RunConfig& cfg) {
  SweepResult result;
  result.columns = {"check_id", "N", "max_rel_err", "tolerance", "pass"};

  UniformRng rng(cfg.seed);
  auto rel = [](double num, double ana) {
    return std::abs(num - ana) / std::max(std::abs(ana), 1e-12);
  };
  auto crel = [](std::complex<double> num, std::complex<double> ana) {
    return std::abs(num - ana) / std::max(std::abs(ana), 1e-12);
  };

  // Single dressing: analytic steady state against the Liouvillian null
  // space over seeded regime-valid draws.
  double err_rz = 0.0, err_rp = 0.0;
  oracle::Matrix rz2(2, 2), rp2(2, 2);
  rz2 << -1.0, 0.0, 0.0, 1.0;
  rp2 << 0.0, 0.0, 1.0, 0.0;
  for (int d = 0; d < cfg.oracle_draws; ++d) {
    SystemParams p = cfg.params;
    for (int tries = 0;; ++tries) {
      p.Omega = rng.uniform(20.0, 80.0);
      p.Delta = 2.0 * p.Omega * rng.uniform(-1.0, 1.0);
      p.omega = rng.uniform(60.0, 240.0);
      p.G = rng.uniform(0.0, 24.0);
      auto viol = check_regime(p, 10.0);
      std::erase_if(viol, [](const RegimeViolation& v) { return v.name == "G_R >> gamma"; });
      if (viol.empty()) break;
      if (tries > 10000) throw std::runtime_error("oracle-check: regime-valid draw failed");
    }
    const DressedFrame f = derive_dressed(p);
    const SteadyState ana = steady_state_single(f);
    const auto num = oracle::steady_state(oracle::build_liouvillian_single(f));
    err_rz = std::max(err_rz, rel(num.rho.expectation(rz2).real(), ana.Rz));
    err_rp = std::max(err_rp, crel(num.rho.expectation(rp2), ana.Rplus));
  }

  // Collective: closed-form inversion against the Dicke-basis steady state,
  // plus the off-diagonal steady-state check.
  double err_coll = 0.0, err_off = 0.0;
  for (int n : {1, 2, 4, 8}) {
    for (int rep = 0; rep < 3; ++rep) {
      SystemParams p = cfg.params;
      if (rep > 0) {
        p.Omega = rng.uniform(20.0, 80.0);
        p.Delta = 2.0 * p.Omega * rng.uniform(-1.0, 1.0);
        p.omega = rng.uniform(60.0, 240.0);
        p.G = rng.uniform(4.0, 24.0);
      }
      DressedFrame f;
      DoubleDressedFrame g;
      try {
        f = derive_dressed(p);
        g = derive_double_dressed(f, p);
      } catch (const std::exception&) {
        continue;  // draw landed on a degenerate frame; skip
      }
      const auto num = oracle::steady_state(oracle::build_liouvillian_dicke(g, n));
      const double ana = collective_inversion(g.x, n);
      err_coll = std::max(err_coll, rel(num.rho.expectation(oracle::dicke_rz(n)).real(), ana));
      err_off = std::max(err_off, num.rho.max_offdiagonal());
    }
  }

  const std::vector<OracleCheckRow> checks = {
      {"single_dressed_Rz", 1, err_rz, cfg.tol_single},
      {"single_dressed_Rplus", 1, err_rp, cfg.tol_single},
      {"collective_Rz_tilde", 8, err_coll, cfg.tol_collective},
      {"steady_offdiagonal", 8, err_off, cfg.tol_offdiag},
  };

  std::ostringstream rep;
  rep << "oracle-check (seed " << cfg.seed << ", " << cfg.oracle_draws << " draws)\n";
  rep << "  check                      max_rel_err    tolerance  result\n";
  int id = 0;
  for (const auto& c : checks) {
    const bool pass = c.max_err < c.tol;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "  %-26s %.5e  %.1e  %s\n", c.name.c_str(), c.max_err,
                  c.tol, pass ? "pass" : "FAIL");
    rep << buf;
    SweepRow row;
    row.values = {static_cast<double>(id++), static_cast<double>(c.n), c.max_err, c.tol,
                  pass ? 1.0 : 0.0};
    if (!pass) {
      row.error = c.name + " exceeded tolerance";
      result.exit_code = 2;
    }
    result.rows.push_back(row);
  }
  result.report = rep.str();
  return result;
}

}  // namespace

UniformRng::UniformRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

std::uint64_t UniformRng::next() {
  // splitmix64; fixed across platforms so seeded runs are byte-identical
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double UniformRng::uniform(double lo, double hi) {
  const double z = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + z * (hi - lo);
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min({threads, n, 64}));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

std::string version_string() { return "0.1.0"; }

SweepResult evaluate_run(const RunConfig& cfg) {
  switch (cfg.mode) {
    case RunMode::InversionSweep:
    case RunMode::CoherenceSweep:
    case RunMode::CollectiveSweep:
      return run_point_sweep(cfg);
    case RunMode::Spectrum:
      return run_spectrum(cfg);
    case RunMode::Extract:
      return run_extract(cfg);
    case RunMode::OracleCheck:
      return run_oracle_check(cfg);
  }
  throw std::logic_error("evaluate_run: unhandled mode");
}

void write_csv(const RunConfig& cfg, const SweepResult& result, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  for (const auto& [k, v] : cfg.echo) os << "# " << k << " = " << v << "\n";
  for (size_t i = 0; i < result.columns.size(); ++i) {
    os << (i ? "," : "") << result.columns[i];
  }
  os << "\n";
  const bool has_error_col = !result.columns.empty() && result.columns.back() == "error";
  for (const auto& row : result.rows) {
    for (size_t i = 0; i < row.values.size(); ++i) {
      os << (i ? "," : "") << fmt17(row.values[i]);
    }
    if (has_error_col) os << "," << sanitize(row.error);
    os << "\n";
  }
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

void write_sidecar(const RunConfig& cfg, const SweepResult& result, double elapsed_ms) {
  using nlohmann::json;
  std::ofstream os(cfg.out + ".meta.jsonl");
  if (!os) return;

  json params = json::object();
  for (const auto& [k, v] : cfg.echo) params[k] = v;
  os << json{{"type", "parameters"}, {"values", params}}.dump() << "\n";

  json viols = json::array();
  for (const auto& v : check_regime(cfg.params, cfg.regime_K)) {
    viols.push_back({{"inequality", v.name}, {"margin", v.margin}});
  }
  os << json{{"type", "regime"}, {"K", cfg.regime_K}, {"violations", viols}}.dump() << "\n";

  const auto now = std::chrono::system_clock::now().time_since_epoch();
  os << json{{"type", "run"},
             {"version", version_string()},
             {"mode", to_string(cfg.mode)},
             {"rows", result.rows.size()},
             {"exit_code", result.exit_code},
             {"timing_ms", elapsed_ms},
             {"timestamp_unix_ms",
              std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}}
            .dump()
     << "\n";
}

}  // namespace

int run_sweep(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult result = evaluate_run(cfg);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!result.report.empty()) std::fputs((result.report + "\n").c_str(), stdout);
  if (!cfg.out.empty()) {
    write_csv(cfg, result, cfg.out);
    write_sidecar(cfg, result, ms);
  }
  return result.exit_code;
}

}  // namespace pdi
