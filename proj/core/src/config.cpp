#include "pdi/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace pdi {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int levenshtein(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string nearest_key(const std::string& key) {
  int best = 1 << 20;
  std::string name;
  for (const auto& k : config_keys()) {
    const int d = levenshtein(key, k);
    if (d < best) {
      best = d;
      name = k;
    }
  }
  return name;
}

double parse_double(const std::string& where, const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || !std::isfinite(d)) {
    throw ConfigError(where + ": key '" + key + "': expected a finite real number, got '" + v + "'");
  }
  return d;
}

long long parse_int(const std::string& where, const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long i = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') {
    throw ConfigError(where + ": key '" + key + "': expected an integer, got '" + v + "'");
  }
  return i;
}

bool parse_bool(const std::string& where, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": key '" + key + "': expected true/false, got '" + v + "'");
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::InversionSweep: return "inversion-sweep";
    case RunMode::CoherenceSweep: return "coherence-sweep";
    case RunMode::CollectiveSweep: return "collective-sweep";
    case RunMode::Spectrum: return "spectrum";
    case RunMode::OracleCheck: return "oracle-check";
    case RunMode::Extract: return "extract";
  }
  return "?";
}

RunMode run_mode_from_string(const std::string& s) {
  if (s == "inversion-sweep") return RunMode::InversionSweep;
  if (s == "coherence-sweep") return RunMode::CoherenceSweep;
  if (s == "collective-sweep") return RunMode::CollectiveSweep;
  if (s == "spectrum") return RunMode::Spectrum;
  if (s == "oracle-check") return RunMode::OracleCheck;
  if (s == "extract") return RunMode::Extract;
  throw ConfigError("unknown mode '" + s +
                    "' (expected inversion-sweep, coherence-sweep, collective-sweep, spectrum, "
                    "oracle-check or extract)");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "Omega", "Delta", "delta_over_2omega", "G", "omega", "N", "gamma_ref",
      "rate_model", "delta_bar_shift",
      "physical.d", "physical.omega21", "physical.omegaL", "physical.Nbar", "physical.E2",
      "mode", "sweep_param", "sweep_min", "sweep_max", "sweep_points",
      "grid_min", "grid_max", "grid_points",
      "out", "in", "regime_K", "seed", "oracle_draws",
      "tol_single", "tol_collective", "tol_offdiag",
      "rz_source", "freq_units", "threads"};
  return keys;
}

RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides) {
  struct Entry {
    std::string where, key, value;
  };
  std::vector<Entry> entries;
  std::vector<std::string> errors;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno);
    if (eq == std::string::npos) {
      errors.push_back(where + ": expected 'key = value', got '" + line + "'");
      continue;
    }
    entries.push_back({where, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  for (const auto& [k, v] : overrides) entries.push_back({"option --" + k, k, v});

  RunConfig cfg;
  const std::set<std::string> valid(config_keys().begin(), config_keys().end());
  std::map<std::string, std::string> given;  // canonical key -> value after overrides
  bool mode_set = false;

  for (const auto& e : entries) {
    if (!valid.count(e.key)) {
      errors.push_back(e.where + ": unknown key '" + e.key + "' (did you mean '" +
                       nearest_key(e.key) + "'?)");
      continue;
    }
    given[e.key] = e.value;
    try {
      if (e.key == "Omega") cfg.params.Omega = parse_double(e.where, e.key, e.value);
      else if (e.key == "Delta") cfg.params.Delta = parse_double(e.where, e.key, e.value);
      else if (e.key == "G") cfg.params.G = parse_double(e.where, e.key, e.value);
      else if (e.key == "omega") cfg.params.omega = parse_double(e.where, e.key, e.value);
      else if (e.key == "N") cfg.params.N = static_cast<int>(parse_int(e.where, e.key, e.value));
      else if (e.key == "gamma_ref") cfg.params.gamma_ref = parse_double(e.where, e.key, e.value);
      else if (e.key == "delta_bar_shift") cfg.params.delta_bar_shift = parse_bool(e.where, e.key, e.value);
      else if (e.key == "rate_model") {
        if (e.value == "equal") cfg.params.rate_model = RateModel::Equal;
        else if (e.value == "cubic") cfg.params.rate_model = RateModel::Cubic;
        else errors.push_back(e.where + ": key 'rate_model': expected equal or cubic, got '" + e.value + "'");
      } else if (e.key.rfind("physical.", 0) == 0) {
        if (!cfg.params.physical) cfg.params.physical = PhysicalInputs{};
        const double d = parse_double(e.where, e.key, e.value);
        if (e.key == "physical.d") cfg.params.physical->d = d;
        else if (e.key == "physical.omega21") cfg.params.physical->omega21 = d;
        else if (e.key == "physical.omegaL") cfg.params.physical->omegaL = d;
        else if (e.key == "physical.Nbar") cfg.params.physical->Nbar = d;
        else if (e.key == "physical.E2") cfg.params.physical->E2 = d;
      } else if (e.key == "mode") {
        cfg.mode = run_mode_from_string(e.value);
        mode_set = true;
      } else if (e.key == "sweep_param") cfg.sweep_param = e.value;
      else if (e.key == "sweep_min") cfg.sweep_min = parse_double(e.where, e.key, e.value);
      else if (e.key == "sweep_max") cfg.sweep_max = parse_double(e.where, e.key, e.value);
      else if (e.key == "sweep_points") cfg.sweep_points = static_cast<int>(parse_int(e.where, e.key, e.value));
      else if (e.key == "grid_min") cfg.grid_min = parse_double(e.where, e.key, e.value);
      else if (e.key == "grid_max") cfg.grid_max = parse_double(e.where, e.key, e.value);
      else if (e.key == "grid_points") cfg.grid_points = static_cast<int>(parse_int(e.where, e.key, e.value));
      else if (e.key == "out") cfg.out = e.value;
      else if (e.key == "in") cfg.in = e.value;
      else if (e.key == "regime_K") cfg.regime_K = parse_double(e.where, e.key, e.value);
      else if (e.key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(e.where, e.key, e.value));
      else if (e.key == "oracle_draws") cfg.oracle_draws = static_cast<int>(parse_int(e.where, e.key, e.value));
      else if (e.key == "tol_single") cfg.tol_single = parse_double(e.where, e.key, e.value);
      else if (e.key == "tol_collective") cfg.tol_collective = parse_double(e.where, e.key, e.value);
      else if (e.key == "tol_offdiag") cfg.tol_offdiag = parse_double(e.where, e.key, e.value);
      else if (e.key == "rz_source") {
        if (e.value != "single" && e.value != "collective") {
          errors.push_back(e.where + ": key 'rz_source': expected single or collective, got '" + e.value + "'");
        } else cfg.rz_source = e.value;
      } else if (e.key == "freq_units") {
        if (e.value != "gamma" && e.value != "n_gamma") {
          errors.push_back(e.where + ": key 'freq_units': expected gamma or n_gamma, got '" + e.value + "'");
        } else cfg.freq_units = e.value;
      } else if (e.key == "threads") cfg.threads = static_cast<int>(parse_int(e.where, e.key, e.value));
    } catch (const ConfigError& ce) {
      errors.push_back(ce.what());
    }
  }

  // Required keys, collected in one report.
  std::vector<std::string> missing;
  if (!given.count("Omega")) missing.push_back("Omega");
  if (!given.count("omega")) missing.push_back("omega");
  if (!mode_set) missing.push_back("mode");
  if (mode_set && cfg.mode != RunMode::OracleCheck && !given.count("out")) missing.push_back("out");
  if (mode_set && cfg.mode == RunMode::Extract && !given.count("physical.E2")) {
    missing.push_back("physical.E2");
  }
  if (!missing.empty()) {
    std::string msg = "missing required key(s):";
    for (const auto& k : missing) msg += " " + k;
    errors.push_back(msg);
  }

  if (errors.empty()) {
    if (given.count("Delta") && given.count("delta_over_2omega")) {
      errors.push_back("keys 'Delta' and 'delta_over_2omega' are mutually exclusive");
    }
    if (cfg.params.N < 1) errors.push_back("key 'N': must be >= 1");
    if (cfg.sweep_points < 2) errors.push_back("key 'sweep_points': must be >= 2");
    if (cfg.grid_points < 2) errors.push_back("key 'grid_points': must be >= 2");
    if (!(cfg.sweep_max > cfg.sweep_min)) errors.push_back("sweep bounds: need sweep_max > sweep_min");
    if (!(cfg.grid_max > cfg.grid_min)) errors.push_back("grid bounds: need grid_max > grid_min");
    if (!(cfg.params.gamma_ref > 0.0)) errors.push_back("key 'gamma_ref': must be > 0");
    if (!(cfg.params.omega > 0.0)) errors.push_back("key 'omega': must be > 0");
    if (cfg.params.Omega < 0.0) errors.push_back("key 'Omega': must be >= 0");
    if (cfg.params.G < 0.0) errors.push_back("key 'G': must be >= 0");
    if (cfg.oracle_draws < 1) errors.push_back("key 'oracle_draws': must be >= 1");
    static const std::vector<std::string> sweepable = {"delta_over_2omega", "Delta", "Omega", "G", "omega"};
    if (std::find(sweepable.begin(), sweepable.end(), cfg.sweep_param) == sweepable.end()) {
      errors.push_back("key 'sweep_param': '" + cfg.sweep_param +
                       "' is not sweepable (use delta_over_2omega, Delta, Omega, G or omega)");
    }
  }

  if (!errors.empty()) {
    std::string msg;
    for (size_t i = 0; i < errors.size(); ++i) {
      if (i) msg += "\n";
      msg += errors[i];
    }
    throw ConfigError(msg);
  }

  // The figures quote Omega and omega in units of N*gamma; the literal
  // n_gamma reading scales them (and a directly-given Delta) by N. G stays
  // in gamma units.
  if (cfg.freq_units == "n_gamma" && cfg.params.N > 1) {
    cfg.params.Omega *= cfg.params.N;
    cfg.params.omega *= cfg.params.N;
    cfg.params.Delta *= cfg.params.N;
  }
  if (given.count("delta_over_2omega")) {
    const double r = parse_double("key", "delta_over_2omega", given["delta_over_2omega"]);
    cfg.params.Delta = 2.0 * cfg.params.Omega * r;
  }

  // Effective parameter echo in canonical order.
  auto add = [&](const std::string& k, const std::string& v) { cfg.echo.emplace_back(k, v); };
  add("mode", to_string(cfg.mode));
  add("Omega", fmt_double(cfg.params.Omega));
  add("Delta", fmt_double(cfg.params.Delta));
  add("G", fmt_double(cfg.params.G));
  add("omega", fmt_double(cfg.params.omega));
  add("N", std::to_string(cfg.params.N));
  add("gamma_ref", fmt_double(cfg.params.gamma_ref));
  add("rate_model", cfg.params.rate_model == RateModel::Equal ? "equal" : "cubic");
  add("delta_bar_shift", cfg.params.delta_bar_shift ? "true" : "false");
  if (cfg.params.physical) {
    add("physical.d", fmt_double(cfg.params.physical->d));
    add("physical.omega21", fmt_double(cfg.params.physical->omega21));
    add("physical.omegaL", fmt_double(cfg.params.physical->omegaL));
    add("physical.Nbar", fmt_double(cfg.params.physical->Nbar));
    add("physical.E2", fmt_double(cfg.params.physical->E2));
  }
  add("sweep_param", cfg.sweep_param);
  add("sweep_min", fmt_double(cfg.sweep_min));
  add("sweep_max", fmt_double(cfg.sweep_max));
  add("sweep_points", std::to_string(cfg.sweep_points));
  add("grid_min", fmt_double(cfg.grid_min));
  add("grid_max", fmt_double(cfg.grid_max));
  add("grid_points", std::to_string(cfg.grid_points));
  add("regime_K", fmt_double(cfg.regime_K));
  add("seed", std::to_string(cfg.seed));
  add("oracle_draws", std::to_string(cfg.oracle_draws));
  add("tol_single", fmt_double(cfg.tol_single));
  add("tol_collective", fmt_double(cfg.tol_collective));
  add("tol_offdiag", fmt_double(cfg.tol_offdiag));
  add("rz_source", cfg.rz_source);
  add("freq_units", cfg.freq_units);
  return cfg;
}

}  // namespace pdi
