#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pdi/params.hpp"

namespace pdi {

enum class RunMode {
  InversionSweep,
  CoherenceSweep,
  CollectiveSweep,
  Spectrum,
  OracleCheck,
  Extract,
};

std::string to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);  // throws ConfigError

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fully validated run description. Frequencies inside `params` are already
// in internal gamma_ref units (the n_gamma interpretation, when selected,
// has been applied).
struct RunConfig {
  RunMode mode = RunMode::InversionSweep;
  SystemParams params;

  std::string sweep_param = "delta_over_2omega";
  double sweep_min = -1.0;
  double sweep_max = 1.0;
  int sweep_points = 801;

  double grid_min = -250.0;  // probe-detuning grid for spectrum/extract
  double grid_max = 250.0;
  int grid_points = 10001;

  std::string out;  // output CSV path
  std::string in;   // optional input spectrum CSV for extract mode

  double regime_K = 10.0;
  std::uint64_t seed = 42;
  int oracle_draws = 100;
  double tol_single = 1e-8;
  double tol_collective = 1e-6;
  double tol_offdiag = 1e-8;

  std::string rz_source = "single";    // "single" | "collective": which <Rz~> feeds chi
  std::string freq_units = "n_gamma";  // "n_gamma" | "gamma": how Omega, Delta, omega scale with N
  int threads = 0;                     // 0 = hardware concurrency

  // raw key/value echo in input order, for the metadata sidecar
  std::vector<std::pair<std::string, std::string>> echo;
};

// Parses flat `key = value` configuration text (# comments, UTF-8).
// `overrides` are applied on top, in order; each is reported in
// diagnostics as "option --key". Unknown keys are hard errors carrying the
// nearest valid spelling; missing required keys are all listed in one
// error; every diagnostic that originates from the file is line-numbered.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});

// The canonical key list (config file keys and CLI flags coincide).
const std::vector<std::string>& config_keys();

}  // namespace pdi
