#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pdi/config.hpp"
#include "pdi/sweep.hpp"
#include "test_util.hpp"

using namespace pdi;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

const char* kSweepConfig =
    "# standard inversion sweep\n"
    "mode = inversion-sweep\n"
    "Omega = 45\n"
    "omega = 100\n"
    "G = 16\n"
    "sweep_param = delta_over_2omega\n"
    "sweep_min = -1\n"
    "sweep_max = 1\n"
    "sweep_points = 801\n"
    "out = sweep.csv\n";

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("minimal sweep config echoes the working-point values") {
  for (double g : {0.0, 16.0, 24.0}) {
    std::string text = kSweepConfig;
    const auto cfg = parse_config(text, {{"G", std::to_string(g)}});
    CHECK(cfg.mode == RunMode::InversionSweep);
    CHECK(cfg.params.Omega == 45.0);
    CHECK(cfg.params.omega == 100.0);
    CHECK(cfg.params.G == g);
    CHECK(cfg.sweep_points == 801);
    CHECK(cfg.out == "sweep.csv");
  }
}

TEST_CASE("empty input lists every missing required key") {
  try {
    (void)parse_config("");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("missing required key") != std::string::npos);
    CHECK(msg.find("Omega") != std::string::npos);
    CHECK(msg.find("omega") != std::string::npos);
    CHECK(msg.find("mode") != std::string::npos);
  }
}

TEST_CASE("unknown keys suggest the nearest valid spelling") {
  try {
    (void)parse_config("mode = spectrum\nOmga = 45\nomega = 100\nout = x.csv\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unknown key 'Omga'") != std::string::npos);
    CHECK(msg.find("did you mean 'Omega'") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("type mismatches carry the line number") {
  try {
    (void)parse_config("mode = spectrum\nOmega = abc\nomega = 100\nout = x.csv\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("real number") != std::string::npos);
  }
}

TEST_CASE("Delta and delta_over_2omega are mutually exclusive") {
  CHECK_THROWS_AS(
      (void)parse_config(
          "mode = spectrum\nOmega = 45\nomega = 100\nDelta = 3\ndelta_over_2omega = 0.4\nout = x\n"),
      ConfigError);
}

TEST_CASE("delta_over_2omega resolves against the scaled Omega") {
  const auto cfg = parse_config(
      "mode = collective-sweep\nOmega = 45\nomega = 100\nG = 16\nN = 50\n"
      "delta_over_2omega = 0.43\nout = x.csv\n");
  // default literal n_gamma units: Omega and omega scale with N
  CHECK(cfg.params.Omega == 45.0 * 50);
  CHECK(cfg.params.omega == 100.0 * 50);
  CHECK(cfg.params.Delta == doctest::Approx(2 * 45.0 * 50 * 0.43));
  CHECK(cfg.params.G == 16.0);  // G stays in gamma units

  const auto cfg2 = parse_config(
      "mode = collective-sweep\nOmega = 45\nomega = 100\nG = 16\nN = 50\n"
      "freq_units = gamma\ndelta_over_2omega = 0.43\nout = x.csv\n");
  CHECK(cfg2.params.Omega == 45.0);
  CHECK(cfg2.params.Delta == doctest::Approx(2 * 45.0 * 0.43));
}

TEST_CASE("extract mode requires physical.E2") {
  try {
    (void)parse_config("mode = extract\nOmega = 45\nomega = 100\nout = x.csv\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("physical.E2") != std::string::npos);
  }
}

TEST_CASE("overrides win over file values and are reported as options") {
  const auto cfg = parse_config(kSweepConfig, {{"sweep_points", "21"}});
  CHECK(cfg.sweep_points == 21);
  try {
    (void)parse_config(kSweepConfig, {{"sweep_points", "x"}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("option --sweep_points") != std::string::npos);
  }
}

TEST_CASE("sweep and grid bounds are validated") {
  CHECK_THROWS_AS((void)parse_config(kSweepConfig, {{"sweep_points", "1"}}), ConfigError);
  CHECK_THROWS_AS((void)parse_config(kSweepConfig, {{"sweep_min", "2"}, {"sweep_max", "1"}}),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_config(kSweepConfig, {{"sweep_param", "theta"}}), ConfigError);
}

TEST_CASE("identical config and seed produce byte-identical CSV") {
  auto cfg = parse_config(kSweepConfig, {{"sweep_points", "41"}});
  const std::string out1 = "det_run1.csv";
  const std::string out2 = "det_run2.csv";
  const auto r1 = evaluate_run(cfg);
  write_csv(cfg, r1, out1);
  cfg.threads = 1;  // worker count must not affect bytes
  const auto r2 = evaluate_run(cfg);
  write_csv(cfg, r2, out2);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(!slurp(out1).empty());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("per-point errors land in the error column instead of aborting") {
  // sweeping Omega through zero makes the dressing degenerate pointwise
  auto cfg = parse_config(
      "mode = inversion-sweep\nOmega = 45\nomega = 100\nG = 16\n"
      "sweep_param = Omega\nsweep_min = -1\nsweep_max = 1\nsweep_points = 5\nout = x.csv\n");
  const auto r = evaluate_run(cfg);
  REQUIRE(r.rows.size() == 5);
  int with_error = 0, clean = 0;
  for (const auto& row : r.rows) {
    if (row.error.empty()) ++clean;
    else ++with_error;
  }
  CHECK(with_error >= 2);  // Omega <= 0 points
  CHECK(clean >= 1);       // Omega > 0 points still computed
}

TEST_CASE("collective-sweep rows carry the x, Rz_tilde and Sz_per_N columns") {
  const auto cfg = parse_config(
      "mode = collective-sweep\nOmega = 45\nomega = 100\nG = 16\nN = 50\n"
      "freq_units = gamma\nsweep_points = 41\nout = x.csv\n");
  const auto r = evaluate_run(cfg);
  REQUIRE(r.columns.size() == 9);
  CHECK(r.columns[5] == "x");
  CHECK(r.columns[6] == "Rz_tilde");
  CHECK(r.columns[7] == "Sz_per_N");
  for (const auto& row : r.rows) {
    if (!row.error.empty()) continue;
    CHECK(row.values[5] > 0.0);
    CHECK(std::abs(row.values[6]) <= 50.0);
    CHECK(std::abs(row.values[7]) <= 0.5);
  }
}

TEST_CASE("spectrum mode emits chi and the refractive index where defined") {
  const auto cfg = parse_config(
      "mode = spectrum\nOmega = 45\nomega = 100\nG = 16\ndelta_over_2omega = -0.43\n"
      "gamma_ref = 2.6e6\n"
      "physical.d = 1\nphysical.omega21 = 4.8e15\nphysical.omegaL = 4.8e15\n"
      "physical.Nbar = 1e17\nphysical.E2 = 1\n"
      "grid_min = -250\ngrid_max = 250\ngrid_points = 2001\nout = x.csv\n");
  const auto r = evaluate_run(cfg);
  REQUIRE(r.columns == std::vector<std::string>({"delta_p", "re_chi", "im_chi", "n", "error"}));
  int with_n = 0, breakdown = 0;
  for (const auto& row : r.rows) {
    CHECK(std::isfinite(row.values[1]));
    CHECK(std::isfinite(row.values[2]));
    if (row.error.empty() && std::isfinite(row.values[3])) ++with_n;
    if (!row.error.empty()) ++breakdown;
  }
  CHECK(with_n > 0);
  // strong negative dispersion makes 1 + 4 pi chi' dip below zero somewhere
  CHECK(breakdown > 0);
}

TEST_CASE("extract mode recovers the dipole difference end to end") {
  const auto cfg = parse_config(
      "mode = extract\nOmega = 45\nomega = 100\nG = 16\ndelta_over_2omega = 0.43\n"
      "gamma_ref = 2594742.011\n"
      "physical.d = 1\nphysical.E2 = 4.37847e-4\nout = x.csv\n");
  const auto r = evaluate_run(cfg);
  REQUIRE(r.columns ==
          std::vector<std::string>({"S_measured", "G_R", "G", "d_diff_debye"}));
  REQUIRE(r.rows.size() == 1);
  // E2 chosen so G/gamma = 16 corresponds to |d22-d11| = 100 Debye
  CHECK(r.rows[0].values[2] == doctest::Approx(16.0).epsilon(0.03));
  CHECK(r.rows[0].values[3] == doctest::Approx(100.0).epsilon(0.05));
}

TEST_CASE("oracle-check mode writes its error table and returns the exit code") {
  auto cfg = parse_config(
      "mode = oracle-check\nOmega = 45\nomega = 100\nG = 16\ndelta_over_2omega = 0.43\n"
      "oracle_draws = 3\nseed = 11\nout = oracle_table.csv\n");
  const int code = run_sweep(cfg);
  CHECK(code == 0);
  const std::string table = slurp("oracle_table.csv");
  CHECK(table.find("check_id,N,max_rel_err,tolerance,pass") != std::string::npos);
  std::remove("oracle_table.csv");
  std::remove("oracle_table.csv.meta.jsonl");

  // an unreachable tolerance trips exit code 2
  cfg = parse_config(
      "mode = oracle-check\nOmega = 45\nomega = 100\nG = 16\ndelta_over_2omega = 0.43\n"
      "oracle_draws = 3\nseed = 11\ntol_single = 1e-18\n");
  CHECK(evaluate_run(cfg).exit_code == 2);
}

TEST_CASE("cubic rate model runs end to end and differs from equal rates") {
  const std::string common =
      "mode = collective-sweep\nOmega = 45\nomega = 100\nG = 16\nN = 4\n"
      "freq_units = gamma\nsweep_points = 11\ngamma_ref = 2594742.011\n"
      "physical.d = 1\nphysical.omega21 = 4.8e15\nphysical.omegaL = 4.8e15\n"
      "physical.Nbar = 1e17\nphysical.E2 = 1\nout = x.csv\n";
  const auto re = evaluate_run(parse_config(common));
  const auto rc = evaluate_run(parse_config(common + "rate_model = cubic\n"));
  REQUIRE(re.rows.size() == rc.rows.size());
  bool differs = false;
  for (size_t i = 0; i < re.rows.size(); ++i) {
    if (!re.rows[i].error.empty() || !rc.rows[i].error.empty()) continue;
    const double xe = re.rows[i].values[5], xc = rc.rows[i].values[5];
    CHECK(pdi::test::close_rel(xe, xc, 1e-4));  // omegaL >> sidebands: tiny shift
    differs = differs || xe != xc;
  }
  CHECK(differs);
}

TEST_CASE("golden CSV regression for a small verified sweep") {
  const std::string golden_path = std::string(PDI_TEST_DATA_DIR) + "/inversion_sweep_21pt.csv";
  const std::string text = kSweepConfig;
  auto cfg = parse_config(text, {{"sweep_points", "21"}});
  const auto r = evaluate_run(cfg);
  const std::string out = "golden_check.csv";
  write_csv(cfg, r, out);
  const std::string expected = slurp(golden_path);
  if (expected.empty()) {
    MESSAGE("golden file missing; writing a fresh candidate next to the build");
    CHECK(false);
  } else {
    CHECK(slurp(out) == expected);
  }
  std::remove(out.c_str());
}

TEST_SUITE_END();
