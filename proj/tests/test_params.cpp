#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdi/params.hpp"
#include "pdi/sweep.hpp"
#include "test_util.hpp"

using namespace pdi;
using pdi::test::make_params;
using std::numbers::pi;

TEST_SUITE_BEGIN("params");

TEST_CASE("derive_dressed on resonance") {
  const auto f = derive_dressed(make_params(45, 0, 16, 100));
  CHECK(f.theta == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(f.Omega_bar == 45.0);
  CHECK(f.G_bar == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(f.Delta_bar == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK(f.omega == 100.0);
}

TEST_CASE("derive_dressed off resonance matches the defining formulas") {
  const auto f = derive_dressed(make_params(45, 38.7, 16, 100));
  CHECK(f.Omega_bar == std::hypot(45.0, 38.7 / 2));
  CHECK(f.theta == 0.5 * std::atan2(90.0, 38.7));
  // frozen high-precision reference values
  CHECK(f.theta == doctest::Approx(0.582349134238640).epsilon(1e-14));
  CHECK(f.Omega_bar == doctest::Approx(48.9839004163613).epsilon(1e-14));
  CHECK(f.G_bar == doctest::Approx(3.67467675032014).epsilon(1e-14));
  CHECK(f.Delta_bar == doctest::Approx(-1.01609958363871).epsilon(1e-12));
}

TEST_CASE("derive_dressed with G = 0 on resonance kills G_bar and Gamma_minus") {
  const auto f = derive_dressed(make_params(45, 0, 0, 100));
  CHECK(f.G_bar == 0.0);
  CHECK(f.Gamma_minus == 0.0);
}

TEST_CASE("derive_dressed rejects Omega = 0") {
  CHECK_THROWS_AS((void)derive_dressed(make_params(0, 10, 16, 100)), std::invalid_argument);
}

TEST_CASE("mixing angle branch: tan(2 theta) Delta = 2 Omega, monotone, reflection") {
  UniformRng rng(11);
  double prev_theta = pi / 2;
  for (int i = 0; i < 200; ++i) {
    const double Omega = rng.uniform(1.0, 90.0);
    const double Delta = rng.uniform(-180.0, 180.0);
    const auto f = derive_dressed(make_params(Omega, Delta, 5, 100));
    CHECK(f.theta > 0.0);
    CHECK(f.theta < pi / 2);
    if (std::abs(Delta) > 1e-3) {
      CHECK(std::tan(2 * f.theta) * Delta == doctest::Approx(2 * Omega).epsilon(1e-10));
    }
    const auto fr = derive_dressed(make_params(Omega, -Delta, 5, 100));
    CHECK(fr.theta == doctest::Approx(pi / 2 - f.theta).epsilon(1e-12));
    CHECK(fr.Omega_bar == f.Omega_bar);
    // Gamma_minus = -cos(2 theta), so it vanishes only on resonance
    CHECK(f.Gamma_minus == doctest::Approx(-std::cos(2 * f.theta)).epsilon(1e-12));
    CHECK(f.Gamma_plus > 0.0);
    CHECK(f.Gamma > f.Gamma_plus - 1e-15);
    CHECK(f.Omega_bar * f.Omega_bar ==
          doctest::Approx(Omega * Omega + Delta * Delta / 4).epsilon(1e-13));
  }
  // strict decrease along a Delta scan at fixed Omega
  for (double d = -120; d <= 120; d += 7.5) {
    const auto f = derive_dressed(make_params(40, d, 5, 100));
    CHECK(f.theta < prev_theta);
    prev_theta = f.theta;
  }
}

TEST_CASE("Delta_bar shift flag adds G_bar^2 / (2 omega)") {
  auto p = make_params(45, 38.7, 16, 100);
  const auto f0 = derive_dressed(p);
  p.delta_bar_shift = true;
  const auto f1 = derive_dressed(p);
  CHECK(f1.Delta_bar ==
        doctest::Approx(f0.Delta_bar + f0.G_bar * f0.G_bar / 200.0).epsilon(1e-13));
}

TEST_CASE("double dressing at theta = phi = pi/4 (Equal rates)") {
  // omega = 2 Omega_bar puts Delta_bar at zero, so phi = pi/4.
  const auto p = make_params(45, 0, 16, 90);
  const auto f = derive_dressed(p);
  REQUIRE(f.Delta_bar == doctest::Approx(0.0).epsilon(1e-15));
  const auto g = derive_double_dressed(f, p);
  CHECK(g.phi == doctest::Approx(pi / 4).epsilon(1e-15));
  // cos(2 phi) = 0 kills the first term of Gamma0_bar; the sideband pair
  // contributes (1/4 + 1/4)/4.
  CHECK(g.Gamma0_bar == doctest::Approx(1.0 / 8.0).epsilon(1e-14));
  // hand-evaluated three-term sums with sin 2theta = 1, sin phi = cos phi = 1/sqrt(2)
  CHECK(g.Gammaplus_bar == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  CHECK(g.Gammaminus_bar == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  CHECK(g.x == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.eta == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("double dressing frozen reference at the standard working point") {
  const auto p = pdi::test::working_point_pos();
  const auto g = derive_double_dressed(derive_dressed(p), p);
  CHECK(g.phi == doctest::Approx(0.920284775060438).epsilon(1e-13));
  CHECK(g.G_R == doctest::Approx(3.81257230530965).epsilon(1e-13));
  CHECK(g.Gamma0_bar == doctest::Approx(0.149228051389616).epsilon(1e-12));
  CHECK(g.Gammaplus_bar == doctest::Approx(0.298131959014414).epsilon(1e-12));
  CHECK(g.Gammaminus_bar == doctest::Approx(0.403411938206354).epsilon(1e-12));
  CHECK(g.x == doctest::Approx(0.739026118909533).epsilon(1e-12));
  CHECK(g.Gamma_s == doctest::Approx(1.29845610277923).epsilon(1e-12));
}

TEST_CASE("double-dressed frame identities on a random grid") {
  UniformRng rng(23);
  for (int i = 0; i < 200; ++i) {
    auto p = make_params(rng.uniform(5, 80), rng.uniform(-150, 150), rng.uniform(0.5, 30),
                         rng.uniform(20, 300));
    const auto f = derive_dressed(p);
    const auto g = derive_double_dressed(f, p);
    CHECK(g.G_R * g.G_R ==
          doctest::Approx(f.Delta_bar * f.Delta_bar + f.G_bar * f.G_bar).epsilon(1e-12));
    CHECK(g.Gamma_s ==
          doctest::Approx(4 * g.Gamma0_bar + g.Gammaplus_bar + g.Gammaminus_bar).epsilon(1e-13));
    if (f.G_bar > 1e-12) {
      CHECK(std::cos(2 * g.phi) / std::sin(2 * g.phi) * f.G_bar ==
            doctest::Approx(f.Delta_bar).epsilon(1e-9));
    }
    // flipping Delta_bar mirrors phi and exchanges the ladder rates
    DressedFrame fm = f;
    fm.Delta_bar = -f.Delta_bar;
    const auto gm = derive_double_dressed(fm, p);
    CHECK(gm.phi == doctest::Approx(pi / 2 - g.phi).epsilon(1e-12));
    CHECK(gm.Gammaplus_bar == doctest::Approx(g.Gammaminus_bar).epsilon(1e-12));
    CHECK(gm.Gammaminus_bar == doctest::Approx(g.Gammaplus_bar).epsilon(1e-12));
    CHECK(gm.Gamma0_bar == doctest::Approx(g.Gamma0_bar).epsilon(1e-12));
  }
}

TEST_CASE("double dressing rejects a fully degenerate frame") {
  // G = 0 and omega = 2 Omega_bar leave both G_bar and Delta_bar at zero.
  const auto p = make_params(45, 0, 0, 90);
  const auto f = derive_dressed(p);
  CHECK_THROWS_AS((void)derive_double_dressed(f, p), std::invalid_argument);
}

TEST_CASE("cubic rate model tracks the frequency-cubed law") {
  auto p = pdi::test::working_point_pos();
  p.rate_model = RateModel::Cubic;
  CHECK_THROWS_AS((void)derive_double_dressed(derive_dressed(p), p), std::invalid_argument);

  p.physical = PhysicalInputs{1.0, 4.8e15, 4.8e15, 0.0, 0.0};
  p.gamma_ref = spontaneous_rate(4.8e15, 1.0);
  const auto f = derive_dressed(p);
  const auto gc = derive_double_dressed(f, p);
  p.rate_model = RateModel::Equal;
  const auto ge = derive_double_dressed(f, p);
  // sidebands sit at omegaL +- O(100 gamma); relative rate shifts are
  // 3 * offset * gamma / omegaL ~ 1e-7, so Cubic must stay near Equal
  CHECK(pdi::test::close_rel(gc.Gammaplus_bar, ge.Gammaplus_bar, 1e-5));
  CHECK(pdi::test::close_rel(gc.Gammaminus_bar, ge.Gammaminus_bar, 1e-5));
  CHECK(gc.Gammaplus_bar != ge.Gammaplus_bar);
}

TEST_CASE("spontaneous_rate anchors, scalings and argument checks") {
  const double g = spontaneous_rate(4.8e15, 1.0);
  CHECK(g == doctest::Approx(2.6e6).epsilon(0.05));  // gamma-globulin anchor
  CHECK(spontaneous_rate(2 * 4.8e15, 1.0) == doctest::Approx(8.0 * g).epsilon(1e-13));
  CHECK(spontaneous_rate(4.8e15, 2.0) == doctest::Approx(4.0 * g).epsilon(1e-13));
  CHECK_THROWS_AS((void)spontaneous_rate(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)spontaneous_rate(4.8e15, 0.0), std::invalid_argument);
}

TEST_CASE("check_regime regression fixture at the standard working point") {
  // Omega=45, Delta=0, G=16, omega=100, K=10: the only binding inequality
  // is G_R >> gamma with G_R = sqrt(41) ~ 6.4.
  const auto v = check_regime(make_params(45, 0, 16, 100), 10.0);
  REQUIRE(v.size() == 1);
  CHECK(v[0].name == "G_R >> gamma");
  CHECK(v[0].margin == doctest::Approx(std::sqrt(41.0) / 10.0).epsilon(1e-12));
}

TEST_CASE("check_regime flags a weak drive and honors K") {
  const auto v = check_regime(make_params(0.5, 0, 0, 100), 10.0);
  bool found = false;
  for (const auto& viol : v) found = found || viol.name == "Omega_bar >> gamma";
  CHECK(found);

  // K = 1: every inequality passes as a plain strict comparison
  CHECK(check_regime(make_params(45, 0, 16, 100), 1.0).empty());
}

TEST_CASE("check_regime never throws, even for Omega = 0") {
  const auto v = check_regime(make_params(0, 0, 16, 100), 10.0);
  CHECK(!v.empty());
}

TEST_SUITE_END();
