#include <doctest.h>

#include <cmath>
#include <complex>

#include "pdi/dressed.hpp"
#include "pdi/sweep.hpp"
#include "test_util.hpp"

using namespace pdi;
using pdi::test::make_params;

TEST_SUITE_BEGIN("dressed");

TEST_CASE("steady coherence vanishes without the pump or without asymmetry") {
  // G = 0: zero numerator
  const auto f0 = derive_dressed(make_params(45, 38.7, 0, 100));
  CHECK(steady_coherence(f0) == std::complex<double>(0, 0));
  // on resonance Gamma_minus = 0 forces <Rz> = 0 and with it <R+>
  const auto f1 = derive_dressed(make_params(45, 0, 16, 100));
  CHECK(steady_inversion_dressed(f1) == 0.0);
  CHECK(std::abs(steady_coherence(f1)) == 0.0);
}

TEST_CASE("steady inversion reduces to Gamma_minus/Gamma_plus without the pump") {
  const auto f = derive_dressed(make_params(45, 38.7, 0, 100));
  CHECK(steady_inversion_dressed(f) ==
        doctest::Approx(f.Gamma_minus / f.Gamma_plus).epsilon(1e-14));
}

TEST_CASE("both bare-inversion routes agree to machine precision") {
  UniformRng rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto p = make_params(rng.uniform(5, 80), rng.uniform(-150, 150),
                               rng.uniform(0, 30), rng.uniform(20, 300));
    const auto f = derive_dressed(p);
    const double a = bare_inversion_single(f);
    const double b = bare_inversion_single_combined(f);
    CHECK(std::abs(a - b) <= 1e-12 * std::max({std::abs(a), std::abs(b), 1e-6}));
  }
}

TEST_CASE("no inversion without permanent dipoles") {
  // G = 0 pins <Sz> = -cos^2(2 theta) / (2 Gamma_plus) <= 0 everywhere
  for (int i = 0; i <= 200; ++i) {
    const double r = -1.0 + 2.0 * i / 200.0;
    const auto f = derive_dressed(make_params(45, 2 * 45 * r, 0, 100));
    CHECK(bare_inversion_single(f) <= 0.0);
    CHECK(std::abs(steady_coherence(f)) == 0.0);
  }
}

TEST_CASE("bare inversion vanishes on resonance") {
  const auto f = derive_dressed(make_params(45, 0, 16, 100));
  CHECK(bare_inversion_single(f) == 0.0);
}

TEST_CASE("inversion window exists with permanent dipoles and rides on Re<R+>") {
  int positive = 0;
  for (int i = 0; i <= 400; ++i) {
    const double r = -1.0 + 2.0 * i / 400.0;
    const auto f = derive_dressed(make_params(45, 2 * 45 * r, 16, 100));
    const auto s = steady_state_single(f);
    if (s.Sz > 0.0) {
      ++positive;
      CHECK(s.Rplus.real() < 0.0);
      // the coherence term must beat the (always nonpositive) population term
      const double pop = 0.5 * std::cos(2 * f.theta) * s.Rz;
      const double coh = -std::sin(2 * f.theta) * s.Rplus.real();
      CHECK(std::abs(coh) > std::abs(pop));
    }
  }
  CHECK(positive > 0);
}

TEST_CASE("steady-state observables respect their bounds") {
  UniformRng rng(53);
  for (int i = 0; i < 300; ++i) {
    const auto p = make_params(rng.uniform(1, 90), rng.uniform(-200, 200),
                               rng.uniform(0, 40), rng.uniform(10, 400));
    const auto s = steady_state_single(derive_dressed(p));
    CHECK(std::abs(s.Rz) <= 1.0 + 1e-14);
    CHECK(std::abs(s.Sz) <= 0.5 + 1e-14);
    CHECK(std::abs(s.Rplus) <= 0.5 + 1e-14);
  }
}

TEST_CASE("analytic steady state is a fixed point of the Bloch equations") {
  UniformRng rng(37);
  for (int i = 0; i < 200; ++i) {
    const auto p = make_params(rng.uniform(5, 80), rng.uniform(-150, 150),
                               rng.uniform(0, 30), rng.uniform(20, 300));
    const auto f = derive_dressed(p);
    const auto s = steady_state_single(f);
    const auto d = bloch_rhs(f, {s.Rz, s.Rplus});
    CHECK(std::abs(d.Rz) < 1e-12);
    CHECK(std::abs(d.Rplus) < 1e-12);
  }
}

TEST_CASE("without the pump the rate-equation fixed point is Gamma_minus/Gamma_plus") {
  const auto f = derive_dressed(make_params(45, 60, 0, 100));
  const auto d = bloch_rhs(f, {f.Gamma_minus / f.Gamma_plus, {0, 0}});
  CHECK(std::abs(d.Rz) < 1e-15);
  CHECK(std::abs(d.Rplus) < 1e-15);
}

TEST_SUITE_END();
