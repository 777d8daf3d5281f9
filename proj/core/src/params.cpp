#include "pdi/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pdi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double v) { return v * v; }

// gamma(omegaL + offset * gamma_ref) in units of gamma_ref. Equal model
// collapses every factor to 1.
double rate_factor(const SystemParams& p, double offset) {
  if (p.rate_model == RateModel::Equal) return 1.0;
  if (!p.physical || p.physical->d <= 0.0 || p.physical->omegaL <= 0.0) {
    throw std::invalid_argument(
        "rate_model = cubic requires the physical block (physical.d, physical.omegaL)");
  }
  const double w = p.physical->omegaL + offset * p.gamma_ref;
  return spontaneous_rate(w, p.physical->d) / p.gamma_ref;
}

}  // namespace

void SystemParams::validate() const {
  if (!(Omega >= 0.0)) throw std::invalid_argument("Omega must be >= 0");
  if (!(G >= 0.0)) throw std::invalid_argument("G must be >= 0");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(gamma_ref > 0.0)) throw std::invalid_argument("gamma_ref must be > 0");
  if (physical) {
    if (!(physical->d >= 0.0)) throw std::invalid_argument("physical.d must be >= 0");
    if (!(physical->Nbar >= 0.0)) throw std::invalid_argument("physical.Nbar must be >= 0");
  }
}

DressedFrame derive_dressed(const SystemParams& p) {
  if (!(p.Omega > 0.0)) {
    throw std::invalid_argument("derive_dressed: Omega = 0 leaves the mixing angle degenerate");
  }
  if (!(p.omega > 0.0)) throw std::invalid_argument("derive_dressed: omega must be > 0");

  DressedFrame f{};
  f.theta = 0.5 * std::atan2(2.0 * p.Omega, p.Delta);  // continuous through Delta = 0
  f.Omega_bar = std::hypot(p.Omega, 0.5 * p.Delta);
  // exact trig of the mixing angle: cos 2theta = Delta/(2 Omega_bar),
  // sin 2theta = Omega/Omega_bar, so Delta = 0 symmetries hold bitwise
  f.cos_2theta = 0.5 * p.Delta / f.Omega_bar;
  f.sin_2theta = p.Omega / f.Omega_bar;
  f.G_bar = 0.25 * p.G * f.sin_2theta;
  f.Delta_bar = f.Omega_bar - 0.5 * p.omega;
  if (p.delta_bar_shift) f.Delta_bar += sq(f.G_bar) / (2.0 * p.omega);

  // sin^4 + cos^4 = 1 - sin^2(2theta)/2 and sin^4 - cos^4 = -cos(2theta)
  f.Gamma_plus = 1.0 - 0.5 * sq(f.sin_2theta);
  f.Gamma_minus = -f.cos_2theta;
  f.Gamma = 1.0 + 0.5 * sq(f.sin_2theta);
  f.omega = p.omega;
  return f;
}

DoubleDressedFrame derive_double_dressed(const DressedFrame& f, const SystemParams& p) {
  DoubleDressedFrame g{};
  g.G_R = std::hypot(f.Delta_bar, f.G_bar);
  if (!(g.G_R > 0.0)) {
    throw std::invalid_argument(
        "derive_double_dressed: G_R = 0 (G_bar and Delta_bar both vanish), phi undefined");
  }
  g.phi = 0.5 * std::atan2(f.G_bar, f.Delta_bar);
  g.cos_2phi = f.Delta_bar / g.G_R;
  g.sin_2phi = f.G_bar / g.G_R;

  const double s2t2 = sq(f.sin_2theta);
  const double st4 = sq(0.5 * (1.0 - f.cos_2theta));  // sin^4 theta
  const double ct4 = sq(0.5 * (1.0 + f.cos_2theta));  // cos^4 theta
  const double s2p2 = sq(g.sin_2phi);
  const double c2p2 = sq(g.cos_2phi);
  const double sp4 = sq(0.5 * (1.0 - g.cos_2phi));
  const double cp4 = sq(0.5 * (1.0 + g.cos_2phi));
  const double om = f.omega;

  // Three-term sideband sums; each factor carries the decay rate at its
  // own emission frequency.
  g.Gamma0_bar = rate_factor(p, 0.0) * s2t2 * c2p2 / 4.0 +
                 s2p2 * (rate_factor(p, om) * ct4 + rate_factor(p, -om) * st4) / 4.0;
  g.Gammaplus_bar = rate_factor(p, 2.0 * g.G_R) * s2p2 * s2t2 / 4.0 +
                    rate_factor(p, om + 2.0 * g.G_R) * cp4 * ct4 +
                    rate_factor(p, -om + 2.0 * g.G_R) * st4 * sp4;
  g.Gammaminus_bar = rate_factor(p, -2.0 * g.G_R) * s2p2 * s2t2 / 4.0 +
                     rate_factor(p, om - 2.0 * g.G_R) * ct4 * sp4 +
                     rate_factor(p, -om - 2.0 * g.G_R) * st4 * cp4;

  if (!(g.Gammaminus_bar > 0.0)) {
    throw std::invalid_argument(
        "derive_double_dressed: Gammaminus_bar vanished, x = Gammaplus_bar/Gammaminus_bar undefined");
  }
  if (!(g.Gammaplus_bar > 0.0)) {
    throw std::invalid_argument(
        "derive_double_dressed: Gammaplus_bar vanished, eta = ln(x)/2 undefined");
  }
  g.x = g.Gammaplus_bar / g.Gammaminus_bar;
  g.eta = 0.5 * std::log(g.x);
  g.Gamma_s = 4.0 * g.Gamma0_bar + g.Gammaplus_bar + g.Gammaminus_bar;
  return g;
}

double spontaneous_rate(double omega_tilde, double d_debye) {
  if (!(omega_tilde > 0.0)) throw std::invalid_argument("spontaneous_rate: omega_tilde must be > 0");
  if (!(d_debye > 0.0)) throw std::invalid_argument("spontaneous_rate: d must be > 0");
  const double d = d_debye * constants::debye_esu_cm;
  const double c3 = constants::c_cm_s * constants::c_cm_s * constants::c_cm_s;
  return 2.0 * d * d * omega_tilde * omega_tilde * omega_tilde / (3.0 * constants::hbar_erg_s * c3);
}

std::vector<RegimeViolation> check_regime(const SystemParams& p, double K) {
  // Never aborts: the raw dressed quantities are formed locally so that
  // even Omega = 0 produces a report instead of an exception.
  const double omega_bar = std::hypot(p.Omega, 0.5 * p.Delta);
  const double sin_2theta = omega_bar > 0.0 ? p.Omega / omega_bar : 0.0;
  const double g_bar = 0.25 * p.G * sin_2theta;
  const double delta_bar = omega_bar - 0.5 * p.omega +
                           (p.delta_bar_shift ? sq(g_bar) / (2.0 * p.omega) : 0.0);
  const double g_r = std::hypot(delta_bar, g_bar);

  const double gamma = 1.0;  // internal units
  struct Check {
    const char* name;
    double lhs;
    double rhs;  // required lower bound on lhs
  };
  const Check checks[] = {
      {"Omega_bar >> gamma", omega_bar, K * gamma},
      {"Omega_bar > G", omega_bar, p.G},
      {"omega >> G_bar", p.omega, K * g_bar},
      {"Omega_bar >> gamma (secular)", omega_bar, K * gamma},
      {"omega >> gamma (secular)", p.omega, K * gamma},
      {"G_R >> gamma", g_r, K * gamma},
  };

  std::vector<RegimeViolation> out;
  for (const Check& c : checks) {
    const double margin = c.rhs > 0.0 ? c.lhs / c.rhs : kInf;
    if (margin < 1.0) out.push_back({c.name, margin});
  }
  return out;
}

}  // namespace pdi
