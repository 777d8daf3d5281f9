#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pdi {

// All internal frequencies and rates are expressed in units of the
// reference spontaneous rate gamma_ref = 1. The PhysicalInputs block is
// the only place dimensionful (Gaussian cgs) quantities enter, and they
// are needed only by spontaneous_rate, the susceptibility prefactor and
// the dipole extraction.

enum class RateModel {
  Equal,  // every sideband decay rate equals gamma_ref
  Cubic   // rates scale as the cube of the absolute emission frequency
};

// Gaussian-units anchors for the dimensionful layer.
struct PhysicalInputs {
  double d = 0.0;        // transition dipole moment [Debye]
  double omega21 = 0.0;  // transition angular frequency [s^-1]
  double omegaL = 0.0;   // first-laser angular frequency [s^-1]
  double Nbar = 0.0;     // emitter number density [cm^-3]
  double E2 = 0.0;       // second-laser field amplitude [statV/cm]
};

struct SystemParams {
  double Omega = 0.0;  // Rabi frequency of laser 1
  double Delta = 0.0;  // detuning omega21 - omegaL
  double G = 0.0;      // permanent-dipole coupling (d22 - d11) E2 / hbar
  double omega = 0.0;  // second-laser frequency
  int N = 1;           // emitter count in the symmetric collective state
  double gamma_ref = 1.0;  // reference spontaneous rate [s^-1]
  RateModel rate_model = RateModel::Equal;
  bool delta_bar_shift = false;  // keep the G_bar^2/(2 omega) term in Delta_bar
  std::optional<PhysicalInputs> physical;

  // Throws std::invalid_argument on any violated field invariant.
  void validate() const;
};

// First-dressing derived quantities. theta mixes the bare states, the
// damping combinations come out of the dressed master equation with all
// sideband rates set to gamma_ref.
struct DressedFrame {
  double theta;        // mixing angle in (0, pi/2)
  double Omega_bar;    // generalized Rabi frequency sqrt(Omega^2 + (Delta/2)^2)
  double G_bar;        // dressed pump strength (G/4) sin 2theta
  double Delta_bar;    // dressed detuning
  double Gamma_plus;   // sin^4 + cos^4
  double Gamma_minus;  // sin^4 - cos^4, may be negative
  double Gamma;        // Gamma_plus + sin^2 2theta
  double omega;        // second-laser frequency, carried for downstream ops
  // trig of 2 theta held in the exact algebraic forms Delta/(2 Omega_bar)
  // and Omega/Omega_bar, so resonance symmetries hold to the last bit
  double cos_2theta;
  double sin_2theta;
};

// Second-dressing derived quantities.
struct DoubleDressedFrame {
  double phi;             // second mixing angle in (0, pi/2)
  double G_R;             // Rabi splitting sqrt(Delta_bar^2 + G_bar^2)
  double Gamma0_bar;      // dephasing-type rate
  double Gammaplus_bar;   // downward (lowering) rate
  double Gammaminus_bar;  // upward (raising) rate
  double x;               // Gammaplus_bar / Gammaminus_bar
  double eta;             // ln(x) / 2
  double Gamma_s;         // 4 Gamma0_bar + Gammaplus_bar + Gammaminus_bar
  double cos_2phi;        // Delta_bar / G_R (exact form)
  double sin_2phi;        // G_bar / G_R
};

// theta is computed through the two-argument arctangent of (2 Omega, Delta)
// halved, which keeps it continuous across Delta = 0 and inside (0, pi/2).
// Rejects Omega <= 0 (the dressing is undefined there).
DressedFrame derive_dressed(const SystemParams& p);

// Assembles the three-term sideband sums for the double-dressed rates.
// Under RateModel::Equal every gamma(.) factor is gamma_ref; under Cubic each
// factor is spontaneous_rate evaluated at the absolute sideband frequency,
// which requires the physical block. Rejects G_R = 0 and a vanishing
// Gammaplus_bar or Gammaminus_bar (x undefined).
DoubleDressedFrame derive_double_dressed(const DressedFrame& f, const SystemParams& p);

// Single-molecule free-space decay rate 2 d^2 w^3 / (3 hbar c^3) in
// Gaussian units: w in s^-1, d in Debye, result in s^-1.
double spontaneous_rate(double omega_tilde, double d_debye);

struct RegimeViolation {
  std::string name;  // the inequality, e.g. "Omega_bar >> gamma"
  double margin;     // measured lhs over required rhs; < 1 means violated
};

// Checks the validity-regime inequalities with ">>" read as a factor-K
// inequality (default K = 10). Never throws; returns one entry per
// violated inequality, empty when all hold.
std::vector<RegimeViolation> check_regime(const SystemParams& p, double K = 10.0);

namespace constants {
inline constexpr double hbar_erg_s = 1.054571817e-27;
inline constexpr double c_cm_s = 2.99792458e10;
inline constexpr double debye_esu_cm = 1e-18;
}  // namespace constants

}  // namespace pdi
