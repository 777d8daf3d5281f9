#include "pdi/dressed.hpp"

#include <cmath>

namespace pdi {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
double sq(double v) { return v * v; }
}  // namespace

double steady_inversion_dressed(const DressedFrame& f) {
  const double denom =
      2.0 * f.Gamma_plus +
      sq(2.0 * f.G_bar) * f.Gamma / (sq(f.Gamma) + sq(2.0 * f.Delta_bar));
  return 2.0 * f.Gamma_minus / denom;
}

std::complex<double> steady_coherence(const DressedFrame& f) {
  const double rz = steady_inversion_dressed(f);
  return kI * f.G_bar * rz / std::complex<double>(f.Gamma, -2.0 * f.Delta_bar);
}

double bare_inversion_single(const DressedFrame& f) {
  const double rz = steady_inversion_dressed(f);
  const std::complex<double> rp = steady_coherence(f);
  // <R+> + <R-> = 2 Re <R+>
  return 0.5 * f.cos_2theta * rz - f.sin_2theta * rp.real();
}

double bare_inversion_single_combined(const DressedFrame& f) {
  const double rz = steady_inversion_dressed(f);
  const double pump = 4.0 * f.Delta_bar * f.G_bar * f.sin_2theta /
                      (sq(f.Gamma) + sq(2.0 * f.Delta_bar));
  return 0.5 * (f.cos_2theta + pump) * rz;
}

BlochState bloch_rhs(const DressedFrame& f, const BlochState& s) {
  BlochState d;
  // <R-> - <R+> = conj(Rplus) - Rplus = -2i Im Rplus, so the drive term is real
  d.Rz = -4.0 * f.G_bar * s.Rplus.imag() - 2.0 * f.Gamma_plus * s.Rz + 2.0 * f.Gamma_minus;
  d.Rplus = (2.0 * kI * f.Delta_bar - f.Gamma) * s.Rplus + kI * f.G_bar * s.Rz;
  return d;
}

SteadyState steady_state_single(const DressedFrame& f) {
  SteadyState out;
  out.Rz = steady_inversion_dressed(f);
  out.Rplus = steady_coherence(f);
  out.Sz = bare_inversion_single(f);
  return out;
}

}  // namespace pdi
