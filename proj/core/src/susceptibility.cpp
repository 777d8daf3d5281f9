#include "pdi/susceptibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdi {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double sq(double v) { return v * v; }

// Causal complex Lorentzian of width Gamma_s at offset u from resonance.
std::complex<double> complex_lorentzian(double gamma_s, double u) {
  return std::complex<double>(gamma_s, u) / (sq(gamma_s) + sq(u));
}

struct Extremum {
  double pos;
  double value;
  bool is_max;
};

// Nearest strict local extremum of y scanning from index i0 in the given
// direction, bounded to |x| <= window, refined by a parabola through the
// bracketing three points.
std::optional<Extremum> nearest_extremum(const std::vector<double>& x,
                                         const std::vector<double>& y, int i0, int dir,
                                         double window) {
  const int n = static_cast<int>(x.size());
  for (int i = i0 + dir; i > 0 && i < n - 1 && std::abs(x[i]) <= window; i += dir) {
    const bool is_max = y[i] > y[i - 1] && y[i] > y[i + 1];
    const bool is_min = y[i] < y[i - 1] && y[i] < y[i + 1];
    if (!is_max && !is_min) continue;
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    double shift = 0.0;
    if (denom != 0.0) shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
    shift = std::clamp(shift, -1.0, 1.0);
    const double h = 0.5 * (x[i + 1] - x[i - 1]);
    return Extremum{x[i] + shift * h, y[i], is_max};
  }
  return std::nullopt;
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: points must be >= 2");
  if (!(hi > lo)) throw std::invalid_argument("uniform_grid: need hi > lo");
  std::vector<double> g(points);
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) g[i] = lo + i * h;
  g.back() = hi;
  return g;
}

Spectrum chi_closed_form(const DressedFrame& f, const DoubleDressedFrame& g,
                         double Rz_tilde, const std::vector<double>& grid) {
  if (!(g.Gamma_s > 0.0)) throw std::invalid_argument("chi_closed_form: Gamma_s must be > 0");
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("chi_closed_form: grid must be strictly increasing");
    }
  }

  const double s2t2 = sq(f.sin_2theta);
  const double s2p2 = sq(g.sin_2phi);
  const double st4 = sq(0.5 * (1.0 - f.cos_2theta));
  const double ct4 = sq(0.5 * (1.0 + f.cos_2theta));
  const double sp4 = sq(0.5 * (1.0 - g.cos_2phi));
  const double cp4 = sq(0.5 * (1.0 + g.cos_2phi));
  const double gr2 = 2.0 * g.G_R;
  const double om = f.omega;
  const double gs = g.Gamma_s;

  Spectrum s;
  s.detunings = grid;
  s.chi.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const double dp = grid[i];
    std::complex<double> acc =
        (s2t2 * s2p2 / 4.0) *
        (complex_lorentzian(gs, dp + gr2) - complex_lorentzian(gs, dp - gr2));
    acc += ct4 * (sp4 * complex_lorentzian(gs, dp + gr2 - om) -
                  cp4 * complex_lorentzian(gs, dp - gr2 - om));
    acc += st4 * (cp4 * complex_lorentzian(gs, dp + gr2 + om) -
                  sp4 * complex_lorentzian(gs, dp - gr2 + om));
    s.chi[i] = kI * Rz_tilde * acc;
  }
  return s;
}

std::array<double, 6> line_centers(const DoubleDressedFrame& g, double omega) {
  if (!(g.G_R > 0.0)) throw std::invalid_argument("line_centers: G_R must be > 0");
  const double gr2 = 2.0 * g.G_R;
  std::array<double, 6> c = {-gr2, gr2, omega - gr2, omega + gr2, -omega + gr2, -omega - gr2};
  std::sort(c.begin(), c.end());
  return c;
}

double refractive_index(double chi_real, double prefactor) {
  // Gaussian units: epsilon = 1 + 4 pi chi.
  const double radicand = 1.0 + 4.0 * M_PI * prefactor * chi_real;
  if (!(radicand > 0.0)) {
    throw std::domain_error("refractive_index: 1 + 4*pi*chi' <= 0, linear model breakdown");
  }
  return std::sqrt(radicand);
}

double susceptibility_prefactor(const PhysicalInputs& ph, double gamma_ref) {
  if (!(ph.d > 0.0) || !(ph.Nbar > 0.0) || !(gamma_ref > 0.0)) {
    throw std::invalid_argument("susceptibility_prefactor: needs d > 0, Nbar > 0, gamma_ref > 0");
  }
  const double d = ph.d * constants::debye_esu_cm;
  return ph.Nbar * d * d / (constants::hbar_erg_s * gamma_ref);
}

DipoleExtraction extract_dipole_difference(const Spectrum& s, const SystemParams& p) {
  if (!p.physical || !(p.physical->E2 > 0.0)) {
    throw std::invalid_argument("extract_dipole_difference: physical.E2 required");
  }
  if (s.detunings.size() < 5 || s.detunings.size() != s.chi.size()) {
    throw std::invalid_argument("extract_dipole_difference: spectrum too short");
  }
  const DressedFrame f = derive_dressed(p);
  const DoubleDressedFrame g = derive_double_dressed(f, p);

  double max_step = 0.0;
  for (size_t i = 1; i < s.detunings.size(); ++i) {
    max_step = std::max(max_step, s.detunings[i] - s.detunings[i - 1]);
  }
  if (max_step > g.Gamma_s / 10.0) {
    throw std::invalid_argument(
        "extract_dipole_difference: grid step too coarse to resolve Gamma_s (need <= Gamma_s/10)");
  }

  std::vector<double> im(s.chi.size());
  for (size_t i = 0; i < s.chi.size(); ++i) im[i] = s.chi[i].imag();

  const int i0 = static_cast<int>(
      std::min_element(s.detunings.begin(), s.detunings.end(),
                       [](double a, double b) { return std::abs(a) < std::abs(b); }) -
      s.detunings.begin());
  // "around Delta_p = 0" means inside the omega sidebands; the 2 G_R pair
  // sits below omega/2 whenever the line groups are disjoint.
  const double window = 0.5 * p.omega;
  const auto left = nearest_extremum(s.detunings, im, i0, -1, window);
  const auto right = nearest_extremum(s.detunings, im, i0, +1, window);
  if (!left || !right) {
    throw std::runtime_error(
        "extract_dipole_difference: fewer than two extrema found near Delta_p = 0");
  }
  if (left->is_max == right->is_max) {
    throw std::runtime_error(
        "extract_dipole_difference: expected one maximum and one minimum around Delta_p = 0");
  }

  DipoleExtraction out{};
  out.separation = right->pos - left->pos;
  out.G_R = out.separation / 4.0;
  if (!(out.G_R > std::abs(f.Delta_bar))) {
    throw std::runtime_error(
        "extract_dipole_difference: no real G_bar solution (S/4 <= |Delta_bar|)");
  }
  const double g_bar = std::sqrt(sq(out.G_R) - sq(f.Delta_bar));
  out.G = 4.0 * g_bar / f.sin_2theta;
  const double g_phys = out.G * p.gamma_ref;  // s^-1
  out.d_diff_debye =
      constants::hbar_erg_s * g_phys / p.physical->E2 / constants::debye_esu_cm;
  return out;
}

}  // namespace pdi
