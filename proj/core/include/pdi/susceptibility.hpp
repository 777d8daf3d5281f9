#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "pdi/params.hpp"

namespace pdi {

// Probe-field linear susceptibility sampled on a detuning grid.
// chi is dimensionless in the internal convention (units of
// Nbar d^2 / (hbar gamma_ref)); prefactor carries that scale in Gaussian
// units when physical inputs are available.
struct Spectrum {
  std::vector<double> detunings;          // probe detunings Delta_p, strictly increasing
  std::vector<std::complex<double>> chi;  // susceptibility at each grid point
  std::optional<double> prefactor;        // Nbar d^2 / (hbar gamma_ref), dimensionless
};

std::vector<double> uniform_grid(double lo, double hi, int points);

// Six-Lorentzian closed form: the sin^2 2theta sin^2 2phi / 4 pair at
// +-2 G_R, the cos^4 theta pair centered at omega -+ 2 G_R and the
// sin^4 theta pair at -omega -+ 2 G_R, all of width Gamma_s and scaled by
// the global i <Rz~> factor.
Spectrum chi_closed_form(const DressedFrame& f, const DoubleDressedFrame& g,
                         double Rz_tilde, const std::vector<double>& grid);

// The six line centers, sorted ascending; degenerate centers are kept as
// duplicates.
std::array<double, 6> line_centers(const DoubleDressedFrame& g, double omega);

// Refractive index near vanishing absorption. chi_real is in internal
// units; prefactor is Nbar d^2/(hbar gamma_ref). Gaussian units carry
// epsilon = 1 + 4 pi chi, so n = sqrt(1 + 4 pi prefactor chi_real).
// Throws std::domain_error when the radicand is nonpositive (model
// breakdown).
double refractive_index(double chi_real, double prefactor);

double susceptibility_prefactor(const PhysicalInputs& ph, double gamma_ref);

struct DipoleExtraction {
  double separation;    // measured first-max/first-min separation S around Delta_p = 0
  double G_R;           // S / 4
  double G;             // recovered permanent-dipole coupling, units of gamma_ref
  double d_diff_debye;  // |d22 - d11| [Debye]
};

// Inverse problem: locate the first local maximum and minimum of Im chi on
// either side of Delta_p = 0 (three-point comparison plus parabolic
// refinement), set G_R = S/4 and invert G_R^2 = Delta_bar^2 + G_bar^2 back
// to the dipole difference. Requires physical.E2 and a grid step
// <= Gamma_s / 10.
DipoleExtraction extract_dipole_difference(const Spectrum& s, const SystemParams& p);

}  // namespace pdi
