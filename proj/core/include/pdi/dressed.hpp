#pragma once

#include <complex>

#include "pdi/params.hpp"

namespace pdi {

// Expectation values of the dressed-frame Bloch vector. Rminus is stored
// implicitly as the conjugate of Rplus.
struct BlochState {
  double Rz = 0.0;
  std::complex<double> Rplus{0.0, 0.0};
};

// Single-emitter steady state and bare-state observables in the first
// dressed frame, evaluated from the closed forms of the dressed master
// equation.

// <Rz> = 2 Gamma_- / [2 Gamma_+ + (2 G_bar)^2 Gamma / (Gamma^2 + (2 Delta_bar)^2)]
double steady_inversion_dressed(const DressedFrame& f);

// <R+> = i G_bar <Rz> / (Gamma - 2i Delta_bar)
std::complex<double> steady_coherence(const DressedFrame& f);

// Bare inversion via the operator identity
//   <Sz> = cos 2theta <Rz>/2 - sin 2theta (<R+> + <R->)/2.
double bare_inversion_single(const DressedFrame& f);

// Same quantity with the coherence eliminated analytically:
//   <Sz> = (cos 2theta + 4 Delta_bar G_bar sin 2theta / [Gamma^2 + (2 Delta_bar)^2]) <Rz>/2.
// Both routes are kept and cross-checked; they must agree to machine precision.
double bare_inversion_single_combined(const DressedFrame& f);

// Right-hand sides of the dressed Bloch equations; the analytic steady
// state is a fixed point of these.
BlochState bloch_rhs(const DressedFrame& f, const BlochState& state);

// Full steady state at one parameter point.
struct SteadyState {
  double Rz;
  std::complex<double> Rplus;
  double Sz;
};
SteadyState steady_state_single(const DressedFrame& f);

}  // namespace pdi
