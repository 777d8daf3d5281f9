#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "pdi/params.hpp"
#include "pdi/susceptibility.hpp"

namespace pdi::oracle {

// Brute-force numerical verification layer: dense Liouvillian
// superoperators for the single-dressed master equation (N = 1) and the
// collective double-dressed master equation on the symmetric Dicke basis,
// steady states by null-space solve, fixed-step time propagation, and the
// two-time-correlation susceptibility via the quantum regression rule.
// Everything here is independent of the closed forms it checks.

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct DensityMatrix {
  Matrix rho;

  double hermiticity_error() const;        // max |rho - rho^dag|
  double trace_error() const;              // |tr rho - 1|
  double min_eigenvalue() const;           // smallest eigenvalue of the hermitized matrix
  double max_offdiagonal() const;          // max |off-diagonal element|
  std::complex<double> expectation(const Matrix& A) const;  // tr(A rho)

  void validate(double herm_tol = 1e-12, double trace_tol = 1e-12,
                double pos_tol = 1e-10) const;  // throws on violation
};

enum class MasterEquation { SingleDressed, DoubleDressedDicke };

struct Liouvillian {
  Matrix op;    // (dim^2 x dim^2), acts on column-major vectorized rho
  int dim;      // Hilbert-space dimension
  MasterEquation kind;
  std::string built_from;  // parameter echo for diagnostics
};

inline constexpr int kDickeCapacity = 12;

// Collective quasi-spin operators on the symmetric (Dicke) basis,
// ordered by excitation number s = 0..N. Rz has eigenvalues 2s - N;
// Rplus raises with the standard angular-momentum matrix elements.
Matrix dicke_rz(int N);
Matrix dicke_rplus(int N);

// Superoperator assembly for one literal commutator damping term
// -c([A, B rho] + H.c.). Exposed for tests.
Matrix commutator_damping(const Matrix& A, const Matrix& B, double c);
Matrix left_mul(const Matrix& A);   // rho -> A rho
Matrix right_mul(const Matrix& A);  // rho -> rho A

// Single-dressed master equation at N = 1, damping rates all gamma_ref.
Liouvillian build_liouvillian_single(const DressedFrame& f);

// Collective double-dressed master equation in the symmetric subspace,
// 1 <= N <= kDickeCapacity.
Liouvillian build_liouvillian_dicke(const DoubleDressedFrame& g, int N);

struct SteadyStateResult {
  DensityMatrix rho;
  bool used_propagation;  // null-space uniqueness gap test failed, fell back
  double gap;             // second-smallest singular value / ||L||
};

// Null vector of L, reshaped and normalized to trace 1. Uniqueness is
// gated on the second-smallest singular value exceeding 1e-6 ||L||; on a
// failed gate the result is cross-checked against long-time propagation
// and "degenerate steady state" is reported when the two disagree.
SteadyStateResult steady_state(const Liouvillian& L);

// Fixed-step RK4 with h <= 0.01/||L||_F. Verifies trace drift < 1e-9 and
// positivity of the result.
DensityMatrix propagate(const Liouvillian& L, const DensityMatrix& rho0, double t);

// chi on the grid via the regression rule: the three frequency components
// of the bare lowering operator (weights sin2theta/2, cos^2 theta,
// sin^2 theta) are propagated independently under the collective
// double-dressed generator at N = 1 and the Fourier transform is
// integrated numerically with upper cutoff T = 50 / Gamma_s. Units match
// chi_closed_form. Throws on cutoff-convergence failure (doubling T moves
// any point by more than 1e-4 of the peak).
Spectrum regression_spectrum(const DoubleDressedFrame& g, const DressedFrame& f,
                             const std::vector<double>& grid);

}  // namespace pdi::oracle
