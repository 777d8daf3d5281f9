#pragma once

#include <cmath>

#include "pdi/params.hpp"

namespace pdi::test {

inline SystemParams make_params(double Omega, double Delta, double G, double omega, int N = 1) {
  SystemParams p;
  p.Omega = Omega;
  p.Delta = Delta;
  p.G = G;
  p.omega = omega;
  p.N = N;
  return p;
}

// Standard working point shared across the suites: Omega = 45,
// omega = 100, G = 16, Delta/(2 Omega) = +-0.43.
inline SystemParams working_point_pos() { return make_params(45.0, 2.0 * 45.0 * 0.43, 16.0, 100.0); }
inline SystemParams working_point_neg() { return make_params(45.0, -2.0 * 45.0 * 0.43, 16.0, 100.0); }

inline bool close_rel(double a, double b, double rtol) {
  return std::abs(a - b) <= rtol * std::max(std::abs(a), std::abs(b));
}

}  // namespace pdi::test
