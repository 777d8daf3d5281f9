#include "pdi/double_dressed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdi/oracle.hpp"

namespace pdi {

namespace detail {

double collective_inversion_series(double u, int N) {
  // The exponential state gives <Rz~> = -[M coth(M eta) - coth(eta)] with
  // eta = ln(x)/2 and M = N + 1; the 1/eta poles cancel analytically and
  // the coth expansion leaves an odd series in eta. Four terms keep the
  // truncation under 1e-12 relative for (M eta) up to the switch point.
  const double M = static_cast<double>(N) + 1.0;
  const double eta = 0.5 * std::log1p(u);
  const double e2 = eta * eta;
  const double m2 = M * M;
  const double t1 = (m2 - 1.0) / 3.0;
  const double t3 = (m2 * m2 - 1.0) / 45.0;
  const double t5 = 2.0 * (m2 * m2 * m2 - 1.0) / 945.0;
  const double t7 = (m2 * m2 * m2 * m2 - 1.0) / 4725.0;
  return -eta * (t1 + e2 * (-t3 + e2 * (t5 - e2 * t7)));
}

double collective_inversion_closed(double x, int N) {
  const double M = static_cast<double>(N) + 1.0;
  const double u = x - 1.0;
  const double xm1 = std::expm1(M * std::log1p(u));  // x^M - 1 without cancellation
  return -N + 2.0 * (xm1 - M * u) / (u * xm1);
}

}  // namespace detail

double collective_inversion(double x, int N) {
  if (N < 1) throw std::invalid_argument("collective_inversion: N must be >= 1");
  if (!(x > 0.0)) throw std::invalid_argument("collective_inversion: x must be > 0");

  const double u = x - 1.0;
  const double M = static_cast<double>(N) + 1.0;
  const double lx = std::log1p(u);
  if (M * std::abs(lx) < 2.0 * detail::kSeriesSwitchZ) {
    return detail::collective_inversion_series(u, N);
  }
  if (M * std::abs(lx) > detail::kLogSpaceExponent) {
    // x^M overflows (or underflows) a double; divide through by x^M.
    if (x > 1.0) {
      const double t = M * lx < 709.0 ? std::exp(-M * lx) : 0.0;
      return -N + 2.0 * ((1.0 - t) - M * u * t) / (u * (1.0 - t));
    }
    const double t = std::exp(M * lx);  // tiny, underflow to 0 is fine
    return -N + 2.0 * ((t - 1.0) - M * u) / (u * (t - 1.0));
  }
  return detail::collective_inversion_closed(x, N);
}

std::vector<double> dd_partition_state(double eta, int N) {
  if (N < 1) throw std::invalid_argument("dd_partition_state: N must be >= 1");
  std::vector<double> p(N + 1);
  double emax = -std::numeric_limits<double>::infinity();
  for (int s = 0; s <= N; ++s) {
    p[s] = -eta * (2.0 * s - N);
    emax = std::max(emax, p[s]);
  }
  double z = 0.0;
  for (double& v : p) {
    v = std::exp(v - emax);
    z += v;
  }
  for (double& v : p) v /= z;
  return p;
}

namespace {
// cos[2(theta - phi)] assembled from the exact frame trig
double cos_2_theta_minus_phi(const DressedFrame& f, const DoubleDressedFrame& g) {
  return f.cos_2theta * g.cos_2phi + f.sin_2theta * g.sin_2phi;
}
}  // namespace

double bare_inversion_collective(const DressedFrame& f, const DoubleDressedFrame& g, int N) {
  return 0.5 * cos_2_theta_minus_phi(f, g) * collective_inversion(g.x, N);
}

CollectiveState collective_state(const DressedFrame& f, const DoubleDressedFrame& g, int N) {
  CollectiveState c{};
  c.Rz_tilde = collective_inversion(g.x, N);
  c.Sz_per_emitter = 0.5 * cos_2_theta_minus_phi(f, g) * c.Rz_tilde / N;
  c.x = g.x;
  return c;
}

double dd_offdiagonal_check(const DoubleDressedFrame& g, int N) {
  const auto L = oracle::build_liouvillian_dicke(g, N);
  const auto ss = oracle::steady_state(L);
  const oracle::Matrix rp = oracle::dicke_rplus(N);
  const double up = std::abs(ss.rho.expectation(rp));
  const double dn = std::abs(ss.rho.expectation(rp.adjoint()));
  return std::max(up, dn);
}

}  // namespace pdi
