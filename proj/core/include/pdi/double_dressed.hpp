#pragma once

#include <vector>

#include "pdi/params.hpp"

namespace pdi {

struct CollectiveState {
  double Rz_tilde;        // collective double-dressed inversion, in [-N, N]
  double Sz_per_emitter;  // cos[2(theta-phi)] Rz_tilde / (2N), in [-1/2, 1/2]
  double x;               // rate ratio carried along for diagnostics
};

// Collective double-dressed inversion of the exponential steady state,
//   <Rz~> = -N + 2[(x^{1+N} - 1) - (1+N)(x-1)] / [(x-1)(x^{1+N} - 1)].
// Near x = 1 a series expansion avoids the 0/0 cancellation; far from 1
// with large N the x^{1+N} power is handled in log space. Rejects x <= 0.
double collective_inversion(double x, int N);

namespace detail {
// The series branch engages when (1+N)|ln x|/2 < kSeriesSwitchZ. The
// boundary is N-adaptive: the closed form loses digits near x = 1 like
// eps/((N+1)(N+2)(x-1)^2), so a fixed |x-1| threshold cannot reach the
// required branch agreement for small N.
inline constexpr double kSeriesSwitchZ = 0.1;     // threshold on (1+N)|eta|
inline constexpr double kLogSpaceExponent = 600;  // (1+N)|ln x| above which log-space evaluation kicks in
double collective_inversion_series(double u, int N);       // u = x - 1
double collective_inversion_closed(double x, int N);       // direct expm1/log1p evaluation
}  // namespace detail

// Populations of the exponential steady state over the Dicke ladder,
// p_s proportional to exp[-eta (2s - N)] for s = 0..N, normalized to sum 1.
std::vector<double> dd_partition_state(double eta, int N);

// Collective bare inversion <Sz> = cos[2(theta - phi)] <Rz~> / 2 (total,
// not per emitter).
double bare_inversion_collective(const DressedFrame& f, const DoubleDressedFrame& g, int N);

CollectiveState collective_state(const DressedFrame& f, const DoubleDressedFrame& g, int N);

// Max |<R~+->| in the numeric steady state of the collective master
// equation; the analytic steady state is diagonal, so this must be ~0.
double dd_offdiagonal_check(const DoubleDressedFrame& g, int N);

}  // namespace pdi
