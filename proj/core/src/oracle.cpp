#include "pdi/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pdi::oracle {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double sq(double v) { return v * v; }

Matrix kron(const Matrix& X, const Matrix& Y) {
  Matrix out(X.rows() * Y.rows(), X.cols() * Y.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      out.block(i * Y.rows(), j * Y.cols(), Y.rows(), Y.cols()) = X(i, j) * Y;
    }
  }
  return out;
}

Matrix coherent_term(const Matrix& H) {
  return -kI * (left_mul(H) - right_mul(H));
}

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix devectorize(const Vector& v, int dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

// Fixed-step RK4 on vec(rho) with dy/dt = L y. Calls on_sample(k, y) at
// every accepted step boundary including t = 0.
void rk4(const Matrix& L, Vector& y, double t_end, double h,
         const std::function<void(std::int64_t, const Vector&)>& on_sample = nullptr) {
  const std::int64_t n = t_end > 0.0 ? static_cast<std::int64_t>(std::ceil(t_end / h)) : 0;
  const double dt = n > 0 ? t_end / static_cast<double>(n) : 0.0;
  if (on_sample) on_sample(0, y);
  Vector k1, k2, k3, k4;
  for (std::int64_t i = 0; i < n; ++i) {
    k1 = L * y;
    k2 = L * (y + 0.5 * dt * k1);
    k3 = L * (y + 0.5 * dt * k2);
    k4 = L * (y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (on_sample) on_sample(i + 1, y);
  }
}

double step_size(const Liouvillian& L) {
  const double norm = L.op.norm();  // Frobenius, upper bound on the spectral norm
  if (!(norm > 0.0)) throw std::invalid_argument("propagate: zero Liouvillian");
  return 0.01 / norm;
}

}  // namespace

double DensityMatrix::hermiticity_error() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(rho.trace() - 1.0); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::max_offdiagonal() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if (i != j) m = std::max(m, std::abs(rho(i, j)));
    }
  }
  return m;
}

std::complex<double> DensityMatrix::expectation(const Matrix& A) const {
  return (A * rho).trace();
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double pos_tol) const {
  if (hermiticity_error() > herm_tol) {
    throw std::runtime_error("DensityMatrix: hermiticity violated");
  }
  if (trace_error() > trace_tol) throw std::runtime_error("DensityMatrix: trace != 1");
  if (min_eigenvalue() < -pos_tol) throw std::runtime_error("DensityMatrix: negative eigenvalue");
}

Matrix dicke_rz(int N) {
  Matrix rz = Matrix::Zero(N + 1, N + 1);
  for (int s = 0; s <= N; ++s) rz(s, s) = 2.0 * s - N;
  return rz;
}

Matrix dicke_rplus(int N) {
  // Collective raising operator in the spin-N/2 representation,
  // |s> -> sqrt(j(j+1) - m(m+1)) |s+1> with m = s - N/2.
  Matrix rp = Matrix::Zero(N + 1, N + 1);
  const double j = 0.5 * N;
  for (int s = 0; s < N; ++s) {
    const double m = s - j;
    rp(s + 1, s) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return rp;
}

Matrix left_mul(const Matrix& A) {
  return kron(Matrix::Identity(A.rows(), A.cols()), A);
}

Matrix right_mul(const Matrix& A) {
  return kron(A.transpose(), Matrix::Identity(A.rows(), A.cols()));
}

Matrix commutator_damping(const Matrix& A, const Matrix& B, double c) {
  // -c ([A, B rho] + H.c.) assembled literally:
  //   [A, B rho]        -> L(AB) - R(A) L(B)
  //   ([A, B rho])^dag  -> R(B^dag A^dag) - R(B^dag) L(A^dag)
  const Matrix AB = A * B;
  return -c * (left_mul(AB) - right_mul(A) * left_mul(B) +
               right_mul(AB.adjoint()) - right_mul(B.adjoint()) * left_mul(A.adjoint()));
}

Liouvillian build_liouvillian_single(const DressedFrame& f) {
  // Basis [|1bar>, |2bar>]; Rz has eigenvalues -1, +1.
  Matrix rz(2, 2), rp(2, 2);
  rz << -1.0, 0.0, 0.0, 1.0;
  rp << 0.0, 0.0, 1.0, 0.0;
  const Matrix rm = rp.adjoint();

  const Matrix H = f.Delta_bar * rz - f.G_bar * (rp + rm);
  const double s2t2 = sq(f.sin_2theta);
  const double ct4 = sq(0.5 * (1.0 + f.cos_2theta));
  const double st4 = sq(0.5 * (1.0 - f.cos_2theta));

  Liouvillian L;
  L.dim = 2;
  L.kind = MasterEquation::SingleDressed;
  // gamma_0 = gamma_+ = gamma_- = gamma_ref = 1
  L.op = coherent_term(H) + commutator_damping(rz, rz, s2t2 / 4.0) +
         commutator_damping(rp, rm, ct4) + commutator_damping(rm, rp, st4);
  std::ostringstream os;
  os << "single-dressed: theta=" << f.theta << " G_bar=" << f.G_bar
     << " Delta_bar=" << f.Delta_bar;
  L.built_from = os.str();
  return L;
}

Liouvillian build_liouvillian_dicke(const DoubleDressedFrame& g, int N) {
  if (N < 1 || N > kDickeCapacity) {
    std::ostringstream os;
    os << "build_liouvillian_dicke: N = " << N << " outside capacity 1.." << kDickeCapacity
       << " (superoperator dimension (N+1)^2 is kept dense)";
    throw std::invalid_argument(os.str());
  }
  const Matrix rz = dicke_rz(N);
  const Matrix rp = dicke_rplus(N);
  const Matrix rm = rp.adjoint();

  Liouvillian L;
  L.dim = N + 1;
  L.kind = MasterEquation::DoubleDressedDicke;
  L.op = coherent_term(g.G_R * rz) + commutator_damping(rz, rz, g.Gamma0_bar) +
         commutator_damping(rp, rm, g.Gammaplus_bar) +
         commutator_damping(rm, rp, g.Gammaminus_bar);
  std::ostringstream os;
  os << "double-dressed Dicke: N=" << N << " G_R=" << g.G_R << " G0=" << g.Gamma0_bar
     << " G+=" << g.Gammaplus_bar << " G-=" << g.Gammaminus_bar;
  L.built_from = os.str();
  return L;
}

DensityMatrix propagate(const Liouvillian& L, const DensityMatrix& rho0, double t) {
  if (t < 0.0) throw std::invalid_argument("propagate: t must be >= 0");
  if (t == 0.0) return rho0;
  Vector y = vectorize(rho0.rho);
  rk4(L.op, y, t, step_size(L));
  DensityMatrix out{devectorize(y, L.dim)};
  if (out.trace_error() > 1e-9) {
    throw std::runtime_error("propagate: trace renormalization drift exceeded 1e-9");
  }
  if (out.min_eigenvalue() < -1e-10) {
    throw std::runtime_error("propagate: positivity violated beyond tolerance (step-size failure)");
  }
  return out;
}

SteadyStateResult steady_state(const Liouvillian& L) {
  Eigen::JacobiSVD<Matrix> svd(L.op, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index n = sv.size();
  const double norm = sv(0);
  if (!(norm > 0.0)) {
    throw std::invalid_argument("steady_state: L = 0 rejected, every state is steady");
  }
  const double gap = sv(n - 2) / norm;

  auto reshape_normalize = [&](const Vector& v) -> DensityMatrix {
    Matrix rho = devectorize(v, L.dim);
    const std::complex<double> tr = rho.trace();
    if (std::abs(tr) < 1e-12) {
      throw std::runtime_error("steady_state: null vector is traceless, degenerate steady state");
    }
    rho /= tr;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix{std::move(rho)};
  };

  SteadyStateResult result;
  result.gap = gap;
  result.used_propagation = false;
  DensityMatrix null_candidate = reshape_normalize(svd.matrixV().col(n - 1));

  if (gap > 1e-6) {
    result.rho = std::move(null_candidate);
    return result;
  }

  // Uniqueness gate failed: integrate from the maximally mixed state until
  // the residual stalls, then cross-check the two answers.
  Vector y = vectorize(Matrix::Identity(L.dim, L.dim) / static_cast<double>(L.dim));
  const double h = step_size(L);
  double chunk = 1000.0 * h;
  for (int iter = 0; iter < 64; ++iter) {
    rk4(L.op, y, chunk, h);
    if ((L.op * y).cwiseAbs().maxCoeff() < 1e-12) break;
    chunk *= 2.0;
  }
  DensityMatrix propagated{devectorize(y, L.dim)};
  if ((propagated.rho - null_candidate.rho).cwiseAbs().maxCoeff() > 1e-6) {
    throw std::runtime_error("steady_state: degenerate steady state (null space and long-time "
                             "propagation disagree beyond 1e-6)");
  }
  result.rho = std::move(propagated);
  result.used_propagation = true;
  return result;
}

Spectrum regression_spectrum(const DoubleDressedFrame& g, const DressedFrame& f,
                             const std::vector<double>& grid) {
  // N = 1 generator; the steady state and all two-time dynamics run under
  // the collective double-dressed master equation.
  const Liouvillian L = build_liouvillian_dicke(g, 1);
  const DensityMatrix rho_s = steady_state(L).rho;

  const Matrix rz_t = dicke_rz(1);
  const Matrix rp_t = dicke_rplus(1);
  const Matrix rm_t = rp_t.adjoint();

  // Dressed-frame operators expressed in the double-dressed basis.
  const double c2p = g.cos_2phi;
  const double s2p = g.sin_2phi;
  const double cp2 = 0.5 * (1.0 + g.cos_2phi);
  const double sp2 = 0.5 * (1.0 - g.cos_2phi);
  const Matrix rz_d = c2p * rz_t + s2p * (rp_t + rm_t);
  const Matrix rm_d = cp2 * rm_t - 0.5 * s2p * rz_t - sp2 * rp_t;
  const Matrix rp_d = rm_d.adjoint();

  struct Component {
    Matrix A;       // dressed operator carried by S^- at this frequency
    double weight;  // squared transformation coefficient
    double nu;      // e^{-i nu tau} rotation of the component
  };
  const std::vector<Component> comps = {
      {rz_d, sq(f.sin_2theta) / 4.0, 0.0},
      {rm_d, sq(0.5 * (1.0 + f.cos_2theta)), +f.omega},
      {rp_d, sq(0.5 * (1.0 - f.cos_2theta)), -f.omega},
  };

  const double T = 50.0 / g.Gamma_s;
  const double h_rk = step_size(L);
  // stored sample spacing <= 1e-3 keeps the Simpson error on the
  // oscillatory Fourier integrand well under the 1e-3-of-peak target
  const std::int64_t stride = std::max<std::int64_t>(1, static_cast<std::int64_t>(1e-3 / h_rk));

  // Propagate each commutator [A^dag, rho_s] to 2T and record
  // f_a(tau) = tr(A sigma(tau)) on the stored grid.
  std::vector<std::vector<std::complex<double>>> traj(comps.size());
  double dt_store = 0.0;
  for (size_t a = 0; a < comps.size(); ++a) {
    const Matrix B = comps[a].A.adjoint() * rho_s.rho - rho_s.rho * comps[a].A.adjoint();
    Vector y = vectorize(B);
    const std::int64_t n_steps = static_cast<std::int64_t>(std::ceil(2.0 * T / h_rk));
    const double dt = 2.0 * T / static_cast<double>(n_steps);
    dt_store = dt * stride;
    const Matrix& A = comps[a].A;
    std::vector<std::complex<double>>& fa = traj[a];
    fa.reserve(n_steps / stride + 2);
    rk4(L.op, y, 2.0 * T, dt, [&](std::int64_t k, const Vector& v) {
      if (k % stride == 0) {
        fa.push_back((A * devectorize(v, L.dim)).trace());
      }
    });
  }

  // Simpson weights need an even interval count; drop the last sample when
  // necessary (the integrand there is ~e^{-100}).
  size_t n_samp = traj[0].size();
  if (n_samp % 2 == 0) --n_samp;
  const size_t n_half = (n_samp / 2) % 2 == 0 ? n_samp / 2 + 1 : n_samp / 2;  // odd count near T

  Spectrum out;
  out.detunings = grid;
  out.chi.assign(grid.size(), {0.0, 0.0});
  std::vector<std::complex<double>> chi_half(grid.size(), {0.0, 0.0});

  for (size_t a = 0; a < comps.size(); ++a) {
    const auto& fa = traj[a];
    const double w2 = comps[a].weight;
    const double nu = comps[a].nu;
    for (size_t i = 0; i < grid.size(); ++i) {
      const double s = grid[i] - nu;
      const std::complex<double> rot = std::exp(kI * s * dt_store);
      std::complex<double> phase{1.0, 0.0};
      std::complex<double> acc{0.0, 0.0};
      std::complex<double> acc_half{0.0, 0.0};
      for (size_t k = 0; k < n_samp; ++k) {
        double w = (k == 0 || k == n_samp - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * phase * fa[k];
        if (k < n_half) {
          const double wh = (k == 0 || k == n_half - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
          acc_half += wh * phase * fa[k];
        }
        phase *= rot;
      }
      out.chi[i] += kI * w2 * acc * (dt_store / 3.0);
      chi_half[i] += kI * w2 * acc_half * (dt_store / 3.0);
    }
  }

  // Cutoff convergence: the integral at T and 2T must agree pointwise.
  double peak = 0.0;
  for (const auto& c : out.chi) peak = std::max(peak, std::abs(c));
  for (size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(out.chi[i] - chi_half[i]) > 1e-4 * peak) {
      throw std::runtime_error(
          "regression_spectrum: cutoff convergence failure (doubling T moved a point by "
          "more than 1e-4 of the peak)");
    }
  }
  return out;
}

}  // namespace pdi::oracle
