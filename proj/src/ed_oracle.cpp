#include "xychain/ed_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <lapacke.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "xychain/entanglement.hpp"
#include "xychain/errors.hpp"

namespace xychain::ed {

namespace {

using complexd = std::complex<double>;

// In-place dense symmetric eigen-decomposition: `a` is replaced by the
// eigenvector columns, `w` by the ascending eigenvalues.
void dense_symmetric_eig(Eigen::MatrixXd& a, Eigen::VectorXd& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
  if (info != 0)
    throw numerical_error("dsyevd failed with info = " + std::to_string(info));
}

int checked_n_spins(int n, const char* who) {
  if (n < 2 || n > kHardCap)
    throw std::invalid_argument(std::string(who) + ": n_spins " + std::to_string(n) +
                                " outside 2.." + std::to_string(kHardCap));
  return n;
}

// Bit position of a 1-based site; site 1 is the most significant qubit.
inline int bit_of(int site, int n) { return n - site; }

// Spreads the environment bits of `env` over all positions except p_hi, p_lo.
inline long scatter_env(int env, int n, int p_hi, int p_lo) {
  long out = 0;
  int b = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (pos == p_hi || pos == p_lo) continue;
    if ((env >> b) & 1) out |= 1L << pos;
    ++b;
  }
  return out;
}

void check_pair(int n, int i, int j, const char* who) {
  if (i < 1 || j > n || i >= j)
    throw std::invalid_argument(std::string(who) + ": need 1 <= i < j <= N, got (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
}

}  // namespace

SpinOperatorSet spin_half_operators() {
  SpinOperatorSet s;
  s.ix << 0.0, 0.5, 0.5, 0.0;
  s.iy << complexd(0, 0), complexd(0, -0.5), complexd(0, 0.5), complexd(0, 0);
  s.iz << 0.5, 0.0, 0.0, -0.5;
  s.id = Eigen::Matrix2cd::Identity();
  return s;
}

Eigen::MatrixXcd embed_site(const Eigen::Matrix2cd& m, int site, int n_spins) {
  checked_n_spins(n_spins, "embed_site");
  if (site < 1 || site > n_spins)
    throw std::invalid_argument("embed_site: site out of range");
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 1; s <= n_spins; ++s)
    out = Eigen::kroneckerProduct(out, (s == site) ? m : id).eval();
  return out;
}

Eigen::MatrixXcd embed_two_sites(const Eigen::Matrix2cd& mi, int i,
                                 const Eigen::Matrix2cd& mj, int j, int n_spins) {
  checked_n_spins(n_spins, "embed_two_sites");
  if (i < 1 || i > n_spins || j < 1 || j > n_spins || i == j)
    throw std::invalid_argument("embed_two_sites: sites out of range or equal");
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = 1; s <= n_spins; ++s) {
    const Eigen::Matrix2cd& f = (s == i) ? mi : (s == j) ? mj : id;
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

Eigen::MatrixXd build_full_hamiltonian(const ChainSpec& spec) {
  spec.validate();
  const int n = checked_n_spins(spec.n_spins, "build_full_hamiltonian");
  const long dim = 1L << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  for (long s = 0; s < dim; ++s) {
    double e = 0.0;
    for (int site = 1; site <= n; ++site) {
      const bool down = (s >> bit_of(site, n)) & 1;
      e += spec.omega(site) * (down ? -0.5 : 0.5);
    }
    h(s, s) = e;
  }
  // Flip-flop: D/2 between |..01..> and |..10..> on each bond.
  for (int bond = 1; bond <= n - 1; ++bond) {
    const int p1 = bit_of(bond, n);
    const int p2 = bit_of(bond + 1, n);
    const long mask = (1L << p1) | (1L << p2);
    const double half_d = 0.5 * spec.coupling(bond);
    for (long s = 0; s < dim; ++s) {
      const bool b1 = (s >> p1) & 1;
      const bool b2 = (s >> p2) & 1;
      if (b1 == b2) continue;
      const long t = s ^ mask;
      if (s < t) {
        h(s, t) += half_d;
        h(t, s) += half_d;
      }
    }
  }
  return h;
}

Eigen::VectorXd hamiltonian_spectrum(const Eigen::MatrixXd& h) {
  Eigen::MatrixXd a = h;
  Eigen::VectorXd w;
  dense_symmetric_eig(a, w);
  return w;
}

double ThermalState::log_partition() const {
  return -2.0 * tau * e_min + std::log(z_shifted);
}

ThermalState thermal_state(const Eigen::MatrixXd& h, double tau) {
  if (h.rows() != h.cols() || h.rows() < 2)
    throw std::invalid_argument("thermal_state: H must be square");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("thermal_state: H must be symmetric");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("thermal_state: tau must be >= 0 and finite");
  const long dim = h.rows();
  int n = 0;
  while ((1L << n) < dim) ++n;
  if ((1L << n) != dim)
    throw std::invalid_argument("thermal_state: dimension is not a power of two");

  Eigen::MatrixXd v = h;
  Eigen::VectorXd e;
  dense_symmetric_eig(v, e);

  const double beta = 2.0 * tau;
  const double e_min = e.minCoeff();
  Eigen::VectorXd w(dim);
  for (long k = 0; k < dim; ++k) w(k) = std::exp(-beta * (e(k) - e_min));
  const double z = w.sum();
  w /= z;

  ThermalState st;
  st.n_spins = n;
  st.tau = tau;
  st.z_shifted = z;
  st.e_min = e_min;
  // rho = (V sqrt(w)) (V sqrt(w))^T: symmetric PSD by construction.
  Eigen::MatrixXd m = v * w.cwiseSqrt().asDiagonal();
  st.rho.setZero(dim, dim);
  st.rho.selfadjointView<Eigen::Lower>().rankUpdate(m);
  st.rho.triangularView<Eigen::StrictlyUpper>() =
      st.rho.transpose().triangularView<Eigen::StrictlyUpper>();
  return st;
}

Eigen::Matrix4d partial_trace_pair(const Eigen::MatrixXd& rho, int n_spins,
                                   int i, int j) {
  checked_n_spins(n_spins, "partial_trace_pair");
  check_pair(n_spins, i, j, "partial_trace_pair");
  if (rho.rows() != (1L << n_spins))
    throw std::invalid_argument("partial_trace_pair: dimension mismatch");

  const int pi = bit_of(i, n_spins);
  const int pj = bit_of(j, n_spins);
  const int env_count = 1 << (n_spins - 2);
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  for (int env = 0; env < env_count; ++env) {
    const long base = scatter_env(env, n_spins, pi, pj);
    for (int si = 0; si < 2; ++si)
      for (int sj = 0; sj < 2; ++sj) {
        const long row = base | (long(si) << pi) | (long(sj) << pj);
        for (int ti = 0; ti < 2; ++ti)
          for (int tj = 0; tj < 2; ++tj) {
            const long col = base | (long(ti) << pi) | (long(tj) << pj);
            out(si * 2 + sj, ti * 2 + tj) += rho(row, col);
          }
      }
  }
  return out;
}

Eigen::Matrix4d partial_trace_pair(const ThermalState& state, int i, int j) {
  return partial_trace_pair(state.rho, state.n_spins, i, j);
}

std::complex<double> alpha_coefficient(const ThermalState& state, int i, int j,
                                       int xi_i, int xi_j) {
  check_pair(state.n_spins, i, j, "alpha_coefficient");
  if (xi_i < 0 || xi_i > 3 || xi_j < 0 || xi_j > 3)
    throw std::invalid_argument("alpha_coefficient: component indices must be 0..3");
  const SpinOperatorSet ops = spin_half_operators();
  const Eigen::Matrix2cd* table[4] = {&ops.id, &ops.ix, &ops.iy, &ops.iz};
  const Eigen::Matrix2cd& xi = *table[xi_i];
  const Eigen::Matrix2cd& xj = *table[xi_j];

  const Eigen::MatrixXcd num_op = embed_two_sites(xi, i, xj, j, state.n_spins);
  const Eigen::MatrixXcd den_op =
      embed_two_sites(xi * xi, i, xj * xj, j, state.n_spins);

  // tr{rho K} with rho real symmetric.
  const complexd num =
      (state.rho.cast<complexd>().cwiseProduct(num_op.transpose())).sum();
  const complexd den = den_op.trace();
  const double scale = std::pow(2.0, state.n_spins - 2);
  return scale * num / den;
}

Eigen::Matrix4cd pair_state_via_coefficients(const ThermalState& state, int i, int j) {
  const SpinOperatorSet ops = spin_half_operators();
  const Eigen::Matrix2cd* table[4] = {&ops.id, &ops.ix, &ops.iy, &ops.iz};
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const complexd alpha = alpha_coefficient(state, i, j, a, b);
      out += alpha * Eigen::kroneckerProduct(*table[a], *table[b]).eval();
    }
  return out;
}

double oracle_concurrence(const ChainSpec& spec, int i, int j) {
  spec.validate();
  if (spec.n_spins > kDefaultCap)
    throw std::invalid_argument("oracle_concurrence: N > " +
                                std::to_string(kDefaultCap) +
                                " exceeds the exact-diagonalization working range");
  check_pair(spec.n_spins, i, j, "oracle_concurrence");

  const Eigen::MatrixXd h = build_full_hamiltonian(spec);
  const ThermalState st = thermal_state(h, spec.tau);
  const Eigen::Matrix4d pair = partial_trace_pair(st, i, j);
  return concurrence_general(pair.cast<complexd>()).concurrence;
}

}
