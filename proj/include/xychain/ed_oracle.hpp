#pragma once

#include <complex>

#include <Eigen/Dense>

#include "xychain/chain_spec.hpp"

namespace xychain::ed {

// Brute-force exact diagonalization in the full 2^N spin space.  Ground
// truth for the free-fermion fast path and the only provider of non-adjacent
// transverse correlations.  N <= 12 is the working range; 14 is a hard cap.
inline constexpr int kDefaultCap = 12;
inline constexpr int kHardCap = 14;

// Spin-1/2 matrices (entries +-1/2, +-i/2) with spin-up = |0> first.
struct SpinOperatorSet {
  Eigen::Matrix2cd ix, iy, iz, id;
};
SpinOperatorSet spin_half_operators();

// Kronecker embedding; site 1 is the most significant qubit of the basis
// index.  Dense, for test-scale N.
Eigen::MatrixXcd embed_site(const Eigen::Matrix2cd& m, int site, int n_spins);
Eigen::MatrixXcd embed_two_sites(const Eigen::Matrix2cd& mi, int i,
                                 const Eigen::Matrix2cd& mj, int j, int n_spins);

// H = sum_n omega_n I_nz + sum_n D_{n,n+1} (I_nx I_{n+1,x} + I_ny I_{n+1,y}),
// real symmetric in the standard basis.  Throws above the hard cap.
Eigen::MatrixXd build_full_hamiltonian(const ChainSpec& spec);

// Eigenvalues of a real symmetric matrix, ascending (LAPACK dsyevd).
Eigen::VectorXd hamiltonian_spectrum(const Eigen::MatrixXd& h);

// rho = exp(-beta H)/Z with beta = 2 tau, computed through the shifted
// spectrum exp(-beta (E_k - e_min)) so large tau cannot overflow.
// Z = exp(-beta e_min) * z_shifted.
struct ThermalState {
  int n_spins = 0;
  double tau = 0.0;
  Eigen::MatrixXd rho;
  double z_shifted = 0.0;
  double e_min = 0.0;

  int dim() const { return static_cast<int>(rho.rows()); }
  double log_partition() const;
};

ThermalState thermal_state(const Eigen::MatrixXd& h, double tau);

// Reduced 4x4 state of sites (i, j), i < j, by direct index contraction over
// the environment.  Basis |q_i q_j>, site i first.
Eigen::Matrix4d partial_trace_pair(const ThermalState& state, int i, int j);
Eigen::Matrix4d partial_trace_pair(const Eigen::MatrixXd& rho, int n_spins,
                                   int i, int j);

// Expansion-coefficient route to the same 4x4 state:
//   alpha^{ab} = 2^{N-2} tr{rho x_i^a x_j^b} / tr{(x_i^a)^2 (x_j^b)^2},
//   rho_ij    = sum_{a,b} alpha^{ab} x^a (x) x^b,
// with x^0 = 1, x^1 = I_x, x^2 = I_y, x^3 = I_z.  One route tests the other.
std::complex<double> alpha_coefficient(const ThermalState& state, int i, int j,
                                       int xi_i, int xi_j);
Eigen::Matrix4cd pair_state_via_coefficients(const ThermalState& state, int i, int j);

// Full pipeline: build H, thermal state, partial trace, Wootters concurrence.
// Any pair, including |i-j| >= 2.  Requires N <= 12.
double oracle_concurrence(const ChainSpec& spec, int i, int j);

}
