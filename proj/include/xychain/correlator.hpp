#pragma once

#include <optional>

#include <Eigen/Dense>

#include "xychain/chain_spec.hpp"
#include "xychain/spectrum.hpp"

namespace xychain {

// Thermal one-particle correlation matrix G_ij = <c_i^dag c_j>.
struct GreensMatrix {
  Eigen::MatrixXd g;
  double tau = 0.0;

  int order() const { return static_cast<int>(g.rows()); }
};

// Two-spin reduced thermal state in its X form,
//   {{a,0,0,0},{0,b,x,0},{0,x,c,0},{0,0,0,d}}
// in the basis |q_i q_j> with spin-up = |0> and i < j.
struct TwoSpinState {
  int i = 0;
  int j = 0;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, x = 0.0;
  double alpha00 = 0.25;
  double alpha30 = 0.0;  // <I_{iz}>
  double alpha03 = 0.0;  // <I_{jz}>
  double alpha33 = 0.0;  // 4 <I_{iz} I_{jz}>
  double alpha11 = 0.0;  // 4 <I_{ix} I_{jx}>, nearest neighbors only

  Eigen::Matrix4d matrix() const;
};

// Thermal occupation g(eps) = exp(-tau*eps) / (1 + exp(-tau*eps)),
// evaluated in overflow-free form for |tau*eps| up to 1e4 and beyond.
double fermi_factor(double eps, double tau);

// G = U diag(g(lambda_k)) U^T, assembled as I/2 - U diag(tanh(tau lambda/2)/2) U^T
// so that tau = 0 yields exactly I/2 and small tau suffers no cancellation.
GreensMatrix greens_matrix(const ChainSpec& spec, const Spectrum& spectrum);

// The longitudinal and transverse expansion coefficients, sites 1-based.
double alpha30(const GreensMatrix& g, int i);
double alpha03(const GreensMatrix& g, int j);
double alpha33(const GreensMatrix& g, int i, int j);       // any i != j
double alpha11_nearest(const GreensMatrix& g, int i);      // pair (i, i+1)

// Fast path for a nearest-neighbor pair (i, j = i+1).  Refuses j > i+1:
// the transverse correlator of non-adjacent spins carries operator strings
// this route does not evaluate; the exact-diagonalization oracle is the only
// provider for those pairs.
TwoSpinState reduced_density_matrix(const ChainSpec& spec, const GreensMatrix& g,
                                    int i, int j);

// Explicit closed form of alpha33 for the pair (i, i+1) of the odd-N
// alternating chain, evaluated literally from the mode sums (separate even-i
// and odd-i branches).  Independent of greens_matrix; used as a cross-check
// of the G route.
double alpha33_closed_form(const ChainSpec& spec, const AlternatingAux& aux, int i);

struct HomogeneousAlphas {
  double a03 = 0.0;
  double a30 = 0.0;
  double a33 = 0.0;
  std::optional<double> a11;  // engaged only for j = i+1
};

// Homogeneous-chain coefficient sums (delta = 1, uniform field), valid for
// odd and even N, evaluated literally.
HomogeneousAlphas homogeneous_alphas(int n_spins, double omega0, double tau,
                                     int i, int j);

}
