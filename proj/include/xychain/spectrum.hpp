#pragma once

#include <Eigen/Dense>

#include "xychain/chain_spec.hpp"

namespace xychain {

// The N x N symmetric tridiagonal one-particle matrix of the chain.
// diag(n) = 2*omega_{n+1}, off(n) = D_{n+1,n+2} (0-based storage).
struct OneParticleMatrix {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;

  int order() const { return static_cast<int>(diag.size()); }
  Eigen::MatrixXd dense() const;
};

enum class SpectrumSource { numeric, analytic };

// Full eigen-decomposition of the one-particle matrix.  Eigenvalues are in
// descending order; column k of `u` is the mode with the (k+1)-th largest
// eigenvalue.  For odd alternating chains this coincides with the standard
// mode numbering: modes 1..(N-1)/2 form the upper branch, mode (N+1)/2 is
// the field-pinned mid mode at 2*omega_odd, modes (N+3)/2..N the lower
// branch.  Column signs are not fixed; every consumer must be (and is)
// sign-invariant.
struct Spectrum {
  Eigen::VectorXd lambda;
  Eigen::MatrixXd u;
  SpectrumSource source = SpectrumSource::numeric;

  int n() const { return static_cast<int>(lambda.size()); }
};

// Per-mode quantities of the odd-N alternating chain, 0-based on the mode
// index (array slot k holds mode k+1).  The slots of a_k, l_k, f_k, r_k at
// the mid mode are unused and left at zero; the mid mode is described by the
// norm `b` instead.  eps_k = lambda_k / D1 for every mode including the mid
// one.
struct AlternatingAux {
  int n = 0;
  double c1 = 0.0;  // (omega_even - omega_odd) / D1
  double c2 = 0.0;  // (omega_even + omega_odd) / D1
  double b = 0.0;   // mid-mode normalization
  Eigen::VectorXd delta_k;
  Eigen::VectorXd a_k;
  Eigen::VectorXd l_k;
  Eigen::VectorXd f_k;
  Eigen::VectorXd r_k;
  Eigen::VectorXd eps_k;

  int mid() const { return (n - 1) / 2; }
};

OneParticleMatrix build_one_particle_matrix(const ChainSpec& spec);

// General engine: works for any N >= 2 and any alternation.
// Throws numerical_error if the tridiagonal QL iteration fails.
Spectrum numeric_spectrum(const OneParticleMatrix& m);

// Closed-form mode quantities; requires odd n_spins.
AlternatingAux alternating_aux(const ChainSpec& spec);

// Closed-form spectrum of the odd-N alternating chain.  Rejects even N
// (use numeric_spectrum there).  Intended for validation and the explicit
// coefficient formulas; moderate N only (the mid-mode powers of delta
// degrade for delta far from 1 at very large N).
Spectrum analytic_spectrum(const ChainSpec& spec);

// Closed-form spectrum of the homogeneous chain (delta = 1, uniform field
// omega0), valid for odd and even N.  Eigenvalues 2*(cos(pi k/(N+1)) +
// omega0), descending.
Spectrum homogeneous_spectrum(int n_spins, double omega0);

}
