#pragma once

#include <array>

#include <Eigen/Dense>

#include "xychain/correlator.hpp"

namespace xychain {

// Square roots of the eigenvalues of rho * rho_tilde, descending, and the
// concurrence max{0, l1 - l2 - l3 - l4}.
struct ConcurrenceResult {
  std::array<double, 4> lambdas{};
  double concurrence = 0.0;
};

// rho_tilde = (sigma_y x sigma_y) rho^* (sigma_y x sigma_y) in the basis
// {|00>,|01>,|10>,|11>}.  Throws std::invalid_argument unless rho is
// Hermitian, unit-trace and positive semidefinite within 1e-10.
Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho);

// Wootters concurrence of an arbitrary two-qubit density matrix.
ConcurrenceResult concurrence_general(const Eigen::Matrix4cd& rho);

// X-state shortcut: l1 = l4 = sqrt(a d), l_{2,3} = |x +- sqrt(b c)|.
ConcurrenceResult concurrence_xstate(const TwoSpinState& s);

}
