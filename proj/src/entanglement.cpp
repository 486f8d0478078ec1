#include "xychain/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xychain/errors.hpp"

namespace xychain {

namespace {

// sigma_y (x) sigma_y, real in the standard basis.
Eigen::Matrix4d spin_flip_kernel() {
  Eigen::Matrix4d f = Eigen::Matrix4d::Zero();
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

void require_density_matrix(const Eigen::Matrix4cd& rho, const char* who) {
  constexpr double tol = 1e-10;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol)
    throw std::invalid_argument(std::string(who) + ": trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error(std::string(who) + ": Hermitian eigensolver failed");
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument(std::string(who) + ": matrix is not positive semidefinite");
}

ConcurrenceResult from_sqrt_eigenvalues(std::array<double, 4> l) {
  std::sort(l.begin(), l.end(), std::greater<>());
  ConcurrenceResult r;
  r.lambdas = l;
  r.concurrence = std::min(1.0, std::max(0.0, l[0] - l[1] - l[2] - l[3]));
  return r;
}

}  // namespace

Eigen::Matrix4cd spin_flip(const Eigen::Matrix4cd& rho) {
  require_density_matrix(rho, "spin_flip");
  static const Eigen::Matrix4d f = spin_flip_kernel();
  return f * rho.conjugate() * f;
}

ConcurrenceResult concurrence_general(const Eigen::Matrix4cd& rho) {
  const Eigen::Matrix4cd product = rho * spin_flip(rho);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product, false);
  if (es.info() != Eigen::Success)
    throw numerical_error("concurrence_general: eigensolver failed on rho*rho_tilde");

  // The product has real non-negative spectrum; tiny negatives and imaginary
  // parts are roundoff.  Anything beyond the clamp window means the input
  // was not a density matrix after all.
  constexpr double clamp = 1e-10;
  std::array<double, 4> l{};
  for (int k = 0; k < 4; ++k) {
    const auto ev = es.eigenvalues()(k);
    if (std::abs(ev.imag()) > 1e-8 || ev.real() < -clamp)
      throw numerical_error("concurrence_general: spectrum of rho*rho_tilde is not "
                            "real non-negative");
    l[k] = std::sqrt(std::max(0.0, ev.real()));
  }
  return from_sqrt_eigenvalues(l);
}

ConcurrenceResult concurrence_xstate(const TwoSpinState& s) {
  const double sad = std::sqrt(std::max(0.0, s.a * s.d));
  const double sbc = std::sqrt(std::max(0.0, s.b * s.c));
  return from_sqrt_eigenvalues({sad, sad, std::abs(s.x + sbc), std::abs(s.x - sbc)});
}

}
