#include "xychain/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xychain/errors.hpp"

namespace xychain {

namespace {

constexpr double kPi = std::numbers::pi;

// (-delta)^e with integer e >= 0.
double signed_pow(double delta, int e) {
  double p = std::pow(delta, e);
  return (e % 2 != 0) ? -p : p;
}

void require_odd(int n, const char* who) {
  if (n % 2 == 0)
    throw std::invalid_argument(std::string(who) +
                                ": closed forms cover odd N only; use numeric_spectrum");
}

}  // namespace

Eigen::MatrixXd OneParticleMatrix::dense() const {
  const int n = order();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = diag(i);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = off(i);
    m(i + 1, i) = off(i);
  }
  return m;
}

OneParticleMatrix build_one_particle_matrix(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_spins;
  OneParticleMatrix m;
  m.diag.resize(n);
  m.off.resize(n - 1);
  for (int site = 1; site <= n; ++site) m.diag(site - 1) = 2.0 * spec.omega(site);
  for (int bond = 1; bond <= n - 1; ++bond) m.off(bond - 1) = spec.coupling(bond);
  return m;
}

Spectrum numeric_spectrum(const OneParticleMatrix& m) {
  const int n = m.order();
  if (n < 2) throw std::invalid_argument("numeric_spectrum: order must be >= 2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(m.diag, m.off, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw numerical_error("numeric_spectrum: tridiagonal QL iteration failed");
  Spectrum sp;
  sp.lambda = es.eigenvalues().reverse();
  sp.u = es.eigenvectors().rowwise().reverse();
  sp.source = SpectrumSource::numeric;
  return sp;
}

AlternatingAux alternating_aux(const ChainSpec& spec) {
  spec.validate();
  require_odd(spec.n_spins, "alternating_aux");
  const int n = spec.n_spins;
  const double del = spec.delta;

  AlternatingAux aux;
  aux.n = n;
  aux.c1 = spec.omega_even - spec.omega_odd;
  aux.c2 = spec.omega_even + spec.omega_odd;
  aux.delta_k.setZero(n);
  aux.a_k.setZero(n);
  aux.l_k.setZero(n);
  aux.f_k.setZero(n);
  aux.r_k.setZero(n);
  aux.eps_k.setZero(n);

  const int mid = aux.mid();
  for (int idx = 0; idx < n; ++idx) {
    const int k = idx + 1;
    // 1 + 2 delta cos(2 pi k/(N+1)) + delta^2, written as a sum of
    // non-negatives so it cannot round below zero.
    const double cosk = std::cos(2.0 * kPi * k / (n + 1));
    const double dk = (1.0 - del) * (1.0 - del) + 2.0 * del * (1.0 + cosk);
    aux.delta_k(idx) = dk;
    if (idx == mid) {
      aux.eps_k(idx) = 2.0 * spec.omega_odd;
      continue;
    }
    const double s = std::sqrt(aux.c1 * aux.c1 + dk);
    // Branch term lambda_k - 2 omega_odd = c1 +- s, in cancellation-free form.
    double t;
    if (idx < mid) {
      t = (aux.c1 >= 0.0) ? aux.c1 + s : dk / (s - aux.c1);
      aux.eps_k(idx) = aux.c2 + s;
    } else {
      t = (aux.c1 <= 0.0) ? aux.c1 - s : -dk / (aux.c1 + s);
      aux.eps_k(idx) = aux.c2 - s;
    }
    const double t2 = t * t;
    aux.l_k(idx) = 1.0 / t;
    aux.f_k(idx) = 4.0 / (n + 1) * (1.0 - dk / (t2 + dk));
    aux.r_k(idx) = 4.0 / (n + 1) / (t2 + dk);
    aux.a_k(idx) = 2.0 * std::abs(t) / (std::sqrt(double(n + 1)) * std::sqrt(t2 + dk));
  }

  // (delta^2-1)/(delta^{N+1}-1) has a removable singularity at delta = 1.
  if (std::abs(del - 1.0) < 1e-8)
    aux.b = std::sqrt(2.0 / (n + 1));
  else
    aux.b = std::sqrt((del * del - 1.0) / (std::pow(del, n + 1) - 1.0));
  return aux;
}

Spectrum analytic_spectrum(const ChainSpec& spec) {
  spec.validate();
  require_odd(spec.n_spins, "analytic_spectrum");
  const int n = spec.n_spins;
  const double del = spec.delta;
  const AlternatingAux aux = alternating_aux(spec);
  const int mid = aux.mid();

  Spectrum sp;
  sp.lambda.resize(n);
  sp.u.setZero(n, n);
  sp.source = SpectrumSource::analytic;

  for (int idx = 0; idx < n; ++idx) {
    const int k = idx + 1;
    sp.lambda(idx) = aux.eps_k(idx);  // D1 = 1
    if (idx == mid) {
      for (int j = 1; j <= n; j += 2)
        sp.u(j - 1, idx) = aux.b * signed_pow(del, (n - j) / 2);
      continue;
    }
    const double al = aux.a_k(idx) * aux.l_k(idx);
    for (int j = 1; j <= n; ++j) {
      if (j % 2 == 1) {
        sp.u(j - 1, idx) = al * (del * std::sin(kPi * k * (j - 1) / (n + 1)) +
                                 std::sin(kPi * k * (j + 1) / (n + 1)));
      } else {
        sp.u(j - 1, idx) = aux.a_k(idx) * std::sin(kPi * k * j / (n + 1));
      }
    }
  }
  return sp;
}

Spectrum homogeneous_spectrum(int n_spins, double omega0) {
  if (n_spins < 2)
    throw std::invalid_argument("homogeneous_spectrum: n_spins must be >= 2");
  if (!std::isfinite(omega0))
    throw std::invalid_argument("homogeneous_spectrum: omega0 must be finite");
  const int n = n_spins;
  Spectrum sp;
  sp.lambda.resize(n);
  sp.u.resize(n, n);
  sp.source = SpectrumSource::analytic;
  const double norm = std::sqrt(2.0 / (n + 1));
  for (int idx = 0; idx < n; ++idx) {
    const int k = idx + 1;
    sp.lambda(idx) = 2.0 * (std::cos(kPi * k / (n + 1)) + omega0);
    for (int j = 1; j <= n; ++j)
      sp.u(j - 1, idx) = norm * std::sin(kPi * k * j / (n + 1));
  }
  return sp;
}

}
