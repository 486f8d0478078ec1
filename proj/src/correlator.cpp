#include "xychain/correlator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace xychain {

namespace {

constexpr double kPi = std::numbers::pi;

void check_site(const GreensMatrix& g, int site, const char* who) {
  if (site < 1 || site > g.order())
    throw std::invalid_argument(std::string(who) + ": site " + std::to_string(site) +
                                " out of range 1.." + std::to_string(g.order()));
}

double signed_pow(double delta, int e) {
  double p = std::pow(delta, e);
  return (e % 2 != 0) ? -p : p;
}

}  // namespace

Eigen::Matrix4d TwoSpinState::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  m(1, 2) = x;
  m(2, 1) = x;
  return m;
}

double fermi_factor(double eps, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("fermi_factor: tau must be >= 0 and finite");
  if (!std::isfinite(eps)) throw std::invalid_argument("fermi_factor: eps must be finite");
  if (eps >= 0.0) {
    const double t = std::exp(-tau * eps);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(tau * eps));
}

GreensMatrix greens_matrix(const ChainSpec& spec, const Spectrum& spectrum) {
  spec.validate();
  const int n = spectrum.n();
  if (n != spec.n_spins)
    throw std::invalid_argument("greens_matrix: spectrum order " + std::to_string(n) +
                                " does not match n_spins " + std::to_string(spec.n_spins));

  // g(eps) = 1/2 - tanh(tau*eps/2)/2
  Eigen::VectorXd h(n);
  for (int k = 0; k < n; ++k) h(k) = 0.5 * std::tanh(0.5 * spec.tau * spectrum.lambda(k));

  GreensMatrix out;
  out.tau = spec.tau;
  out.g.resize(n, n);
  const Eigen::MatrixXd& u = spectrum.u;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += u(i, k) * h(k) * u(j, k);
      const double val = (i == j) ? 0.5 - acc : -acc;
      out.g(i, j) = val;
      out.g(j, i) = val;
    }
  }
  return out;
}

double alpha30(const GreensMatrix& g, int i) {
  check_site(g, i, "alpha30");
  return g.g(i - 1, i - 1) - 0.5;
}

double alpha03(const GreensMatrix& g, int j) {
  check_site(g, j, "alpha03");
  return g.g(j - 1, j - 1) - 0.5;
}

double alpha33(const GreensMatrix& g, int i, int j) {
  check_site(g, i, "alpha33");
  check_site(g, j, "alpha33");
  if (i == j) throw std::invalid_argument("alpha33: sites must differ");
  const double gii = g.g(i - 1, i - 1);
  const double gjj = g.g(j - 1, j - 1);
  const double gij = g.g(i - 1, j - 1);
  return 4.0 * (gii * gjj - gij * gij) - 2.0 * (gii + gjj) + 1.0;
}

double alpha11_nearest(const GreensMatrix& g, int i) {
  check_site(g, i, "alpha11_nearest");
  check_site(g, i + 1, "alpha11_nearest");
  return 2.0 * g.g(i - 1, i);
}

TwoSpinState reduced_density_matrix(const ChainSpec& spec, const GreensMatrix& g,
                                    int i, int j) {
  spec.validate();
  if (g.order() != spec.n_spins)
    throw std::invalid_argument("reduced_density_matrix: Greens matrix order mismatch");
  check_site(g, i, "reduced_density_matrix");
  check_site(g, j, "reduced_density_matrix");
  if (i >= j) throw std::invalid_argument("reduced_density_matrix: need i < j");
  if (j != i + 1)
    throw std::invalid_argument(
        "reduced_density_matrix: fast path serves nearest neighbors only; "
        "the transverse correlator of pair (" + std::to_string(i) + "," +
        std::to_string(j) + ") requires the exact-diagonalization oracle");

  TwoSpinState s;
  s.i = i;
  s.j = j;
  s.alpha30 = alpha30(g, i);
  s.alpha03 = alpha03(g, j);
  s.alpha33 = alpha33(g, i, j);
  s.alpha11 = alpha11_nearest(g, i);
  s.a = 0.25 + 0.5 * s.alpha03 + 0.5 * s.alpha30 + 0.25 * s.alpha33;
  s.b = 0.25 - 0.5 * s.alpha03 + 0.5 * s.alpha30 - 0.25 * s.alpha33;
  s.c = 0.25 + 0.5 * s.alpha03 - 0.5 * s.alpha30 - 0.25 * s.alpha33;
  s.d = 0.25 - 0.5 * s.alpha03 - 0.5 * s.alpha30 + 0.25 * s.alpha33;
  s.x = 0.5 * s.alpha11;
  return s;
}

double alpha33_closed_form(const ChainSpec& spec, const AlternatingAux& aux, int i) {
  spec.validate();
  if (spec.n_spins % 2 == 0)
    throw std::invalid_argument("alpha33_closed_form: odd N only");
  if (aux.n != spec.n_spins)
    throw std::invalid_argument("alpha33_closed_form: aux does not match spec");
  const int n = spec.n_spins;
  if (i < 1 || i > n - 1)
    throw std::invalid_argument("alpha33_closed_form: pair (i, i+1) out of range");

  const int mid = aux.mid();
  const double del = spec.delta;
  const double b2 = aux.b * aux.b;
  const double g_mid = fermi_factor(2.0 * spec.omega_odd, spec.tau);

  Eigen::VectorXd g(n);
  for (int k = 0; k < n; ++k) g(k) = fermi_factor(aux.eps_k(k), spec.tau);

  auto sin_at = [&](int k_idx, int site) {
    return std::sin(kPi * (k_idx + 1) * site / (n + 1));
  };

  if (i % 2 == 0) {
    // Even i: the odd partner site i+1 enters through
    // S(m) = delta sin(pi m i/(N+1)) + sin(pi m (i+2)/(N+1)).
    const double midw = b2 * signed_pow(del, n - i - 1);
    auto s_of = [&](int m) { return del * sin_at(m, i) + sin_at(m, i + 2); };

    double term1 = 0.0, term2 = 0.0, term4 = 0.0;
    double lin_i = 0.0, lin_j = 0.0, orth = 0.0, orth_w = 0.0;
    for (int m = 0; m < n; ++m) {
      if (m == mid) continue;
      const double sm = s_of(m);
      const double sin_im = sin_at(m, i);
      term2 += aux.f_k(m) * midw * sin_im * sin_im * g_mid * g(m);
      lin_i += aux.f_k(m) * sin_im * sin_im * g(m);
      lin_j += aux.r_k(m) * sm * sm * g(m);
      orth += aux.f_k(m) * aux.l_k(m) * sm * sin_im;
      orth_w += aux.f_k(m) * aux.l_k(m) * sm * sin_im * g(m);
      for (int p = 0; p < n; ++p) {
        if (p == mid || p == m) continue;
        const double sp = s_of(p);
        const double sin_ip = sin_at(p, i);
        term1 += aux.f_k(m) * aux.r_k(p) * sin_im * sin_im * sp * sp * g(m) * g(p);
        term4 += aux.f_k(m) * aux.f_k(p) * aux.l_k(p) * aux.l_k(m) * sm * sp *
                 sin_im * sin_ip * g(m) * g(p);
      }
    }
    const double term3 = orth * orth_w;
    const double sub = lin_i + lin_j + midw * g_mid;
    return 4.0 * (term1 + term2 + term3 - term4) - 2.0 * sub + 1.0;
  }

  // Odd i: the even partner site i+1 carries the plain sine, the odd site i
  // enters through Q(m) = delta sin(pi m (i-1)/(N+1)) + sin(pi m (i+1)/(N+1)).
  const double midw = b2 * signed_pow(del, n - i);
  auto q_of = [&](int m) { return del * sin_at(m, i - 1) + sin_at(m, i + 1); };

  double term1 = 0.0, term2 = 0.0, term4 = 0.0;
  double lin_i = 0.0, lin_j = 0.0, orth = 0.0, orth_w = 0.0;
  for (int m = 0; m < n; ++m) {
    if (m == mid) continue;
    const double qm = q_of(m);
    const double sin_jm = sin_at(m, i + 1);
    term2 += aux.f_k(m) * midw * sin_jm * sin_jm * g_mid * g(m);
    lin_i += aux.r_k(m) * qm * qm * g(m);
    lin_j += aux.f_k(m) * sin_jm * sin_jm * g(m);
    orth += aux.f_k(m) * aux.l_k(m) * qm * sin_jm;
    orth_w += aux.f_k(m) * aux.l_k(m) * qm * sin_jm * g(m);
    for (int p = 0; p < n; ++p) {
      if (p == mid || p == m) continue;
      const double qp = q_of(p);
      const double sin_jp = sin_at(p, i + 1);
      // m runs over the Q-dressed modes, p over the sine-dressed ones.
      term1 += aux.f_k(p) * aux.r_k(m) * sin_jp * sin_jp * qm * qm * g(m) * g(p);
      term4 += aux.f_k(m) * aux.f_k(p) * aux.l_k(p) * aux.l_k(m) * qm * qp *
               sin_jm * sin_jp * g(m) * g(p);
    }
  }
  const double term3 = orth * orth_w;
  const double sub = lin_i + midw * g_mid + lin_j;
  return 4.0 * (term1 + term2 + term3 - term4) - 2.0 * sub + 1.0;
}

HomogeneousAlphas homogeneous_alphas(int n_spins, double omega0, double tau,
                                     int i, int j) {
  if (n_spins < 2)
    throw std::invalid_argument("homogeneous_alphas: n_spins must be >= 2");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("homogeneous_alphas: tau must be >= 0 and finite");
  if (i < 1 || j > n_spins || i >= j)
    throw std::invalid_argument("homogeneous_alphas: need 1 <= i < j <= N");
  const int n = n_spins;

  Eigen::VectorXd g(n), sin_i(n), sin_j(n);
  for (int k = 1; k <= n; ++k) {
    const double eps = 2.0 * std::cos(kPi * k / (n + 1)) + 2.0 * omega0;
    g(k - 1) = fermi_factor(eps, tau);
    sin_i(k - 1) = std::sin(kPi * k * i / (n + 1));
    sin_j(k - 1) = std::sin(kPi * k * j / (n + 1));
  }

  HomogeneousAlphas out;
  double occ_i = 0.0, occ_j = 0.0;
  for (int k = 0; k < n; ++k) {
    occ_i += sin_i(k) * sin_i(k) * g(k);
    occ_j += sin_j(k) * sin_j(k) * g(k);
  }
  out.a30 = 2.0 / (n + 1) * occ_i - 0.5;
  out.a03 = 2.0 / (n + 1) * occ_j - 0.5;

  double direct = 0.0, exchange = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int p = 0; p < n; ++p) {
      if (p == k) continue;
      direct += sin_i(k) * sin_i(k) * sin_j(p) * sin_j(p) * g(k) * g(p);
      exchange += sin_i(k) * sin_i(p) * sin_j(k) * sin_j(p) * g(k) * g(p);
    }
  }
  const double pref = 16.0 / double((n + 1) * (n + 1));
  out.a33 = pref * (direct - exchange) - 4.0 / (n + 1) * (occ_i + occ_j) + 1.0;

  if (j == i + 1) {
    double t = 0.0;
    for (int k = 0; k < n; ++k) t += sin_i(k) * sin_j(k) * g(k);
    out.a11 = 4.0 / (n + 1) * t;
  }
  return out;
}

}
