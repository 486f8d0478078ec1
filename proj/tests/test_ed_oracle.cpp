#include <cmath>
#include <complex>
#include <random>

#include <doctest.h>
#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "xychain/correlator.hpp"
#include "xychain/ed_oracle.hpp"
#include "xychain/entanglement.hpp"
#include "xychain/spectrum.hpp"

using namespace xychain;
using complexd = std::complex<double>;

namespace {

Eigen::Matrix2cd random_single_site_density(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::Matrix2cd a;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) a(r, c) = complexd(nd(rng), nd(rng));
  Eigen::Matrix2cd rho = a * a.adjoint();
  return rho / rho.trace();
}

// Literal operator-sum Hamiltonian, used to certify the bit-level builder.
Eigen::MatrixXcd hamiltonian_from_operators(const ChainSpec& spec) {
  const int n = spec.n_spins;
  const auto ops = ed::spin_half_operators();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(1L << n, 1L << n);
  for (int site = 1; site <= n; ++site)
    h += spec.omega(site) * ed::embed_site(ops.iz, site, n);
  for (int bond = 1; bond <= n - 1; ++bond) {
    h += spec.coupling(bond) *
         (ed::embed_two_sites(ops.ix, bond, ops.ix, bond + 1, n) +
          ed::embed_two_sites(ops.iy, bond, ops.iy, bond + 1, n));
  }
  return h;
}

}  // namespace

TEST_CASE("spin-1/2 operator algebra") {
  const auto ops = ed::spin_half_operators();
  const complexd i1(0.0, 1.0);
  CHECK((ops.ix * ops.iy - ops.iy * ops.ix - i1 * ops.iz).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((ops.iy * ops.iz - ops.iz * ops.iy - i1 * ops.ix).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((ops.iz * ops.ix - ops.ix * ops.iz - i1 * ops.iy).cwiseAbs().maxCoeff() <= 1e-15);
  for (const auto* m : {&ops.ix, &ops.iy, &ops.iz})
    CHECK(((*m) * (*m) - 0.25 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <=
          1e-15);
}

TEST_CASE("site embedding puts site 1 on the most significant qubit") {
  const auto ops = ed::spin_half_operators();
  const Eigen::VectorXcd d1 = ed::embed_site(ops.iz, 1, 2).diagonal();
  const Eigen::VectorXcd d2 = ed::embed_site(ops.iz, 2, 2).diagonal();
  CHECK(d1(0) == complexd(0.5));
  CHECK(d1(1) == complexd(0.5));
  CHECK(d1(2) == complexd(-0.5));
  CHECK(d1(3) == complexd(-0.5));
  CHECK(d2(0) == complexd(0.5));
  CHECK(d2(1) == complexd(-0.5));
  CHECK(d2(2) == complexd(0.5));
  CHECK(d2(3) == complexd(-0.5));
}

TEST_CASE("full Hamiltonian construction") {
  SUBCASE("single bond couples |01> and |10> with D/2") {
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(ChainSpec{2, 0, 0, 1.0, 0});
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(4, 4);
    expect(1, 2) = expect(2, 1) = 0.5;
    CHECK((h - expect).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("bit-level builder equals the literal operator sum") {
    std::mt19937_64 rng(9);
    const auto spec = testutil::random_chain(rng, 4, false);
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(spec);
    const Eigen::MatrixXcd ref = hamiltonian_from_operators(spec);
    CHECK((h.cast<complexd>() - ref).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("commutes with the total z component") {
    std::mt19937_64 rng(10);
    const auto spec = testutil::random_chain(rng, 5, false);
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(spec);
    const auto ops = ed::spin_half_operators();
    Eigen::MatrixXcd iz_total = Eigen::MatrixXcd::Zero(32, 32);
    for (int site = 1; site <= 5; ++site) iz_total += ed::embed_site(ops.iz, site, 5);
    const Eigen::MatrixXcd comm = h.cast<complexd>() * iz_total - iz_total * h.cast<complexd>();
    CHECK(comm.cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("rejects chains above the hard cap") {
    CHECK_THROWS_AS(ed::build_full_hamiltonian(ChainSpec{15, 0, 0, 1.0, 0}),
                    std::invalid_argument);
  }
}

TEST_CASE("many-body spectrum equals the mode-filling construction") {
  SUBCASE("three-site homogeneous chain") {
    ChainSpec spec{3, 0.0, 0.0, 1.0, 0.0};
    const auto ed_levels = ed::hamiltonian_spectrum(ed::build_full_hamiltonian(spec));
    const auto filled = testutil::filling_spectrum(
        spec, numeric_spectrum(build_one_particle_matrix(spec)));
    CHECK((ed_levels - filled).cwiseAbs().maxCoeff() <= 1e-9);
  }
  SUBCASE("alternating chain with field, even and odd sizes") {
    std::mt19937_64 rng(12);
    for (int n : {4, 5, 7}) {
      const auto spec = testutil::random_chain(rng, n, false);
      const auto ed_levels = ed::hamiltonian_spectrum(ed::build_full_hamiltonian(spec));
      const auto filled = testutil::filling_spectrum(
          spec, numeric_spectrum(build_one_particle_matrix(spec)));
      CHECK((ed_levels - filled).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("thermal state") {
  SUBCASE("infinite temperature is maximally mixed") {
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(ChainSpec{4, 0.3, -0.1, 1.6, 0});
    const auto st = ed::thermal_state(h, 0.0);
    CHECK((st.rho - Eigen::MatrixXd::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK(std::abs(st.log_partition() - std::log(16.0)) <= 1e-12);
  }
  SUBCASE("unit trace, symmetry, positivity, conserved magnetization") {
    std::mt19937_64 rng(13);
    const auto spec = testutil::random_chain(rng, 5, false);
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(spec);
    const auto st = ed::thermal_state(h, spec.tau);
    CHECK(std::abs(st.rho.trace() - 1.0) <= 1e-12);
    CHECK((st.rho - st.rho.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(st.rho, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    const auto ops = ed::spin_half_operators();
    Eigen::MatrixXcd iz_total = Eigen::MatrixXcd::Zero(32, 32);
    for (int site = 1; site <= 5; ++site) iz_total += ed::embed_site(ops.iz, site, 5);
    const Eigen::MatrixXcd comm =
        st.rho.cast<complexd>() * iz_total - iz_total * st.rho.cast<complexd>();
    CHECK(comm.cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("zero-temperature limit projects on the ground space") {
    // N=3, delta=2, zero field: doubly degenerate ground level at -sqrt(5)/2.
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(ChainSpec{3, 0, 0, 2.0, 0});
    const auto st = ed::thermal_state(h, 20.0);
    CHECK(std::abs((st.rho * h).trace() + std::sqrt(5.0) / 2.0) <= 1e-12);
    CHECK(std::abs((st.rho * st.rho).trace() - 0.5) <= 1e-10);
  }
  SUBCASE("mean energy decreases with tau") {
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(ChainSpec{5, 0.2, -0.3, 1.8, 0});
    double prev = std::numeric_limits<double>::infinity();
    for (double tau : {0.0, 0.3, 1.0, 3.0, 10.0}) {
      const double e = (ed::thermal_state(h, tau).rho * h).trace();
      CHECK(e <= prev + 1e-12);
      prev = e;
    }
  }
  SUBCASE("rejects non-symmetric input") {
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(4, 4);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(ed::thermal_state(bad, 1.0), std::invalid_argument);
  }
}

TEST_CASE("pair reduction by index contraction") {
  SUBCASE("recovers an embedded two-site state on the leading pair") {
    std::mt19937_64 rng(14);
    const Eigen::Matrix4cd pair = testutil::random_density_matrix(rng);
    Eigen::MatrixXcd full = pair;
    for (int site = 3; site <= 5; ++site)
      full = Eigen::kroneckerProduct(full, random_single_site_density(rng)).eval();
    // The XY thermal states are real; the contraction is real as well, so
    // certify with the real part of a synthetic state made real-symmetric.
    const Eigen::MatrixXd rho = 0.5 * (full.real() + full.real().transpose());
    const Eigen::Matrix4d got = ed::partial_trace_pair(rho, 5, 1, 2);
    const Eigen::Matrix4d expect = 0.5 * (pair.real() + pair.real().transpose());
    CHECK((got - expect).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("product state reduces to the product of its factors") {
    std::mt19937_64 rng(15);
    std::vector<Eigen::Matrix2cd> site_rho;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
    for (int site = 1; site <= 5; ++site) {
      Eigen::Matrix2cd r = random_single_site_density(rng).real().cast<complexd>();
      r = 0.5 * (r + r.adjoint()).eval();
      site_rho.push_back(r);
      full = Eigen::kroneckerProduct(full, r).eval();
    }
    const Eigen::MatrixXd rho = full.real();
    const Eigen::Matrix4d got = ed::partial_trace_pair(rho, 5, 2, 4);
    const Eigen::Matrix4d expect =
        Eigen::kroneckerProduct(site_rho[1], site_rho[3]).real();
    CHECK((got - expect).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("infinite temperature reduces to I/4") {
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(ChainSpec{6, 0.1, 0.4, 2.5, 0});
    const auto st = ed::thermal_state(h, 0.0);
    const Eigen::Matrix4d got = ed::partial_trace_pair(st, 2, 5);
    CHECK((got - 0.25 * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("site range is checked") {
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(ChainSpec{4, 0, 0, 1.0, 0});
    const auto st = ed::thermal_state(h, 1.0);
    CHECK_THROWS_AS(ed::partial_trace_pair(st, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ed::partial_trace_pair(st, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(ed::partial_trace_pair(st, 3, 3), std::invalid_argument);
  }
}

TEST_CASE("coefficient reconstruction matches the index contraction") {
  std::mt19937_64 rng(16);
  const auto spec = testutil::random_chain(rng, 6, false);
  const auto st = ed::thermal_state(ed::build_full_hamiltonian(spec), spec.tau);
  for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 5}, std::pair{3, 6}}) {
    const Eigen::Matrix4cd rebuilt = ed::pair_state_via_coefficients(st, i, j);
    const Eigen::Matrix4d traced = ed::partial_trace_pair(st, i, j);
    CHECK((rebuilt - traced.cast<complexd>()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("reduced states carry the X structure") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 2; ++rep) {
    const auto spec = testutil::random_chain(rng, 7, rep == 0);
    const auto st = ed::thermal_state(ed::build_full_hamiltonian(spec), spec.tau);
    const std::pair<int, int> zero_slots[] = {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 3},
                                              {2, 3}, {3, 1}, {3, 2}, {1, 2}, {2, 1}};
    for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 5}}) {
      for (auto [a, b] : zero_slots)
        CHECK(std::abs(ed::alpha_coefficient(st, i, j, a, b)) <= 1e-10);
      const auto a11 = ed::alpha_coefficient(st, i, j, 1, 1);
      const auto a22 = ed::alpha_coefficient(st, i, j, 2, 2);
      CHECK(std::abs(a11 - a22) <= 1e-10);
    }
  }
}

TEST_CASE("oracle agrees with the free-fermion fast path") {
  SUBCASE("reduced state entries at N=9") {
    ChainSpec spec{9, 0.0, 0.0, 1.5, 30.0};
    const auto st = ed::thermal_state(ed::build_full_hamiltonian(spec), spec.tau);
    const Eigen::Matrix4d oracle_pair = ed::partial_trace_pair(st, 2, 3);
    const auto g = greens_matrix(spec, numeric_spectrum(build_one_particle_matrix(spec)));
    const auto fast = reduced_density_matrix(spec, g, 2, 3);
    CHECK((oracle_pair - fast.matrix()).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("concurrence at N=5") {
    ChainSpec spec{5, 0.0, 0.0, 2.0, 10.0};
    const auto g = greens_matrix(spec, numeric_spectrum(build_one_particle_matrix(spec)));
    const double c_fast =
        concurrence_xstate(reduced_density_matrix(spec, g, 2, 3)).concurrence;
    CHECK(std::abs(ed::oracle_concurrence(spec, 2, 3) - c_fast) <= 1e-8);
  }
}

TEST_CASE("oracle pipeline") {
  SUBCASE("next-nearest neighbors are unentangled at zero field") {
    ChainSpec spec{9, 0.0, 0.0, 1.0, 30.0};
    CHECK(ed::oracle_concurrence(spec, 1, 3) <= 1e-10);
  }
  SUBCASE("isolated bond matches the closed form") {
    for (double tau : {0.5, 2.0, 30.0}) {
      ChainSpec spec{2, 0.0, 0.0, 1.0, tau};
      CHECK(std::abs(ed::oracle_concurrence(spec, 1, 2) -
                     testutil::isolated_pair_concurrence(tau)) <= 1e-10);
    }
  }
  SUBCASE("rejects chains above the working range") {
    CHECK_THROWS_AS(ed::oracle_concurrence(ChainSpec{13, 0, 0, 1.0, 1.0}, 1, 2),
                    std::invalid_argument);
  }
}
