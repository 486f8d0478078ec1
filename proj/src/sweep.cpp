#include "xychain/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "xychain/correlator.hpp"
#include "xychain/ed_oracle.hpp"
#include "xychain/entanglement.hpp"
#include "xychain/spectrum.hpp"
#include "xychain/version.hpp"

namespace xychain {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::vector<double> make_grid(const SweepRange& r) {
  std::vector<double> g(r.count);
  g.front() = r.start;
  g.back() = r.stop;
  if (r.scale == GridScale::log) {
    const double l0 = std::log(r.start);
    const double l1 = std::log(r.stop);
    for (int k = 1; k < r.count - 1; ++k)
      g[k] = std::exp(l0 + (l1 - l0) * k / (r.count - 1));
  } else {
    for (int k = 1; k < r.count - 1; ++k)
      g[k] = r.start + (r.stop - r.start) * k / (r.count - 1);
  }
  return g;
}

std::vector<int> make_int_grid(const SweepRange& r) {
  std::vector<int> out;
  for (double v : make_grid(r)) {
    const int iv = static_cast<int>(std::lround(v));
    if (out.empty() || out.back() != iv) out.push_back(iv);
  }
  return out;
}

std::vector<std::pair<int, int>> pairs_for(const PairSelector& sel, int n) {
  std::vector<std::pair<int, int>> out;
  if (sel.all_bonds) {
    for (int i = 1; i <= n - 1; ++i) out.emplace_back(i, i + 1);
  } else {
    out.emplace_back(sel.i, sel.j);
  }
  return out;
}

SweepRecord fastpath_record(const ChainSpec& spec, int i, int j) {
  const Spectrum sp = numeric_spectrum(build_one_particle_matrix(spec));
  const GreensMatrix g = greens_matrix(spec, sp);
  const TwoSpinState s = reduced_density_matrix(spec, g, i, j);
  SweepRecord rec;
  rec.spec = spec;
  rec.i = i;
  rec.j = j;
  rec.a = s.a;
  rec.b = s.b;
  rec.c = s.c;
  rec.d = s.d;
  rec.x = s.x;
  rec.concurrence = concurrence_xstate(s).concurrence;
  rec.source = "fastpath";
  return rec;
}

SweepRecord oracle_record(const ChainSpec& spec, int i, int j) {
  const Eigen::MatrixXd h = ed::build_full_hamiltonian(spec);
  const ed::ThermalState st = ed::thermal_state(h, spec.tau);
  const Eigen::Matrix4d pair = ed::partial_trace_pair(st, i, j);
  SweepRecord rec;
  rec.spec = spec;
  rec.i = i;
  rec.j = j;
  rec.a = pair(0, 0);
  rec.b = pair(1, 1);
  rec.c = pair(2, 2);
  rec.d = pair(3, 3);
  rec.x = pair(1, 2);
  rec.concurrence =
      concurrence_general(pair.cast<std::complex<double>>()).concurrence;
  rec.source = "oracle";
  return rec;
}

}  // namespace

SweepRecord evaluate_concurrence(const ChainSpec& spec, int i, int j, Engine engine) {
  spec.validate();
  if (i < 1 || j > spec.n_spins || i >= j)
    throw std::invalid_argument("evaluate_concurrence: need 1 <= i < j <= N");

  Engine resolved = engine;
  if (engine == Engine::automatic) {
    if (j == i + 1)
      resolved = Engine::fastpath;
    else if (spec.n_spins <= ed::kDefaultCap)
      resolved = Engine::oracle;
    else
      throw std::invalid_argument(
          "evaluate_concurrence: non-adjacent pair needs the exact-diagonalization "
          "oracle, which is capped at N = " + std::to_string(ed::kDefaultCap));
  }
  if (resolved == Engine::fastpath && j != i + 1)
    throw std::invalid_argument("evaluate_concurrence: engine=fastpath requires j = i+1");
  return resolved == Engine::fastpath ? fastpath_record(spec, i, j)
                                      : oracle_record(spec, i, j);
}

void SweepRequest::validate() const {
  if (range.count < 2) throw std::invalid_argument("sweep: range count must be >= 2");
  if (!(range.start <= range.stop))
    throw std::invalid_argument("sweep: range start must be <= stop");
  if (range.scale == GridScale::log && !(range.start > 0.0))
    throw std::invalid_argument("sweep: log scale needs a positive range start");

  ChainSpec probe = base;
  switch (mode) {
    case SweepMode::temperature:
      if (range.start < 0.0) throw std::invalid_argument("sweep: tau must be >= 0");
      probe.tau = range.start;
      probe.validate();
      break;
    case SweepMode::delta:
      if (!(range.start > 0.0)) throw std::invalid_argument("sweep: delta must be > 0");
      probe.delta = range.start;
      probe.validate();
      break;
    case SweepMode::site: {
      if (range.scale == GridScale::log)
        throw std::invalid_argument("sweep: site mode uses a linear integer range");
      probe.validate();
      if (!pair.all_bonds)
        throw std::invalid_argument("sweep: site mode scans bonds; use --pair all");
      const int lo = static_cast<int>(std::lround(range.start));
      const int hi = static_cast<int>(std::lround(range.stop));
      if (lo < 1 || hi > base.n_spins - 1)
        throw std::invalid_argument("sweep: bond range outside 1..N-1");
      break;
    }
    case SweepMode::length: {
      if (range.scale == GridScale::log)
        throw std::invalid_argument("sweep: length mode uses a linear integer range");
      if (std::lround(range.start) < 2)
        throw std::invalid_argument("sweep: N must be >= 2");
      break;
    }
  }
  if (!pair.all_bonds && mode != SweepMode::site) {
    const int n_min = mode == SweepMode::length
                          ? static_cast<int>(std::lround(range.start))
                          : base.n_spins;
    if (pair.i < 1 || pair.j > n_min || pair.i >= pair.j)
      throw std::invalid_argument("sweep: pair out of range for the smallest chain");
  }
}

std::vector<SweepRecord> run_sweep(const SweepRequest& req) {
  req.validate();
  std::vector<SweepRecord> records;

  switch (req.mode) {
    case SweepMode::temperature:
      for (double tau : make_grid(req.range)) {
        ChainSpec spec = req.base;
        spec.tau = tau;
        for (auto [i, j] : pairs_for(req.pair, spec.n_spins))
          records.push_back(evaluate_concurrence(spec, i, j, req.engine));
      }
      break;
    case SweepMode::delta:
      for (double delta : make_grid(req.range)) {
        ChainSpec spec = req.base;
        spec.delta = delta;
        for (auto [i, j] : pairs_for(req.pair, spec.n_spins))
          records.push_back(evaluate_concurrence(spec, i, j, req.engine));
      }
      break;
    case SweepMode::site:
      for (int bond : make_int_grid(req.range))
        records.push_back(evaluate_concurrence(req.base, bond, bond + 1, req.engine));
      break;
    case SweepMode::length:
      for (int n : make_int_grid(req.range)) {
        ChainSpec spec = req.base;
        spec.n_spins = n;
        for (auto [i, j] : pairs_for(req.pair, n))
          records.push_back(evaluate_concurrence(spec, i, j, req.engine));
      }
      break;
  }
  return records;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records,
               const std::vector<std::string>& metadata) {
  os << "# xychain " << kVersion << "\n";
  for (const auto& m : metadata) os << "# " << m << "\n";
  os << "n,omega1,omega2,delta,tau,i,j,a,b,c,d,x,concurrence,source\n";
  for (const auto& r : records) {
    os << r.spec.n_spins << ',' << fmt(r.spec.omega_odd) << ',' << fmt(r.spec.omega_even)
       << ',' << fmt(r.spec.delta) << ',' << fmt(r.spec.tau) << ',' << r.i << ',' << r.j
       << ',' << fmt(r.a) << ',' << fmt(r.b) << ',' << fmt(r.c) << ',' << fmt(r.d) << ','
       << fmt(r.x) << ',' << fmt(r.concurrence) << ',' << r.source << '\n';
  }
}

namespace {

SweepRequest temperature_preset(int n, double delta, int i, int j) {
  SweepRequest req;
  req.mode = SweepMode::temperature;
  req.base.n_spins = n;
  req.base.delta = delta;
  req.range = {0.05, 50.0, 200, GridScale::log};
  req.pair = {false, i, j};
  return req;
}

std::string trimmed(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

}  // namespace

std::vector<FigureCurve> figure_presets(int id) {
  std::vector<FigureCurve> curves;
  switch (id) {
    case 1: {
      FigureCurve c;
      c.request = temperature_preset(101, 1.5, 2, 3);
      c.filename = "fig1_n101_delta1.5_pair2-3.csv";
      c.metadata = {"preset: figure 1, concurrence of spins (2,3) vs temperature",
                    "tau grid: log, 0.05..50, 200 points"};
      curves.push_back(std::move(c));
      break;
    }
    case 2: {
      FigureCurve c;
      c.request.mode = SweepMode::site;
      c.request.base.n_spins = 100;
      c.request.base.delta = 1.0;
      c.request.base.tau = 30.0;
      c.request.range = {1.0, 99.0, 99, GridScale::linear};
      c.request.pair = {true, 0, 0};
      c.filename = "fig2_n100_homogeneous_tau30.csv";
      c.metadata = {"preset: figure 2, nearest-neighbor concurrence vs site, N=100, delta=1",
                    "assumption: tau = 30 (temperature not fixed by the source figure)"};
      curves.push_back(std::move(c));
      break;
    }
    case 3: {
      for (double delta : {1.0, 1.17, 3.0}) {
        FigureCurve c;
        c.request.mode = SweepMode::site;
        c.request.base.n_spins = 17;
        c.request.base.delta = delta;
        c.request.base.tau = 30.0;
        c.request.range = {1.0, 16.0, 16, GridScale::linear};
        c.request.pair = {true, 0, 0};
        c.filename = "fig3_n17_tau30_delta" + trimmed(delta) + ".csv";
        c.metadata = {"preset: figure 3, nearest-neighbor concurrence vs site, N=17, tau=30",
                      "delta = " + trimmed(delta)};
        curves.push_back(std::move(c));
      }
      break;
    }
    case 4: {
      for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 3}}) {
        FigureCurve c;
        c.request.mode = SweepMode::delta;
        c.request.base.n_spins = 55;
        c.request.base.tau = 30.0;
        c.request.range = {0.1, 3.0, 150, GridScale::linear};
        c.request.pair = {false, i, j};
        c.filename = "fig4_n55_tau30_pair" + std::to_string(i) + "-" + std::to_string(j) + ".csv";
        c.metadata = {"preset: figure 4, concurrence vs coupling ratio, N=55, tau=30",
                      "assumption: delta axis 0.1..3 linear, 150 points (range not fixed "
                      "by the source figure)"};
        curves.push_back(std::move(c));
      }
      break;
    }
    case 5:
    case 6: {
      const int i = (id == 5) ? 1 : 2;
      for (int n : {3, 4, 6, 7, 100, 105}) {
        FigureCurve c;
        c.request = temperature_preset(n, 1.0, i, i + 1);
        c.filename = "fig" + std::to_string(id) + "_n" + std::to_string(n) + "_pair" +
                     std::to_string(i) + "-" + std::to_string(i + 1) + ".csv";
        c.metadata = {"preset: figure " + std::to_string(id) + ", concurrence of spins (" +
                          std::to_string(i) + "," + std::to_string(i + 1) +
                          ") vs temperature, homogeneous chain",
                      "tau grid: log, 0.05..50, 200 points"};
        curves.push_back(std::move(c));
      }
      break;
    }
    default:
      throw std::invalid_argument("figure_presets: id must be 1..6");
  }
  return curves;
}

std::vector<std::string> write_figure(int id, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  for (const auto& curve : figure_presets(id)) {
    const auto records = run_sweep(curve.request);
    const fs::path path = fs::path(out_dir) / curve.filename;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_figure: cannot open " + path.string());
    write_csv(os, records, curve.metadata);
    written.push_back(path.string());
  }
  return written;
}

namespace {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

ChainSpec random_spec(std::mt19937_64& rng, int n, bool zero_field) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  ChainSpec spec;
  spec.n_spins = n;
  spec.delta = 0.3 + 2.7 * u01(rng);
  spec.tau = 30.0 * u01(rng);
  if (!zero_field) {
    spec.omega_odd = -1.0 + 2.0 * u01(rng);
    spec.omega_even = -1.0 + 2.0 * u01(rng);
  }
  return spec;
}

SuiteResult oracle_equivalence_suite(std::mt19937_64& rng, bool full) {
  const int cases = full ? 50 : 12;
  const int n_max = full ? 11 : 9;
  std::vector<int> sizes;
  for (int n = 3; n <= n_max; n += 2) sizes.push_back(n);
  std::uniform_int_distribution<size_t> pick(0, sizes.size() - 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  double max_dev = 0.0;
  for (int c = 0; c < cases; ++c) {
    // Zero field on most cases and a random alternating field on the rest.
    const ChainSpec spec = random_spec(rng, sizes[pick(rng)], u01(rng) < 0.7);
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(spec);
    const ed::ThermalState st = ed::thermal_state(h, spec.tau);
    for (int i = 1; i <= spec.n_spins - 1; ++i) {
      const Eigen::Matrix4d pair = ed::partial_trace_pair(st, i, i + 1);
      const double c_oracle =
          concurrence_general(pair.cast<std::complex<double>>()).concurrence;
      const double c_fast = evaluate_concurrence(spec, i, i + 1, Engine::fastpath).concurrence;
      max_dev = std::max(max_dev, std::abs(c_oracle - c_fast));
    }
  }
  SuiteResult r;
  r.name = "oracle-equivalence";
  r.passed = max_dev <= 1e-8;
  r.detail = std::to_string(cases) + " cases, max |dC| = " + fmt(max_dev);
  return r;
}

SuiteResult structural_zero_suite(std::mt19937_64& rng, bool full) {
  const int n = full ? 9 : 7;
  const int reps = full ? 2 : 1;
  // Components whose coefficient must vanish when the field is axial:
  // every mixed transverse/longitudinal or single-transverse slot, plus the
  // two antisymmetric transverse ones; alpha11 - alpha22 is checked as well.
  const std::pair<int, int> zero_slots[] = {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 3},
                                            {2, 3}, {3, 1}, {3, 2}, {1, 2}, {2, 1}};
  double max_dev = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    const ChainSpec spec = random_spec(rng, n, rep % 2 == 0);
    const Eigen::MatrixXd h = ed::build_full_hamiltonian(spec);
    const ed::ThermalState st = ed::thermal_state(h, spec.tau);
    for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 5}, std::pair{3, n - 1}}) {
      for (auto [a, b] : zero_slots)
        max_dev = std::max(max_dev, std::abs(ed::alpha_coefficient(st, i, j, a, b)));
      const auto a11 = ed::alpha_coefficient(st, i, j, 1, 1);
      const auto a22 = ed::alpha_coefficient(st, i, j, 2, 2);
      max_dev = std::max(max_dev, std::abs(a11 - a22));
    }
  }
  SuiteResult r;
  r.name = "structural-zeros";
  r.passed = max_dev <= 1e-10;
  r.detail = "N = " + std::to_string(n) + ", max |alpha| = " + fmt(max_dev);
  return r;
}

SuiteResult closed_form_suite(std::mt19937_64& rng, bool full, bool inject_error) {
  const int points = full ? 100 : 40;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double max_dev = 0.0;

  for (int p = 0; p < points; ++p) {
    const int n = 3 + 2 * static_cast<int>(u01(rng) * 8);  // odd, 3..17
    const ChainSpec spec = random_spec(rng, n, u01(rng) < 0.5);
    const AlternatingAux aux = alternating_aux(spec);
    const GreensMatrix g = greens_matrix(spec, numeric_spectrum(build_one_particle_matrix(spec)));
    const int i = 1 + static_cast<int>(u01(rng) * (n - 1));
    double cf = alpha33_closed_form(spec, aux, i);
    if (inject_error) cf += 1e-3;
    max_dev = std::max(max_dev, std::abs(cf - alpha33(g, i, i + 1)));
  }
  for (int p = 0; p < points; ++p) {
    const int n = 2 + static_cast<int>(u01(rng) * 39);  // 2..40, both parities
    ChainSpec spec;
    spec.n_spins = n;
    spec.omega_odd = spec.omega_even = -1.0 + 2.0 * u01(rng);
    spec.tau = 30.0 * u01(rng);
    const GreensMatrix g = greens_matrix(spec, numeric_spectrum(build_one_particle_matrix(spec)));
    const int i = 1 + static_cast<int>(u01(rng) * (n - 1));
    const int j = i + 1;
    const HomogeneousAlphas ha = homogeneous_alphas(n, spec.omega_odd, spec.tau, i, j);
    max_dev = std::max(max_dev, std::abs(ha.a30 - alpha30(g, i)));
    max_dev = std::max(max_dev, std::abs(ha.a03 - alpha03(g, j)));
    max_dev = std::max(max_dev, std::abs(ha.a33 - alpha33(g, i, j)));
    max_dev = std::max(max_dev, std::abs(*ha.a11 - alpha11_nearest(g, i)));
  }

  SuiteResult r;
  r.name = "closed-form-crosscheck";
  r.passed = max_dev <= 1e-9;
  r.detail = std::to_string(2 * points) + " points, max |dalpha| = " + fmt(max_dev);
  return r;
}

SuiteResult infinite_temperature_suite() {
  double max_c = 0.0;
  for (int n : {3, 8, 101}) {
    ChainSpec spec;
    spec.n_spins = n;
    spec.delta = 1.4;
    spec.tau = 0.0;
    max_c = std::max(max_c, evaluate_concurrence(spec, 1, 2).concurrence);
    max_c = std::max(max_c, evaluate_concurrence(spec, 2, 3).concurrence);
  }
  SuiteResult r;
  r.name = "infinite-temperature";
  r.passed = max_c == 0.0;
  r.detail = "max C at tau=0 = " + fmt(max_c);
  return r;
}

}  // namespace

ValidateReport run_validation(const ValidateOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<SuiteResult> suites;
  suites.push_back(oracle_equivalence_suite(rng, opts.full));
  suites.push_back(structural_zero_suite(rng, opts.full));
  suites.push_back(closed_form_suite(rng, opts.full, opts.inject_alpha33_error));
  suites.push_back(infinite_temperature_suite());

  ValidateReport report;
  report.passed = true;
  std::ostringstream os;
  os << "xychain validation (seed " << opts.seed << ", " << (opts.full ? "full" : "small")
     << ")\n";
  for (const auto& s : suites) {
    report.passed = report.passed && s.passed;
    os << (s.passed ? "  [pass] " : "  [FAIL] ") << s.name << ": " << s.detail << "\n";
  }
  os << (report.passed ? "all suites passed\n" : "validation FAILED\n");
  report.text = os.str();
  return report;
}

}
