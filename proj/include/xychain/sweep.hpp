#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "xychain/chain_spec.hpp"

namespace xychain {

enum class Engine { automatic, fastpath, oracle };
enum class SweepMode { temperature, site, delta, length };
enum class GridScale { linear, log };

// Either one explicit pair (i, j) or every nearest-neighbor bond.
struct PairSelector {
  bool all_bonds = false;
  int i = 0;
  int j = 0;
};

struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  GridScale scale = GridScale::linear;
};

struct SweepRequest {
  SweepMode mode = SweepMode::temperature;
  ChainSpec base;          // fixed fields; the varied one is taken from `range`
  SweepRange range;
  PairSelector pair;
  Engine engine = Engine::automatic;

  void validate() const;
};

// One CSV row.
struct SweepRecord {
  ChainSpec spec;
  int i = 0;
  int j = 0;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, x = 0.0;
  double concurrence = 0.0;
  const char* source = "fastpath";  // "fastpath" | "oracle"
};

// Engine resolution: fastpath for nearest neighbors at any N; oracle for
// non-adjacent pairs with N <= 12; error otherwise.  A long-range value is
// never silently approximated.
SweepRecord evaluate_concurrence(const ChainSpec& spec, int i, int j,
                                 Engine engine = Engine::automatic);

// Rows ordered by (vary-value, i).  Deterministic.
std::vector<SweepRecord> run_sweep(const SweepRequest& req);

// Byte-stable CSV: '#' metadata lines, the fixed header, then one row per
// record with reals at 17 significant digits.
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records,
               const std::vector<std::string>& metadata);

// Preset sweeps reproducing the survey figures (all at zero Larmor
// frequencies); one CSV per curve.
struct FigureCurve {
  std::string filename;
  SweepRequest request;
  std::vector<std::string> metadata;
};
std::vector<FigureCurve> figure_presets(int id);

// Runs a preset and writes its curves under out_dir; returns written paths.
std::vector<std::string> write_figure(int id, const std::string& out_dir);

struct ValidateOptions {
  std::uint64_t seed = 42;
  bool full = false;
  bool inject_alpha33_error = false;  // test hook: corrupts one cross-check
};

struct ValidateReport {
  bool passed = false;
  std::string text;
};

// Seeded self-validation: oracle equivalence, structural zeros of the
// reduced state, closed-form cross-checks, zero-temperature spot checks.
ValidateReport run_validation(const ValidateOptions& opts);

}
