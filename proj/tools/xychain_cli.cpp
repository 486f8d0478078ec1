#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xychain/errors.hpp"
#include "xychain/sweep.hpp"
#include "xychain/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

xychain::PairSelector parse_pair(const std::string& text) {
  if (text == "all") return {true, 0, 0};
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--pair", "expected 'i,j' or 'all'");
  try {
    const int i = std::stoi(text.substr(0, comma));
    const int j = std::stoi(text.substr(comma + 1));
    return {false, i, j};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--pair", "expected 'i,j' or 'all'");
  }
}

xychain::SweepRange parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw CLI::ValidationError("--range", "expected start:stop:count[:log|:linear]");
  xychain::SweepRange r;
  try {
    r.start = std::stod(parts[0]);
    r.stop = std::stod(parts[1]);
    r.count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--range", "expected start:stop:count[:log|:linear]");
  }
  r.scale = xychain::GridScale::linear;
  if (parts.size() == 4) {
    if (parts[3] == "log")
      r.scale = xychain::GridScale::log;
    else if (parts[3] != "linear")
      throw CLI::ValidationError("--range", "scale must be 'log' or 'linear'");
  }
  return r;
}

void emit(const std::string& out_path, const std::vector<xychain::SweepRecord>& records,
          const std::vector<std::string>& metadata) {
  if (out_path.empty()) {
    xychain::write_csv(std::cout, records, metadata);
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot open output file " + out_path);
  xychain::write_csv(os, records, metadata);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal pairwise entanglement in open alternating XY spin-1/2 chains"};
  app.set_version_flag("--version", std::string("xychain ") + xychain::kVersion);
  app.require_subcommand(1);

  const std::map<std::string, xychain::Engine> engine_names{
      {"auto", xychain::Engine::automatic},
      {"fastpath", xychain::Engine::fastpath},
      {"oracle", xychain::Engine::oracle}};

  xychain::ChainSpec spec;
  std::string pair_text = "1,2";
  std::string range_text;
  std::string vary_text;
  std::string out_path;
  xychain::Engine engine = xychain::Engine::automatic;

  auto add_spec_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", spec.n_spins, "number of spins");
    cmd->add_option("--delta", spec.delta, "coupling ratio D2/D1");
    cmd->add_option("--tau", spec.tau, "inverse temperature beta*D1/2");
    cmd->add_option("--omega1", spec.omega_odd, "Larmor frequency on odd sites");
    cmd->add_option("--omega2", spec.omega_even, "Larmor frequency on even sites");
  };

  auto* conc = app.add_subcommand("concurrence", "one pair, one temperature");
  add_spec_flags(conc);
  conc->add_option("--pair", pair_text, "pair 'i,j'");
  conc->add_option("--engine", engine, "auto|fastpath|oracle")
      ->transform(CLI::CheckedTransformer(engine_names));
  conc->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  add_spec_flags(sweep);
  sweep->add_option("--vary", vary_text, "temperature|site|delta|length")->required();
  sweep->add_option("--range", range_text, "start:stop:count[:log|:linear]")->required();
  sweep->add_option("--pair", pair_text, "pair 'i,j' or 'all'");
  sweep->add_option("--engine", engine, "auto|fastpath|oracle")
      ->transform(CLI::CheckedTransformer(engine_names));
  sweep->add_option("--out", out_path, "output CSV path (default stdout)");

  int figure_id = 0;
  std::string fig_dir = ".";
  auto* fig = app.add_subcommand("figure", "preset sweeps for the survey figures");
  fig->add_option("id", figure_id, "figure id 1..6")->required();
  fig->add_option("--out", fig_dir, "output directory (default .)");

  xychain::ValidateOptions vopts;
  std::string size_text = "small";
  auto* val = app.add_subcommand("validate", "run the self-validation suites");
  val->add_option("--seed", vopts.seed, "random seed");
  val->add_option("--size", size_text, "small|full")
      ->check(CLI::IsMember({"small", "full"}));
  val->add_flag("--inject-alpha33-error", vopts.inject_alpha33_error)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(conc)) {
      const auto sel = parse_pair(pair_text);
      if (sel.all_bonds)
        throw std::invalid_argument("concurrence: --pair must name one pair");
      const auto rec = xychain::evaluate_concurrence(spec, sel.i, sel.j, engine);
      emit(out_path, {rec}, {});
      return kExitOk;
    }
    if (app.got_subcommand(sweep)) {
      xychain::SweepRequest req;
      req.base = spec;
      req.engine = engine;
      req.pair = parse_pair(pair_text);
      req.range = parse_range(range_text);
      if (vary_text == "temperature")
        req.mode = xychain::SweepMode::temperature;
      else if (vary_text == "site") {
        req.mode = xychain::SweepMode::site;
        req.pair = {true, 0, 0};
      } else if (vary_text == "delta")
        req.mode = xychain::SweepMode::delta;
      else if (vary_text == "length")
        req.mode = xychain::SweepMode::length;
      else
        throw std::invalid_argument("sweep: --vary must be temperature|site|delta|length");
      std::ostringstream meta;
      meta << "sweep: vary=" << vary_text << " range=" << range_text;
      emit(out_path, xychain::run_sweep(req), {meta.str()});
      return kExitOk;
    }
    if (app.got_subcommand(fig)) {
      for (const auto& path : xychain::write_figure(figure_id, fig_dir))
        std::cout << "wrote " << path << "\n";
      return kExitOk;
    }
    if (app.got_subcommand(val)) {
      vopts.full = (size_text == "full");
      const auto report = xychain::run_validation(vopts);
      std::cout << report.text;
      return report.passed ? kExitOk : kExitValidation;
    }
  } catch (const xychain::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
