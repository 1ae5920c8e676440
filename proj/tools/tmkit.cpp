// tmkit: scenario runner and small region / integral utilities.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tmkit/config.hpp"
#include "tmkit/error.hpp"
#include "tmkit/io.hpp"
#include "tmkit/quasi_integral.hpp"
#include "tmkit/scenarios.hpp"
#include "tmkit/topology.hpp"

namespace {

using namespace tmkit;
using io::json;
namespace fs = std::filesystem;

constexpr int kExitUnexpected = 1;
constexpr int kExitError = 2;

// A selection given on the command line: a bare type name or a JSON object.
json selection(const std::string& s) {
  if (!s.empty() && s.front() == '{') {
    try {
      return json::parse(s);
    } catch (const json::exception& e) {
      throw Error("bad-config", std::string("selection: ") + e.what());
    }
  }
  return json{{"type", s}};
}

struct RunArgs {
  std::string scenario, config, out, grid, eps, transform, measure;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<std::size_t> trials;
};

int cmd_run(const RunArgs& a) {
  config::RunConfig cfg = a.config.empty() ? config::RunConfig{} : config::load_run_config(a.config);
  if (!a.scenario.empty()) cfg.scenario = a.scenario;
  if (cfg.scenario.empty()) throw Error("bad-config", "no scenario given");
  if (a.seed) cfg.seed = *a.seed;
  if (!a.out.empty()) cfg.out = a.out;
  if (!a.grid.empty()) cfg.grid_size = config::parse_grid_size(a.grid);
  if (!a.eps.empty()) cfg.eps = config::parse_double_list(a.eps);
  if (!a.transform.empty()) cfg.transform = selection(a.transform);
  if (!a.measure.empty()) cfg.measure = selection(a.measure);
  if (a.tolerance) cfg.tolerance = *a.tolerance;
  if (a.trials) cfg.trials = *a.trials;

  const scenarios::ScenarioRun run = scenarios::run(cfg);
  scenarios::write(run, cfg.out);
  for (const auto& [name, text] : run.tables) std::cout << "# " << name << '\n' << text;
  std::cout << "# " << run.scenario << "_summary.csv\n" << run.summary_csv();
  const auto bad = run.unexpected();
  for (const std::string& b : bad) std::cerr << b << '\n';
  std::cout << run.scenario << ": " << (bad.empty() ? "ok" : "UNEXPECTED") << '\n';
  return bad.empty() ? 0 : kExitUnexpected;
}

int cmd_integrate(const std::string& config_path, const std::string& measure, const std::string& function,
                  bool header) {
  json cfg = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error("io-error", "cannot open " + config_path);
    try {
      cfg = json::parse(in);
    } catch (const json::exception& e) {
      throw Error("bad-config", config_path + ": " + e.what());
    }
  }
  if (!measure.empty()) cfg["measure"] = selection(measure);
  if (!cfg.contains("measure")) throw Error("bad-config", "no measure given");

  const fs::path fpath(function);
  SampledFunction f;
  if (fpath.extension() == ".csv") {
    if (!cfg.contains("grid")) throw Error("bad-config", "a CSV function needs a grid in the config");
    f = io::read_function_csv(fpath, Grid::make(io::grid_from_json(cfg.at("grid"))));
  } else {
    f = io::read_function_binary(fpath);
    if (cfg.contains("grid") && !(io::grid_from_json(cfg.at("grid")) == f.grid()->spec()))
      throw Error("grid-mismatch", "the function file and the config use different grids");
  }
  const Measure m = config::measure_from_json(f.grid(), cfg.at("measure"));
  const io::IntegralRow row{m.name(), fpath.filename().string(), quasi_integral(m, f)};
  if (header) std::cout << io::integral_csv_header() << '\n';
  std::cout << io::integral_csv_row(row) << '\n';
  return 0;
}

int cmd_region(const std::string& sub, const std::string& file) {
  const Region r = io::read_region(file);
  if (sub == "components") {
    std::cout << "components: " << component_count(r) << '\n';
  } else if (sub == "solid") {
    std::cout << "solid: " << (is_solid(r) ? "true" : "false") << ", components: " << component_count(r) << '\n';
  } else {
    std::cout << "diameter: " << io::format_double(diameter(r)) << '\n';
  }
  return 0;
}

int cmd_apply(const std::string& transform, const std::string& in, const std::string& out) {
  const Region a = io::read_region(in);
  const ImageTransform q = config::transform_from_json(a.grid(), selection(transform));
  const Region img = q(a);
  io::write_region(img, out);
  std::cout << q.name() << ": " << img.count() << " cells\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological measures, quasi-integrals and image transformations on grids"};
  app.require_subcommand(1);

  RunArgs ra;
  CLI::App* run = app.add_subcommand("run", "Run a scenario and write its CSV reports and PGM dumps");
  run->add_option("--scenario", ra.scenario, "Scenario name (see `tmkit scenarios`)");
  run->add_option("--config", ra.config, "Run config JSON")->check(CLI::ExistingFile);
  run->add_option("--seed", ra.seed, "Sampler seed");
  run->add_option("--out", ra.out, "Output directory (default tmkit-out)");
  run->add_option("--grid", ra.grid, "Grid size NxM");
  run->add_option("--eps", ra.eps, "Comma-separated eps list (haar)");
  run->add_option("--tolerance", ra.tolerance, "Main tolerance of the scenario");
  run->add_option("--transform", ra.transform, "Transform type or JSON selection");
  run->add_option("--measure", ra.measure, "Measure type or JSON selection");
  run->add_option("--trials", ra.trials, "Sampled configurations per check");

  std::string icfg, imeasure, ifunc;
  bool no_header = false;
  CLI::App* integ = app.add_subcommand("integrate", "Quasi-integral of a function file against a measure");
  integ->add_option("--config", icfg, "JSON with \"measure\" and optionally \"grid\"")->check(CLI::ExistingFile);
  integ->add_option("--measure", imeasure, "Measure type or JSON selection");
  integ->add_option("function", ifunc, "Function file (.csv with a config grid, or binary with sidecar)")
      ->required()
      ->check(CLI::ExistingFile);
  integ->add_flag("--no-header", no_header, "Print the row only");

  std::string rsub, rfile;
  CLI::App* region = app.add_subcommand("region", "Inspect a PGM region");
  region->add_option("subcommand", rsub, "components | solid | diameter")
      ->required()
      ->check(CLI::IsMember({"components", "solid", "diameter"}));
  region->add_option("file", rfile, "Region PGM with JSON sidecar")->required();

  std::string atrans, ain, aout;
  CLI::App* apply = app.add_subcommand("apply", "Apply an image transformation to a PGM region");
  apply->add_option("--transform", atrans, "Transform type or JSON selection")->required();
  apply->add_option("input", ain, "Input region PGM")->required();
  apply->add_option("output", aout, "Output region PGM")->required();

  CLI::App* list = app.add_subcommand("scenarios", "List scenario names");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(ra);
    if (*integ) return cmd_integrate(icfg, imeasure, ifunc, !no_header);
    if (*region) return cmd_region(rsub, rfile);
    if (*apply) return cmd_apply(atrans, ain, aout);
    if (*list) {
      for (const std::string& n : scenarios::names()) std::cout << n << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
