#include "tmkit/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "tmkit/error.hpp"
#include "tmkit/image_transform.hpp"
#include "tmkit/io.hpp"
#include "tmkit/measure_checks.hpp"
#include "tmkit/quasi_integral.hpp"
#include "tmkit/quasi_linear.hpp"
#include "tmkit/shapes.hpp"
#include "tmkit/topology.hpp"

namespace tmkit::scenarios {

using config::RunConfig;
using io::format_double;
using io::json;

std::vector<std::string> Section::unexpected() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const Violation& v : report.violations) {
    if (!seen.insert(v.axiom).second) continue;
    if (!expected_failures.count(v.axiom)) out.push_back(name + ": unexpected " + v.axiom + " violation");
  }
  for (const std::string& a : expected_failures)
    if (!report.count(a)) out.push_back(name + ": expected " + a + " failure not found");
  return out;
}

std::vector<std::string> ScenarioRun::unexpected() const {
  std::vector<std::string> out;
  for (const Section& s : sections) {
    const auto u = s.unexpected();
    out.insert(out.end(), u.begin(), u.end());
  }
  return out;
}

namespace {

std::string join(const std::set<std::string>& xs) {
  std::string s;
  for (const std::string& x : xs) s += (s.empty() ? "" : ";") + x;
  return s;
}

std::string safe_name(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

GridPtr make_grid(GridSpec spec, const RunConfig& cfg) {
  if (cfg.grid) spec = *cfg.grid;
  if (cfg.grid_size) {
    spec.nx = cfg.grid_size->first;
    spec.ny = cfg.grid_size->second;
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error("bad-config", e.what());
  }
  return Grid::make(spec);
}

GridSpec square_spec(int n) { return {0.0, 1.0, 0.0, 1.0, n, n, SpaceModel::Square}; }
GridSpec disk_spec(int n) { return {-1.0, 1.0, -1.0, 1.0, n, n, SpaceModel::Disk}; }
GridSpec plane_spec(double half, int n) { return {-half, half, -half, half, n, n, SpaceModel::Plane}; }

std::size_t trials_or(const RunConfig& cfg, std::size_t def) { return cfg.trials.value_or(def); }

/// Grid model a catalog transform type runs on by default.
GridSpec transform_grid(const std::string& type, int n) {
  if (type == "boundary") return disk_spec(n);
  if (type == "resolution_kill") return plane_spec(2.0, n);
  return square_spec(n);
}

const std::vector<std::string>& catalog_types() {
  static const std::vector<std::string> t = {"translation", "two_point", "boundary", "resolution_kill",
                                             "measure_threshold", "constant"};
  return t;
}

std::string type_name(const json& j) { return j.is_string() ? j.get<std::string>() : j.value("type", std::string()); }

struct NamedTransform {
  std::string label;
  ImageTransform q;
};

/// The selected transform, or every catalog type, each on its default grid.
std::vector<NamedTransform> selected_transforms(const RunConfig& cfg, int n) {
  std::vector<json> specs;
  if (cfg.transform) {
    specs.push_back(cfg.transform->is_string() ? config::transform_spec(cfg.transform->get<std::string>())
                                               : *cfg.transform);
  } else {
    for (const std::string& t : catalog_types()) specs.push_back(config::transform_spec(t));
  }
  std::vector<NamedTransform> out;
  for (const json& j : specs) {
    const std::string type = type_name(j);
    const GridPtr g = make_grid(transform_grid(type, n), cfg);
    out.push_back({type, config::transform_from_json(g, j)});
  }
  return out;
}

Section homomorphism_section(std::string name, const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t pairs,
                             std::set<std::string> expected) {
  Section s{std::move(name), {}, std::move(expected)};
  try {
    const HomomorphismResult r = homomorphism_check(theta, fs, pairs);
    s.report.checked = r.pairs_tried;
    if (!r.linear) {
      Violation v{"additivity", {}, {}, 0.0, 0.0, 0.0, "theta(f + g) != theta(f) + theta(g)"};
      if (r.witness) {
        const auto& [f, g] = *r.witness;
        v.functions = {f, g};
        v.lhs = sup_distance(theta(f + g), theta(f) + theta(g));
      }
      if (r.cell_witness) v.regions = {r.cell_witness->first, r.cell_witness->second};
      s.report.violations.push_back(std::move(v));
    }
    if (r.linear != !r.cell.has_value())
      s.report.violations.push_back({"criteria-disagree", {}, {}, 0.0, 0.0, 0.0, "function and cell routes differ"});
  } catch (const Error& e) {
    if (e.code() != "criteria-disagree") throw;
    s.report.violations.push_back({"criteria-disagree", {}, {}, 0.0, 0.0, 0.0, e.what()});
  }
  return s;
}

MeasureMap map_of(const GridPtr& g, std::string name, std::function<Measure(int)> at) {
  MeasureMap::Info info;
  info.name = std::move(name);
  info.domain = g;
  info.codomain = g;
  return MeasureMap(std::move(info), std::move(at));
}

// Two-point measure on [-2,4] x [-3,3]: nu(K1) = nu(K2) = pi, nu(K1 u K2) = 4 pi.
ScenarioRun nonsubadditive(const RunConfig& cfg) {
  ScenarioRun run{"nonsubadditive", {}, {}, {}};
  const GridPtr g = make_grid({-2.0, 4.0, -3.0, 3.0, 400, 400, SpaceModel::Plane}, cfg);
  const Point p1{0.0, 0.0}, p2{2.0, 0.0};
  const Measure nu = cfg.measure ? config::measure_from_json(g, *cfg.measure) : catalog::two_point(g, p1, p2);
  const Region k1 = shapes::disk(g, p1, 1.0), k2 = shapes::disk(g, p2, 1.0);
  const Region c = union_of(k1, k2);
  const double rel = cfg.tolerance.value_or(0.02);
  const double pi = std::numbers::pi;

  Section values{"values", {}, {}};
  std::ostringstream table;
  table << "region,value,expected,tolerance\n";
  for (const auto& [label, r, expected] :
       {std::tuple<const char*, const Region&, double>{"K1", k1, pi}, {"K2", k2, pi}, {"C", c, 4.0 * pi}}) {
    const double v = nu(r);
    values.report.expect_close(std::string("value-") + label, v, expected, rel * expected, {r});
    table << label << ',' << format_double(v) << ',' << format_double(expected) << ','
          << format_double(rel * expected) << '\n';
    run.regions.push_back({std::string("nonsubadditive_") + label + ".pgm", r});
  }
  values.report.expect(is_solid(k1) && is_solid(k2) && is_solid(c),
                       {"solid", {k1, k2, c}, {}, 0.0, 0.0, 0.0, "K1, K2 and C must be compact solid"});
  run.sections.push_back(std::move(values));

  Section sub{"subadditivity", {}, {"subadditivity"}};
  std::vector<std::pair<Region, Region>> pairs = {{k1, k2}};
  for (auto& p : anchored_compact_pairs(nu)) pairs.push_back(std::move(p));
  sub.report.checked = pairs.size();
  if (const auto w = subadditivity_witness(nu, pairs)) {
    const auto& [a, b] = *w;
    sub.report.violations.push_back(
        {"subadditivity", {a, b}, {}, nu(union_of(a, b)), nu(a) + nu(b), 0.0, "nu(A u B) > nu(A) + nu(B)"});
  }
  run.sections.push_back(std::move(sub));
  run.tables.push_back({"nonsubadditive.csv", table.str()});
  return run;
}

// Aarnes circle measure on the unit disk against an arc / arc / interior cover.
ScenarioRun aarnes_partition(const RunConfig& cfg) {
  ScenarioRun run{"aarnes-partition", {}, {}, {}};
  const GridPtr g = make_grid(disk_spec(256), cfg);
  const Measure mu = cfg.measure ? config::measure_from_json(g, *cfg.measure)
                                 : catalog::aarnes_circle(g, {0.3, 0.2}, 0.0);
  const Region b(g, g->boundary(), Kind::Compact);
  const Region a1 = shapes::boundary_arc(g, 0.0, 2.0);
  const Region a2 = shapes::boundary_arc(g, 2.0, 2.0 * std::numbers::pi);
  const Region a3 = complement(b);
  const Region x = Region::full(g, Kind::Compact);
  const double tol = cfg.tolerance.value_or(0.0);

  Section values{"values", {}, {}};
  values.report.expect(union_of(union_of(a1, a2), a3.with_kind(Kind::Compact)).cells() == x.cells(),
                       {"cover", {a1, a2, a3}, {}, 0.0, 0.0, 0.0, "A1, A2, A3 must cover X"});
  values.report.expect(!a1.empty() && !a2.empty() && !a1.cells().subset_of(a2.cells()),
                       {"proper-arc", {a1, a2}, {}, 0.0, 0.0, 0.0, "A1 must be a proper arc of B"});
  std::ostringstream table;
  table << "region,value,expected\n";
  double sum = 0.0;
  for (const auto& [label, r, expected] : {std::tuple<const char*, const Region&, double>{"X", x, 1.0},
                                           {"A1", a1, 0.0}, {"A2", a2, 0.0}, {"A3", a3, 0.0}}) {
    const double v = mu(r);
    if (std::string(label) != "X") {
      sum += v;
      values.report.expect(is_solid(r), {"solid", {r}, {}, 0.0, 0.0, 0.0, std::string(label) + " must be solid"});
      run.regions.push_back({std::string("aarnes-partition_") + label + ".pgm", r});
    }
    values.report.expect_close(std::string("value-") + label, v, expected, tol, {r});
    table << label << ',' << format_double(v) << ',' << format_double(expected) << '\n';
  }
  table << "A1+A2+A3," << format_double(sum) << ",0\n";
  run.sections.push_back(std::move(values));

  Section sub{"subadditivity", {}, {"subadditivity"}};
  sub.report.expect_leq("subadditivity", mu(x), sum, tol, {a1, a2, a3}, {}, "mu(X) > mu(A1) + mu(A2) + mu(A3)");
  run.sections.push_back(std::move(sub));
  run.tables.push_back({"aarnes-partition.csv", table.str()});
  return run;
}

// rho(f^2) = rho(f)^2 and friends for simple measures; Lebesgue fails "square".
ScenarioRun simplicity(const RunConfig& cfg) {
  ScenarioRun run{"simplicity", {}, {}, {}};
  const GridPtr g = make_grid(disk_spec(64), cfg);
  std::vector<std::pair<Measure, std::set<std::string>>> cases;
  if (cfg.measure) {
    const Measure m = config::measure_from_json(g, *cfg.measure);
    cases.push_back({m, m.is_simple() ? std::set<std::string>{} : std::set<std::string>{"square"}});
  } else {
    cases.push_back({catalog::aarnes_circle(g, {0.3, 0.2}, 0.0), {}});
    cases.push_back({catalog::point_mass(g, {0.1, -0.2}), {}});
    cases.push_back({catalog::lebesgue(g), {"square"}});
  }
  const std::size_t trials = trials_or(cfg, 100);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    FunctionSampler fs(g, cfg.seed + i);
    run.sections.push_back({cases[i].first.name(), check_simplicity(cases[i].first, fs, trials), cases[i].second});
  }
  return run;
}

// Axioms of every catalog transform and of compositions on a shared grid.
ScenarioRun it_axioms(const RunConfig& cfg) {
  ScenarioRun run{"it-axioms", {}, {}, {}};
  const int n = 32;
  const std::size_t trials = trials_or(cfg, 40);
  std::vector<NamedTransform> qs = selected_transforms(cfg, n);
  if (!cfg.transform) {
    // Compositions of catalog transforms sharing a space.
    const GridPtr sq = make_grid(square_spec(n), cfg);
    const GridPtr pl = make_grid(plane_spec(2.0, n), cfg);
    const ImageTransform tp = config::transform_from_json(sq, config::transform_spec("two_point"));
    const ImageTransform refl = config::transform_from_json(sq, config::transform_spec("reflection"));
    const ImageTransform thr = config::transform_from_json(sq, config::transform_spec("measure_threshold"));
    const ImageTransform kill = config::transform_from_json(pl, config::transform_spec("resolution_kill"));
    const ImageTransform shift = config::transform_from_json(pl, json{{"type", "translation"}, {"dx", 2}, {"dy", -1}});
    qs.push_back({"two_point-after-reflection", compose(tp, refl)});
    qs.push_back({"measure_threshold-after-two_point", compose(thr, tp)});
    qs.push_back({"translation-after-resolution_kill", compose(shift, kill)});
  }
  std::ostringstream table;
  table << "transform,checked,violations\n";
  for (std::size_t i = 0; i < qs.size(); ++i) {
    RegionSampler s(qs[i].q.domain(), cfg.seed + i);
    Section sec{qs[i].label, check_it_axioms(qs[i].q, s, trials), {}};
    table << qs[i].label << ',' << sec.report.checked << ',' << sec.report.violations.size() << '\n';
    run.sections.push_back(std::move(sec));
  }
  run.tables.push_back({"it-axioms.csv", table.str()});
  return run;
}

// Integral of f against q* nu versus the integral of theta(f) against nu.
ScenarioRun duality(const RunConfig& cfg) {
  ScenarioRun run{"duality", {}, {}, {}};
  const int n = 32;
  const std::size_t trials = trials_or(cfg, 50);
  const double tol = cfg.tolerance.value_or(1e-6);
  std::ostringstream table;
  table << "transform,measure,trials,max_abs_diff,tolerance\n";
  std::uint64_t seed = cfg.seed;
  for (const NamedTransform& nt : selected_transforms(cfg, n)) {
    const GridPtr y = nt.q.codomain();
    std::vector<Measure> nus;
    if (cfg.measure) {
      nus.push_back(config::measure_from_json(y, *cfg.measure));
    } else if (y->window_is_space()) {
      nus = {catalog::lebesgue(y), catalog::point_mass(y, shapes::window_center(*y))};
    } else {
      const Point c = shapes::window_center(*y);
      nus = {catalog::point_mass(y, c),
             combination({0.25, 0.75}, {catalog::point_mass(y, {c.x - 0.5, c.y}), catalog::point_mass(y, {c.x + 0.5, c.y})},
                         "two-point-masses")};
    }
    const QuasiLinearMap theta = theta_from_w(measure_map_from_it(nt.q));
    for (const Measure& nu : nus) {
      const Measure pulled = adjoint(nt.q, nu);
      FunctionSampler fs(nt.q.domain(), seed++);
      Section sec{nt.label + "-" + nu.name(), {}, {}};
      double worst = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const SampledFunction f = (nt.q.deficient_only() || t % 2 == 0) ? fs.nonnegative() : fs.signed_function();
        const double lhs = quasi_integral(pulled, f).value;
        const double rhs = quasi_integral(nu, theta(f)).value;
        worst = std::max(worst, std::abs(lhs - rhs));
        sec.report.expect_close("duality", lhs, rhs, tol, {}, {f});
      }
      table << nt.label << ',' << nu.name() << ',' << trials << ',' << format_double(worst) << ','
            << format_double(tol) << '\n';
      run.sections.push_back(std::move(sec));
    }
  }
  run.tables.push_back({"duality.csv", table.str()});
  return run;
}

// Resolution kill on the plane: shift invariance for every eps, yet the
// adjoints of Lebesgue disagree on a small square.
ScenarioRun haar(const RunConfig& cfg) {
  ScenarioRun run{"haar", {}, {}, {}};
  const GridPtr g = make_grid(plane_spec(1.2, 96), cfg);
  const Measure m = catalog::lebesgue(g);
  std::vector<double> eps = cfg.eps.empty() ? std::vector<double>{0.1, 0.2} : cfg.eps;
  if (std::find(eps.begin(), eps.end(), 0.0) == eps.end()) eps.insert(eps.begin(), 0.0);
  RegionSampler s(g, cfg.seed);
  run.sections.push_back({"demo", haar_nonuniqueness_demo(g, m, eps, s, trials_or(cfg, 20)), {}});

  std::vector<double> positive;
  for (double e : eps)
    if (e > 0.0) positive.push_back(e);
  std::sort(positive.begin(), positive.end());
  if (positive.empty()) return run;
  const Region k = haar_square(g, positive.front());
  std::ostringstream table;
  table << "eps,adjoint_of_K,K_diameter\n";
  const double dk = diameter(k);
  for (double e : eps) {
    const Region img = catalog::it_resolution_kill(g, e)(k);
    table << format_double(e) << ',' << format_double(m(img)) << ',' << format_double(dk) << '\n';
    if (e > 0.0) run.regions.push_back({"haar_K_image_eps" + format_double(e) + ".pgm", img});
  }
  run.regions.push_back({"haar_K.pgm", k});
  run.tables.push_back({"haar.csv", table.str()});
  return run;
}

// theta = H o Psi, plus the homomorphism dichotomy.
ScenarioRun factorization(const RunConfig& cfg) {
  ScenarioRun run{"factorization", {}, {}, {}};
  const std::size_t trials = trials_or(cfg, 10);
  const GridPtr sq = make_grid(square_spec(16), cfg);
  const GridPtr dk = make_grid(disk_spec(16), cfg);
  const QuasiLinearMap refl = theta_from_w(measure_map_from_it(config::transform_from_json(sq, config::transform_spec("reflection"))));
  const QuasiLinearMap tp = theta_from_w(measure_map_from_it(config::transform_from_json(sq, config::transform_spec("two_point"))));
  const QuasiLinearMap bd = theta_from_w(measure_map_from_it(config::transform_from_json(dk, config::transform_spec("boundary"))));
  std::uint64_t seed = cfg.seed;
  for (const auto& [label, theta, expected] :
       {std::tuple<std::string, QuasiLinearMap, std::set<std::string>>{"reflection", refl, {}},
        {"two_point", tp, {}},
        {"boundary", bd, {}},
        {"boundary-times-2", scaled(bd, 2.0), {"H-product"}}}) {
    FunctionSampler fs(theta.domain(), seed++);
    run.sections.push_back({"factorization-" + label, factorization_check(theta, fs, trials), expected});
  }
  {
    FunctionSampler fs(sq, seed++);
    run.sections.push_back(homomorphism_section("homomorphism-point-masses", refl, fs, 100, {}));
  }
  {
    const QuasiLinearMap aarnes = theta_from_w(map_of(dk, "aarnes", catalog::aarnes_circle_family(dk, 0.0)));
    FunctionSampler fs(dk, seed++);
    run.sections.push_back(homomorphism_section("homomorphism-aarnes", aarnes, fs, 100, {"additivity"}));
  }
  return run;
}

// Convex combinations of simple measures integrate as the combination.
ScenarioRun representable(const RunConfig& cfg) {
  ScenarioRun run{"representable", {}, {}, {}};
  const std::size_t trials = trials_or(cfg, 10);
  const GridPtr sq = make_grid(square_spec(24), cfg);
  const GridPtr dk = make_grid(disk_spec(24), cfg);
  struct Case {
    std::string label;
    std::vector<double> coeffs;
    std::vector<Measure> measures;
  };
  const std::vector<Case> cases = {
      {"odd-points", {1.0}, {catalog::odd_points(sq, {{0.2, 0.2}, {0.5, 0.8}, {0.8, 0.3}})}},
      {"point-masses", {0.5, 0.5}, {catalog::point_mass(sq, {0.25, 0.25}), catalog::point_mass(sq, {0.75, 0.5})}},
      {"aarnes-and-point-masses",
       {0.5, 0.3, 0.2},
       {catalog::aarnes_circle(dk, {0.3, 0.2}, 0.0), catalog::point_mass(dk, {0.0, 0.0}),
        catalog::point_mass(dk, {-0.4, 0.1})}},
  };
  std::uint64_t seed = cfg.seed;
  for (const Case& c : cases) {
    FunctionSampler fs(c.measures.front().grid(), seed);
    RegionSampler rs(c.measures.front().grid(), seed++);
    run.sections.push_back({c.label, representable_check(c.coeffs, c.measures, fs, rs, trials), {}});
  }
  return run;
}

using Runner = std::function<ScenarioRun(const RunConfig&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"nonsubadditive", nonsubadditive}, {"aarnes-partition", aarnes_partition},
      {"simplicity", simplicity},         {"it-axioms", it_axioms},
      {"duality", duality},               {"haar", haar},
      {"factorization", factorization},   {"representable", representable},
  };
  return r;
}

}  // namespace

std::string ScenarioRun::summary_csv() const {
  std::ostringstream os;
  os << "section,checked,violations,failing_axioms,expected_failures,status\n";
  for (const Section& s : sections) {
    std::set<std::string> failing;
    for (const Violation& v : s.report.violations) failing.insert(v.axiom);
    os << safe_name(s.name) << ',' << s.report.checked << ',' << s.report.violations.size() << ',' << join(failing)
       << ',' << join(s.expected_failures) << ',' << (s.unexpected().empty() ? "ok" : "unexpected") << '\n';
  }
  return os.str();
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"nonsubadditive", "aarnes-partition", "simplicity", "it-axioms",
                                             "duality",        "haar",             "factorization", "representable"};
  return n;
}

ScenarioRun run(const RunConfig& cfg) {
  const auto it = registry().find(cfg.scenario);
  if (it == registry().end()) throw Error("bad-config", "unknown scenario '" + cfg.scenario + "'");
  return it->second(cfg);
}

std::vector<std::filesystem::path> write(const ScenarioRun& run, const std::filesystem::path& out) {
  std::vector<std::filesystem::path> files;
  const auto summary = out / (run.scenario + "_summary.csv");
  io::write_text(summary, run.summary_csv());
  files.push_back(summary);
  for (const auto& [name, text] : run.tables) {
    io::write_text(out / name, text);
    files.push_back(out / name);
  }
  for (const Section& s : run.sections) {
    const auto p = out / (run.scenario + "_" + safe_name(s.name) + ".csv");
    io::write_report_csv(s.report, p);
    files.push_back(p);
  }
  for (const auto& [name, r] : run.regions) {
    io::write_region(r, out / name);
    files.push_back(out / name);
  }
  return files;
}

}  // namespace tmkit::scenarios
