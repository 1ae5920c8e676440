#include "tmkit/config.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <set>

#include "tmkit/error.hpp"
#include "tmkit/shapes.hpp"

namespace tmkit::config {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error("bad-config", msg); }

Point point_of(const json& j, const char* key) {
  if (!j.contains(key)) bad(std::string("missing point '") + key + "'");
  const json& p = j.at(key);
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    bad(std::string("'") + key + "' must be [x, y]");
  return {p[0].get<double>(), p[1].get<double>()};
}

double number_of(const json& j, const char* key, std::optional<double> def = std::nullopt) {
  if (!j.contains(key)) {
    if (def) return *def;
    bad(std::string("missing number '") + key + "'");
  }
  if (!j.at(key).is_number()) bad(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

int int_of(const json& j, const char* key, int def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer()) bad(std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::string type_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) bad("selection needs a string 'type'");
  return j.at("type").get<std::string>();
}

void only_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) return;
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (k != "type" && !allowed.count(k)) bad("unknown key '" + k + "' for type " + type_of(j));
}

}  // namespace

Measure measure_from_json(const GridPtr& g, const json& j) {
  const std::string type = type_of(j);
  const json params = j.is_object() ? j : json::object();
  if (type == "two_point") {
    only_keys(params, {"p1", "p2"});
    return catalog::two_point(g, point_of(params, "p1"), point_of(params, "p2"));
  }
  if (type == "odd_points") {
    only_keys(params, {"points"});
    if (!params.contains("points") || !params.at("points").is_array()) bad("odd_points needs 'points'");
    std::vector<Point> pts;
    for (const json& p : params.at("points")) {
      if (!p.is_array() || p.size() != 2) bad("points must be [x, y] pairs");
      pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return catalog::odd_points(g, pts);
  }
  if (type == "aarnes_circle") {
    only_keys(params, {"p", "eps"});
    return catalog::aarnes_circle(g, point_of(params, "p"), number_of(params, "eps", 0.0));
  }
  if (type == "blob_dtm") {
    only_keys(params, {"center", "radius"});
    const Region d = shapes::disk(g, point_of(params, "center"), number_of(params, "radius"));
    if (d.empty()) bad("blob_dtm disk covers no cell");
    return catalog::blob_dtm(g, d);
  }
  if (type == "lebesgue") {
    only_keys(params, {});
    return catalog::lebesgue(g);
  }
  if (type == "normalized_lebesgue") {
    only_keys(params, {});
    return catalog::normalized_lebesgue(g);
  }
  if (type == "point_mass") {
    only_keys(params, {"x"});
    return catalog::point_mass(g, point_of(params, "x"));
  }
  if (type == "combination") {
    only_keys(params, {"coeffs", "measures", "name"});
    if (!params.contains("coeffs") || !params.contains("measures")) bad("combination needs 'coeffs' and 'measures'");
    const json& cs = params.at("coeffs");
    const json& ms = params.at("measures");
    if (!cs.is_array() || !ms.is_array() || cs.size() != ms.size() || cs.empty())
      bad("combination needs equal-length nonempty 'coeffs' and 'measures'");
    std::vector<double> coeffs;
    std::vector<Measure> measures;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (!cs[i].is_number()) bad("coeffs must be numbers");
      coeffs.push_back(cs[i].get<double>());
      measures.push_back(measure_from_json(g, ms[i]));
    }
    return combination(coeffs, measures, params.value("name", std::string("combination")));
  }
  bad("unknown measure type '" + type + "'");
}

ImageTransform transform_from_json(const GridPtr& g, const json& j) {
  const std::string type = type_of(j);
  const json params = j.is_object() ? j : json::object();
  if (type == "identity") {
    only_keys(params, {});
    return catalog::it_identity(g);
  }
  if (type == "translation") {
    only_keys(params, {"dx", "dy"});
    return catalog::it_preimage(g, g, catalog::translation_map(g, g, int_of(params, "dx", 1), int_of(params, "dy", 0)),
                                "translation");
  }
  if (type == "reflection") {
    only_keys(params, {});
    return catalog::it_preimage(g, g, catalog::reflection_map(g), "reflection");
  }
  if (type == "two_point") {
    only_keys(params, {"x", "z"});
    const Point c = shapes::window_center(*g);
    const double r = 0.25 * (g->spec().x_max - g->spec().x_min);
    const Point x = params.contains("x") ? point_of(params, "x") : Point{c.x - r, c.y};
    const Point z = params.contains("z") ? point_of(params, "z") : Point{c.x + r, c.y};
    return catalog::it_two_point(g, x, z);
  }
  if (type == "boundary") {
    only_keys(params, {"center", "radius"});
    if (params.contains("center") || params.contains("radius"))
      return catalog::it_boundary(g, shapes::circle_ring(g, point_of(params, "center"), number_of(params, "radius")));
    return catalog::it_boundary(g, Region(g, g->boundary(), Kind::Compact));
  }
  if (type == "resolution_kill") {
    only_keys(params, {"eps", "route"});
    const double eps = number_of(params, "eps", 4.0 * g->spec().pitch());
    const std::string route = params.value("route", std::string("scan"));
    if (route == "scan") return catalog::it_resolution_kill(g, eps);
    if (route == "morph") return catalog::it_resolution_kill_morph(g, eps);
    bad("resolution_kill route must be scan or morph");
  }
  if (type == "measure_threshold") {
    only_keys(params, {"eps", "measure"});
    const Measure m = params.contains("measure") ? measure_from_json(g, params.at("measure"))
                                                 : catalog::normalized_lebesgue(g);
    // Default: just above a quarter, half a cell away from the values m takes.
    const double n = static_cast<double>(g->domain().count());
    const double eps = number_of(params, "eps", (std::floor(0.25 * n) + 0.5) / n);
    return catalog::it_measure_threshold(g, eps, m);
  }
  if (type == "constant") {
    only_keys(params, {"measure"});
    const Measure mu0 = params.contains("measure") ? measure_from_json(g, params.at("measure"))
                                                   : catalog::point_mass(g, shapes::window_center(*g));
    return catalog::it_constant(g, g, mu0);
  }
  bad("unknown transform type '" + type + "'");
}

json transform_spec(const std::string& name) { return json{{"type", name}}; }

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  RunConfig c;
  for (const auto& [k, v] : j.items()) {
    try {
      if (k == "scenario") {
        c.scenario = v.get<std::string>();
      } else if (k == "grid") {
        c.grid = io::grid_from_json(v);
      } else if (k == "measure") {
        c.measure = v;
      } else if (k == "transform") {
        c.transform = v;
      } else if (k == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (k == "out") {
        c.out = v.get<std::string>();
      } else if (k == "tolerance") {
        c.tolerance = v.get<double>();
      } else if (k == "eps") {
        c.eps = v.get<std::vector<double>>();
      } else if (k == "trials") {
        c.trials = v.get<std::size_t>();
      } else {
        bad("unknown config key '" + k + "'");
      }
    } catch (const json::exception& e) {
      bad("key '" + k + "': " + e.what());
    }
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
  return run_config_from_json(j);
}

std::pair<int, int> parse_grid_size(const std::string& s) {
  const auto x = s.find_first_of("xX");
  if (x == std::string::npos) bad("grid size must look like NxM");
  int n = 0;
  int m = 0;
  const char* b = s.data();
  const auto r1 = std::from_chars(b, b + x, n);
  const auto r2 = std::from_chars(b + x + 1, b + s.size(), m);
  if (r1.ec != std::errc() || r1.ptr != b + x || r2.ec != std::errc() || r2.ptr != b + s.size() || n <= 0 || m <= 0)
    bad("grid size must look like NxM, got '" + s + "'");
  return {n, m};
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = std::min(s.find(',', start), s.size());
    double v = 0.0;
    const auto r = std::from_chars(s.data() + start, s.data() + end, v);
    if (r.ec != std::errc() || r.ptr != s.data() + end) bad("bad number list '" + s + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

}  // namespace tmkit::config
