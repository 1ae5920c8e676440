#include "tmkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <unordered_map>

#include "tmkit/error.hpp"
#include "tmkit/shapes.hpp"
#include "tmkit/solid_expansion.hpp"
#include "tmkit/topology.hpp"

namespace tmkit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMemoCapacity = 2048;
}  // namespace

double AdditiveWeights::weight(int cell) const {
  double w = uniform;
  for (const auto& [c, v] : sparse)
    if (c == cell) w += v;
  return w;
}

struct Measure::Core {
  GridPtr grid;
  Info info;
  Evaluator eval;
  std::shared_ptr<const AdditiveWeights> weights;
  mutable std::mutex mu;
  mutable std::unordered_map<Region, double, RegionHash> memo;
};

Measure::Measure(GridPtr grid, Info info, Evaluator eval) : core_(std::make_shared<Core>()) {
  core_->grid = std::move(grid);
  core_->info = std::move(info);
  core_->eval = std::move(eval);
}

Measure Measure::additive(GridPtr grid, Info info, AdditiveWeights weights) {
  auto w = std::make_shared<const AdditiveWeights>(std::move(weights));
  info.memoize = false;
  Measure m(std::move(grid), std::move(info), [w](const Region& r) {
    if (w->infinite_on_frame && r.touches_frame()) return kInf;
    double v = w->uniform == 0.0 ? 0.0 : w->uniform * static_cast<double>(r.count());
    for (const auto& [c, x] : w->sparse)
      if (r.contains(c)) v += x;
    return v;
  });
  m.core_->weights = std::move(w);
  return m;
}

double Measure::uncached(const Region& r) const {
  require_same_grid(*core_->grid, *r.grid(), core_->info.name.c_str());
  return core_->eval(r);
}

double Measure::operator()(const Region& r) const {
  require_same_grid(*core_->grid, *r.grid(), core_->info.name.c_str());
  if (!core_->info.memoize) return core_->eval(r);
  {
    std::lock_guard<std::mutex> lock(core_->mu);
    auto it = core_->memo.find(r);
    if (it != core_->memo.end()) return it->second;
  }
  const double v = core_->eval(r);
  std::lock_guard<std::mutex> lock(core_->mu);
  if (core_->memo.size() >= kMemoCapacity) core_->memo.clear();
  core_->memo.emplace(r, v);
  return v;
}

const GridPtr& Measure::grid() const { return core_->grid; }
const std::string& Measure::name() const { return core_->info.name; }
const MeasureFlags& Measure::flags() const { return core_->info.flags; }
double Measure::total_mass() const { return core_->info.total_mass; }
const std::vector<Point>& Measure::anchors() const { return core_->info.anchors; }
std::vector<CellSet> Measure::anchor_sets() const {
  return core_->info.anchor_sets ? core_->info.anchor_sets() : std::vector<CellSet>{};
}
const AdditiveWeights* Measure::additive_weights() const { return core_->weights.get(); }

Measure Measure::relabeled(std::string name, MeasureFlags flags) const {
  Info info = core_->info;
  info.name = std::move(name);
  info.flags = flags;
  Measure m(core_->grid, std::move(info), core_->eval);
  m.core_->weights = core_->weights;
  return m;
}

Measure extend_to_measure(const SolidSetRule& rule, MeasureFlags flags, std::vector<Point> anchors,
                          std::function<std::vector<CellSet>()> anchor_sets) {
  Measure::Info info;
  info.name = rule.name;
  info.flags = flags;
  info.total_mass = rule.total_mass;
  info.memoize = true;
  info.anchors = std::move(anchors);
  info.anchor_sets = std::move(anchor_sets);
  auto eval = rule.evaluator;
  const double total = rule.total_mass;
  return Measure(rule.grid, std::move(info), [eval, total](const Region& r) {
    if (r.empty()) return 0.0;
    const auto e = solid_expansion(r);
    double v = 0.0;
    for (const SolidTerm& t : e->terms) v += t.coef * eval(t.piece);
    if (e->mass_coef != 0) {
      if (!std::isfinite(total))
        throw Error("non-finite", "evaluation needs the total mass, which is infinite");
      v += e->mass_coef * total;
    }
    return v;
  });
}

Measure combination(const std::vector<double>& coeffs, const std::vector<Measure>& measures,
                    std::string name) {
  if (coeffs.size() != measures.size() || measures.empty())
    throw Error("invalid-params", "combination needs one coefficient per measure");
  const GridPtr& g = measures.front().grid();
  bool all_additive = true, topological = true, deficient = false;
  double total = 0.0;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (!(coeffs[i] >= 0.0) || !std::isfinite(coeffs[i]))
      throw Error("invalid-params", "combination coefficients must be finite and nonnegative");
    require_same_grid(*g, *measures[i].grid(), "combination");
    if (coeffs[i] == 0.0) continue;
    ++nonzero;
    all_additive = all_additive && measures[i].additive_weights() != nullptr;
    topological = topological && measures[i].is_topological();
    deficient = deficient || measures[i].is_deficient_only();
    total += coeffs[i] * measures[i].total_mass();
  }
  Measure::Info info;
  info.name = std::move(name);
  info.total_mass = total;
  info.flags.is_topological = topological;
  info.flags.is_deficient_only = deficient;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    info.flags.is_simple = nonzero == 1 && coeffs[i] == 1.0 && measures[i].is_simple();
    for (const Point& p : measures[i].anchors()) info.anchors.push_back(p);
  }
  {
    std::vector<Measure> ms = measures;
    info.anchor_sets = [ms] {
      std::vector<CellSet> out;
      for (const Measure& m : ms)
        for (CellSet& s : m.anchor_sets()) out.push_back(std::move(s));
      return out;
    };
  }
  if (all_additive) {
    AdditiveWeights w;
    std::map<int, double> sparse;
    for (std::size_t i = 0; i < measures.size(); ++i) {
      if (coeffs[i] == 0.0) continue;
      const AdditiveWeights* mw = measures[i].additive_weights();
      w.uniform += coeffs[i] * mw->uniform;
      w.infinite_on_frame = w.infinite_on_frame || mw->infinite_on_frame;
      for (const auto& [c, x] : mw->sparse) sparse[c] += coeffs[i] * x;
    }
    w.sparse.assign(sparse.begin(), sparse.end());
    return Measure::additive(g, std::move(info), std::move(w));
  }
  std::vector<double> cs = coeffs;
  std::vector<Measure> ms = measures;
  return Measure(g, std::move(info), [cs, ms](const Region& r) {
    double v = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if (cs[i] != 0.0) v += cs[i] * ms[i](r);
    return v;
  });
}

namespace catalog {

namespace {

int require_cell(const GridPtr& g, Point p, const char* what) {
  const int c = g->cell_at(p);
  if (c < 0) throw Error("invalid-params", std::string(what) + " lies outside the grid domain");
  return c;
}

double area_or_inf(const Region& a) {
  if (!a.grid()->window_is_space() && a.touches_frame()) return kInf;
  return static_cast<double>(a.count()) * a.grid()->spec().cell_area();
}

struct Ring {
  std::vector<int> cells;
  bool clipped = false;
};

Ring make_ring(const Grid& g, int p_cell, double eps, const std::vector<Offset>* tmpl) {
  Ring ring;
  if (eps == 0.0) {
    ring.cells = g.boundary().indices();
    return ring;
  }
  const int px = g.ix(p_cell), py = g.iy(p_cell);
  for (const auto& [dx, dy] : *tmpl) {
    const int x = px + dx, y = py + dy;
    if (x < 0 || y < 0 || x >= g.nx() || y >= g.ny() ||
        !g.domain().test(static_cast<std::size_t>(g.index(x, y)))) {
      ring.clipped = true;
      continue;
    }
    ring.cells.push_back(g.index(x, y));
  }
  return ring;
}

SolidSetRule aarnes_rule_from_ring(const GridPtr& g, int p_cell, std::shared_ptr<const Ring> ring) {
  SolidSetRule rule;
  rule.name = "aarnes_circle";
  rule.grid = g;
  rule.total_mass = 1.0;
  rule.evaluator = [p_cell, ring](const Region& a) {
    bool all = !ring->clipped, any = false;
    for (int c : ring->cells) {
      if (a.contains(c))
        any = true;
      else
        all = false;
      if (any && !all) break;
    }
    if (all && !ring->cells.empty()) return 1.0;
    return a.contains(p_cell) && any ? 1.0 : 0.0;
  };
  return rule;
}

void check_aarnes_params(const Grid& g, double eps) {
  if (eps < 0.0 || !std::isfinite(eps)) throw Error("invalid-params", "eps must be >= 0");
  if (eps == 0.0 && g.model() != SpaceModel::Disk)
    throw Error("invalid-params", "the eps = 0 circle measure needs a disk grid");
}

Measure aarnes_from_ring(const GridPtr& g, int p_cell, std::shared_ptr<const Ring> ring) {
  const Point p = g->center(p_cell);
  std::function<std::vector<CellSet>()> sets = [g, ring] {
    CellSet s(g->cell_count());
    for (int c : ring->cells) s.set(static_cast<std::size_t>(c));
    return std::vector<CellSet>{s};
  };
  return extend_to_measure(aarnes_rule_from_ring(g, p_cell, std::move(ring)), {true, true, false},
                           {p}, std::move(sets));
}

}  // namespace

SolidSetRule two_point_rule(const GridPtr& g, Point p1, Point p2) {
  if (g->window_is_space()) throw Error("invalid-params", "two-point measure needs a plane grid");
  const int c1 = require_cell(g, p1, "p1"), c2 = require_cell(g, p2, "p2");
  if (c1 == c2) throw Error("invalid-params", "p1 and p2 fall in the same cell");
  SolidSetRule rule;
  rule.name = "two_point";
  rule.grid = g;
  rule.total_mass = kInf;
  rule.evaluator = [c1, c2](const Region& a) {
    const int k = (a.contains(c1) ? 1 : 0) + (a.contains(c2) ? 1 : 0);
    if (k == 0) return 0.0;
    return k * area_or_inf(a);
  };
  return rule;
}

Measure two_point(const GridPtr& g, Point p1, Point p2) {
  return extend_to_measure(two_point_rule(g, p1, p2), {true, false, false}, {p1, p2});
}

namespace {

SolidSetRule odd_cells_rule(const GridPtr& g, std::vector<int> cells) {
  if (cells.size() < 3 || cells.size() % 2 == 0)
    throw Error("invalid-params", "odd-point measure needs 2n+1 points with n >= 1");
  for (int c : cells)
    if (c < 0 || !g->domain().test(static_cast<std::size_t>(c)))
      throw Error("invalid-params", "odd-point cell outside the grid domain");
  const int n = static_cast<int>(cells.size() / 2);
  SolidSetRule rule;
  rule.name = "odd_points";
  rule.grid = g;
  rule.total_mass = 1.0;
  rule.evaluator = [cells, n](const Region& a) {
    int k = 0;
    for (int c : cells) k += a.contains(c) ? 1 : 0;
    return static_cast<double>(k / 2) / n;
  };
  return rule;
}

}  // namespace

SolidSetRule odd_points_rule(const GridPtr& g, const std::vector<Point>& points) {
  std::vector<int> cells;
  for (const Point& p : points) cells.push_back(require_cell(g, p, "point"));
  std::vector<int> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error("invalid-params", "odd-point measure needs distinct cells");
  return odd_cells_rule(g, std::move(cells));
}

Measure odd_point_cells(const GridPtr& g, const std::vector<int>& cells) {
  std::vector<Point> pts;
  for (int c : cells) pts.push_back(g->center(c));
  return extend_to_measure(odd_cells_rule(g, cells), {true, cells.size() == 3, false}, std::move(pts));
}

Measure odd_points(const GridPtr& g, const std::vector<Point>& points) {
  SolidSetRule rule = odd_points_rule(g, points);
  return extend_to_measure(rule, {true, points.size() == 3, false}, points);
}

SolidSetRule aarnes_circle_rule(const GridPtr& g, Point p, double eps) {
  check_aarnes_params(*g, eps);
  const int pc = require_cell(g, p, "p");
  std::vector<Offset> tmpl;
  if (eps > 0.0) tmpl = shapes::ring_template(*g, eps);
  return aarnes_rule_from_ring(g, pc, std::make_shared<const Ring>(make_ring(*g, pc, eps, &tmpl)));
}

Measure aarnes_circle(const GridPtr& g, Point p, double eps) {
  check_aarnes_params(*g, eps);
  return aarnes_circle_at(g, require_cell(g, p, "p"), eps);
}

Measure aarnes_circle_at(const GridPtr& g, int p_cell, double eps) {
  check_aarnes_params(*g, eps);
  if (p_cell < 0 || !g->domain().test(static_cast<std::size_t>(p_cell)))
    throw Error("invalid-params", "p lies outside the grid domain");
  std::vector<Offset> tmpl;
  if (eps > 0.0) tmpl = shapes::ring_template(*g, eps);
  return aarnes_from_ring(g, p_cell, std::make_shared<const Ring>(make_ring(*g, p_cell, eps, &tmpl)));
}

std::function<Measure(int)> aarnes_circle_family(const GridPtr& g, double eps) {
  check_aarnes_params(*g, eps);
  if (eps == 0.0) {
    auto ring = std::make_shared<const Ring>(make_ring(*g, 0, 0.0, nullptr));
    return [g, ring](int p_cell) { return aarnes_from_ring(g, p_cell, ring); };
  }
  auto tmpl = std::make_shared<const std::vector<Offset>>(shapes::ring_template(*g, eps));
  return [g, eps, tmpl](int p_cell) {
    return aarnes_from_ring(g, p_cell, std::make_shared<const Ring>(make_ring(*g, p_cell, eps, tmpl.get())));
  };
}

Measure blob_dtm(const GridPtr& g, const Region& D) {
  require_same_grid(*g, *D.grid(), "blob_dtm");
  if (D.count() < 2 || !D.is_compact() || !is_connected(D))
    throw Error("invalid-params", "D must be a connected compact region with at least 2 cells");
  Measure::Info info;
  info.name = "blob_dtm";
  info.flags = {false, true, true};
  info.total_mass = 1.0;
  const CellSet d = D.cells();
  info.anchor_sets = [d] { return std::vector<CellSet>{d}; };
  return Measure(g, std::move(info), [d](const Region& a) { return d.subset_of(a.cells()) ? 1.0 : 0.0; });
}

Measure lebesgue(const GridPtr& g) {
  Measure::Info info;
  info.name = "lebesgue";
  info.flags = {true, false, false};
  const double area = g->spec().cell_area();
  info.total_mass = g->window_is_space() ? area * static_cast<double>(g->domain().count()) : kInf;
  AdditiveWeights w;
  w.uniform = area;
  w.infinite_on_frame = !g->window_is_space();
  return Measure::additive(g, std::move(info), std::move(w));
}

Measure normalized_lebesgue(const GridPtr& g) {
  if (!g->window_is_space())
    throw Error("invalid-params", "normalized Lebesgue measure needs a window-is-space grid");
  Measure::Info info;
  info.name = "normalized_lebesgue";
  info.flags = {true, false, false};
  info.total_mass = 1.0;
  AdditiveWeights w;
  w.uniform = 1.0 / static_cast<double>(g->domain().count());
  return Measure::additive(g, std::move(info), std::move(w));
}

Measure point_mass(const GridPtr& g, Point x) { return point_mass_cell(g, require_cell(g, x, "x")); }

Measure point_mass_cell(const GridPtr& g, int cell) {
  if (cell < 0 || !g->domain().test(static_cast<std::size_t>(cell)))
    throw Error("invalid-params", "point mass outside the grid domain");
  Measure::Info info;
  info.name = "point_mass";
  info.flags = {true, true, false};
  info.total_mass = 1.0;
  info.anchors = {g->center(cell)};
  AdditiveWeights w;
  w.sparse.emplace_back(cell, 1.0);
  return Measure::additive(g, std::move(info), std::move(w));
}

}  // namespace catalog

}  // namespace tmkit
