#include "tmkit/image_transform.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>

#include "tmkit/error.hpp"
#include "tmkit/parallel.hpp"
#include "tmkit/shapes.hpp"
#include "tmkit/solid_expansion.hpp"
#include "tmkit/topology.hpp"

namespace tmkit {

namespace {

constexpr std::size_t kImageMemoCapacity = 1024;

bool is_one(double v) { return std::abs(v - 1.0) <= 1e-9; }

CellSet cells_where(const Grid& g, const std::vector<char>& flags) {
  CellSet s(g.cell_count());
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i]) s.set(i);
  return s;
}

// Cells whose singleton is a compact region: frame cells of a plane grid
// stand for the point at infinity.
std::vector<int> singleton_cells(const Grid& g) {
  return g.window_is_space() ? g.domain().indices() : (g.domain() - g.frame()).indices();
}

std::size_t symmetric_difference(const CellSet& a, const CellSet& b) { return ((a - b) | (b - a)).count(); }

}  // namespace

// ------------------------------------------------------------- MeasureMap

struct MeasureMap::Core {
  Info info;
  std::function<Measure(int)> make;
  std::once_flag built;
  std::vector<Measure> measures;
  std::optional<ImageTransform> source;
};

MeasureMap::MeasureMap(Info info, std::function<Measure(int)> at) : core_(std::make_shared<Core>()) {
  if (!info.domain || !info.codomain) throw Error("invalid-params", "measure map needs both grids");
  if (!info.point_map.empty() && info.point_map.size() != info.codomain->cell_count())
    throw Error("invalid-params", "point map size differs from the codomain cell count");
  core_->info = std::move(info);
  core_->make = std::move(at);
}

const std::string& MeasureMap::name() const { return core_->info.name; }
const GridPtr& MeasureMap::domain() const { return core_->info.domain; }
const GridPtr& MeasureMap::codomain() const { return core_->info.codomain; }
bool MeasureMap::deficient_only() const { return core_->info.deficient_only; }
bool MeasureMap::constant() const { return core_->info.constant; }
const std::vector<int>& MeasureMap::point_map() const { return core_->info.point_map; }

const Measure& MeasureMap::at(int y) const {
  Core& c = *core_;
  const Grid& yg = *c.info.codomain;
  if (y < 0 || !yg.domain().test(static_cast<std::size_t>(y)))
    throw Error("invalid-params", "cell " + std::to_string(y) + " is not in the codomain");
  std::call_once(c.built, [&c, &yg] {
    if (c.info.constant) {
      c.measures.push_back(c.make(static_cast<int>(yg.domain().first())));
      return;
    }
    c.measures.resize(yg.cell_count());
    yg.domain().for_each([&](int i) { c.measures[static_cast<std::size_t>(i)] = c.make(i); });
  });
  return c.info.constant ? c.measures.front() : c.measures[static_cast<std::size_t>(y)];
}

Region MeasureMap::preimage_of_one(const Region& a) const {
  const Core& c = *core_;
  require_same_grid(*c.info.domain, *a.grid(), "measure map");
  const GridPtr& yg = c.info.codomain;
  if (a.empty()) return Region::empty(yg, a.kind());
  if (!c.info.point_map.empty()) {
    CellSet out(yg->cell_count());
    yg->domain().for_each([&](int y) {
      if (a.contains(c.info.point_map[static_cast<std::size_t>(y)])) out.set(static_cast<std::size_t>(y));
    });
    return Region(yg, std::move(out), a.kind());
  }
  if (c.info.constant) {
    const Measure& w = at(static_cast<int>(yg->domain().first()));
    return is_one(w.uncached(a)) ? Region::full(yg, a.kind()) : Region::empty(yg, a.kind());
  }
  const std::vector<int> ys = yg->domain().indices();
  at(ys.front());
  std::vector<char> hit(yg->cell_count(), 0);
  parallel_for(ys.size(), [&](std::size_t k) {
    const int y = ys[k];
    hit[static_cast<std::size_t>(y)] = is_one(c.measures[static_cast<std::size_t>(y)].uncached(a)) ? 1 : 0;
  });
  return Region(yg, cells_where(*yg, hit), a.kind());
}

const ImageTransform* MeasureMap::source() const { return core_->source ? &*core_->source : nullptr; }
void MeasureMap::set_source(std::shared_ptr<const ImageTransform> q) {
  if (q) core_->source = *q;
}

// --------------------------------------------------------- ImageTransform

struct ImageTransform::Core {
  Info info;
  Apply apply;
  mutable std::mutex mu;
  mutable std::unordered_map<Region, Region, RegionHash> memo;
  mutable std::optional<Region> full;
  std::optional<MeasureMap> w;
};

ImageTransform::ImageTransform(Info info, Apply apply) : core_(std::make_shared<Core>()) {
  if (!info.domain || !info.codomain) throw Error("invalid-params", "image transform needs both grids");
  core_->info = std::move(info);
  core_->apply = std::move(apply);
}

Region ImageTransform::operator()(const Region& a) const {
  require_same_grid(*core_->info.domain, *a.grid(), core_->info.name.c_str());
  {
    std::lock_guard<std::mutex> lock(core_->mu);
    auto it = core_->memo.find(a);
    if (it != core_->memo.end()) return it->second;
  }
  Region r = core_->apply(a);
  require_same_grid(*core_->info.codomain, *r.grid(), core_->info.name.c_str());
  std::lock_guard<std::mutex> lock(core_->mu);
  if (core_->memo.size() >= kImageMemoCapacity) core_->memo.clear();
  core_->memo.emplace(a, r);
  return r;
}

const std::string& ImageTransform::name() const { return core_->info.name; }
const GridPtr& ImageTransform::domain() const { return core_->info.domain; }
const GridPtr& ImageTransform::codomain() const { return core_->info.codomain; }
bool ImageTransform::deficient_only() const { return core_->info.deficient_only; }

Region ImageTransform::full_image() const {
  {
    std::lock_guard<std::mutex> lock(core_->mu);
    if (core_->full) return *core_->full;
  }
  Region r = (*this)(Region::full(core_->info.domain, Kind::Open));
  std::lock_guard<std::mutex> lock(core_->mu);
  core_->full = r;
  return r;
}

const MeasureMap* ImageTransform::measure_map() const { return core_->w ? &*core_->w : nullptr; }
void ImageTransform::set_measure_map(MeasureMap w) { core_->w = std::move(w); }

// ------------------------------------------------------------ builders

ImageTransform it_from_solid_rule(std::string name, GridPtr x, GridPtr y, SolidImageRule rule,
                                  bool deficient_only) {
  struct State {
    std::once_flag once;
    CellSet full;
  };
  auto state = std::make_shared<State>();
  auto full_image = [state, x, rule]() -> const CellSet& {
    std::call_once(state->once, [&] { state->full = rule(Region::full(x, Kind::Open)); });
    return state->full;
  };
  ImageTransform::Apply apply = [x, y, rule, full_image](const Region& a) {
    if (a.empty()) return Region::empty(y, a.kind());
    const auto e = solid_expansion(a);
    std::vector<int> count(y->cell_count(), 0);
    for (const SolidTerm& t : e->terms) {
      const CellSet img = rule(t.piece);
      img.for_each([&](int c) { count[static_cast<std::size_t>(c)] += t.coef; });
    }
    if (e->mass_coef != 0)
      full_image().for_each([&](int c) { count[static_cast<std::size_t>(c)] += e->mass_coef; });
    CellSet out(y->cell_count());
    y->domain().for_each([&](int c) {
      if (count[static_cast<std::size_t>(c)] == 1) out.set(static_cast<std::size_t>(c));
    });
    return Region(y, std::move(out), a.kind());
  };
  return ImageTransform({std::move(name), std::move(x), std::move(y), deficient_only}, std::move(apply));
}

ImageTransform it_from_measure_map(const MeasureMap& w) {
  ImageTransform q({w.name(), w.domain(), w.codomain(), w.deficient_only()},
                   [w](const Region& a) { return w.preimage_of_one(a); });
  q.set_measure_map(w);
  return q;
}

namespace {

Measure adjoint_impl(const ImageTransform& q, const Measure& nu, bool memoize) {
  require_same_grid(*q.codomain(), *nu.grid(), "adjoint");
  Measure::Info info;
  info.name = "adjoint(" + q.name() + ", " + nu.name() + ")";
  info.flags.is_topological = !q.deficient_only() && nu.is_topological();
  info.flags.is_simple = nu.is_simple();
  info.flags.is_deficient_only = !info.flags.is_topological;
  info.memoize = memoize;
  info.total_mass = nu(q.full_image());
  return Measure(q.domain(), std::move(info), [q, nu](const Region& a) { return nu(q(a)); });
}

}  // namespace

MeasureMap measure_map_from_it(const ImageTransform& q) {
  MeasureMap::Info info;
  info.name = "w(" + q.name() + ")";
  info.domain = q.domain();
  info.codomain = q.codomain();
  info.deficient_only = q.deficient_only();
  const GridPtr yg = q.codomain();
  MeasureMap w(std::move(info), [q, yg](int y) {
    // q memoizes images, so the per-cell measures stay cheap without a memo.
    return adjoint_impl(q, catalog::point_mass_cell(yg, y), false);
  });
  w.set_source(std::make_shared<const ImageTransform>(q));
  return w;
}

Measure adjoint(const ImageTransform& q, const Measure& nu) { return adjoint_impl(q, nu, true); }

ImageTransform compose(const ImageTransform& p, const ImageTransform& q) {
  require_same_grid(*q.codomain(), *p.domain(), "compose");
  return ImageTransform({p.name() + " o " + q.name(), q.domain(), p.codomain(), p.deficient_only() || q.deficient_only()},
                        [p, q](const Region& a) { return p(q(a)); });
}

// -------------------------------------------------------------- checks

AxiomReport check_it_axioms(const ImageTransform& q, RegionSampler& s, std::size_t trials) {
  require_same_grid(*q.domain(), *s.grid(), "check_it_axioms");
  AxiomReport rep;
  const GridPtr& g = q.domain();
  auto same = [&](const std::string& axiom, const CellSet& lhs, const CellSet& rhs, std::vector<Region> wit,
                  std::string note = {}) {
    rep.expect(lhs == rhs, {axiom, std::move(wit), {}, static_cast<double>(symmetric_difference(lhs, rhs)), 0.0, 0.0,
                            std::move(note)});
  };
  auto subset = [&](const std::string& axiom, const CellSet& lhs, const CellSet& rhs, std::vector<Region> wit,
                    std::string note = {}) {
    rep.expect(lhs.subset_of(rhs),
               {axiom, std::move(wit), {}, static_cast<double>((lhs - rhs).count()), 0.0, 0.0, std::move(note)});
  };
  for (Kind k : {Kind::Open, Kind::Compact}) {
    const Region e = q(Region::empty(g, k));
    rep.expect(e.empty(), {"empty", {}, {}, static_cast<double>(e.count()), 0.0, 0.0, "q(empty) is not empty"});
  }
  const Region qx = q.full_image();
  for (std::size_t t = 0; t < trials; ++t) {
    for (Kind k : {Kind::Open, Kind::Compact}) {
      const Region a = s.region(k);
      const Region qa = q(a);
      rep.expect(qa.kind() == a.kind(), {"IT1", {a, qa}, {}, 0.0, 0.0, 0.0, "kind not preserved"});
      const auto [lo, hi] = s.nested(k);
      subset("monotone", q(lo).cells(), q(hi).cells(), {lo, hi});
    }
    {
      const bool open_pairs = !q.deficient_only() && t % 2 == 1;
      const Kind k = open_pairs ? Kind::Open : Kind::Compact;
      const auto [a, b] = s.separated_pair(k, k);
      const Region qa = q(a), qb = q(b), qab = q(union_of(a, b));
      rep.expect(!qa.cells().intersects(qb.cells()),
                 {"disjoint-union", {a, b}, {}, static_cast<double>(qa.cells().intersection_count(qb.cells())), 0.0,
                  0.0, "images overlap"});
      same("disjoint-union", qab.cells(), qa.cells() | qb.cells(), {a, b});
    }
    if (g->window_is_space() && !q.deficient_only()) {
      const auto [k, u] = s.complementary();
      const Region qk = q(k), qu = q(u);
      same("complement", qu.cells(), qx.cells() - qk.cells(), {k, u});
    }
    {
      const Region u = s.region(Kind::Open);
      const Region qu = q(u);
      for (int j = 0; j <= 2; ++j) {
        const Region kj(g, erode(*g, u.cells(), Connectivity::Eight, j), Kind::Compact);
        const Region qk = q(kj);
        if (j == 0)
          same("regularity", qk.cells(), qu.cells(), {kj, u}, "open set not attained by its compact copy");
        else
          subset("regularity", qk.cells(), qu.cells(), {kj, u}, "compact inside open maps outside its image");
      }
      const Region k = s.region(Kind::Compact);
      const Region qk = q(k);
      for (int j = 0; j <= 2; ++j) {
        const Region uj(g, dilate(*g, k.cells(), Connectivity::Eight, j), Kind::Open);
        if (!g->window_is_space() && uj.touches_frame()) continue;
        const Region qu2 = q(uj);
        if (j == 0)
          same("regularity", qu2.cells(), qk.cells(), {k, uj}, "compact set not attained by its open copy");
        else
          subset("regularity", qk.cells(), qu2.cells(), {k, uj}, "open around compact misses its image");
      }
    }
  }
  return rep;
}

InjectivityResult injectivity_check(const ImageTransform& q) {
  const GridPtr& g = q.domain();
  InjectivityResult res;
  for (int x : singleton_cells(*g)) {
    if (q(Region::from_indices(g, {x}, Kind::Compact)).empty()) {
      res.injective = false;
      res.witness = x;
      return res;
    }
  }
  return res;
}

InverseFunctionResult inverse_function_check(const ImageTransform& q, RegionSampler& s, std::size_t trials) {
  const GridPtr& xg = q.domain();
  const GridPtr& yg = q.codomain();
  std::vector<int> owner(yg->cell_count(), -1);
  for (int x : singleton_cells(*xg)) {
    const Region img = q(Region::from_indices(xg, {x}, Kind::Compact));
    img.cells().for_each([&](int y) {
      int& o = owner[static_cast<std::size_t>(y)];
      if (o >= 0)
        throw Error("ambiguous-cover", "cell " + std::to_string(y) + " lies in the images of cells " +
                                           std::to_string(o) + " and " + std::to_string(x));
      o = x;
    });
  }
  InverseFunctionResult res;
  bool covered = true;
  yg->domain().for_each([&](int y) { covered = covered && owner[static_cast<std::size_t>(y)] >= 0; });
  if (!covered) return res;
  res.u = owner;
  for (std::size_t t = 0; t < trials; ++t) {
    const Region a = s.region(t % 2 ? Kind::Open : Kind::Compact);
    CellSet pre(yg->cell_count());
    yg->domain().for_each([&](int y) {
      if (a.contains(owner[static_cast<std::size_t>(y)])) pre.set(static_cast<std::size_t>(y));
    });
    const CellSet img = q(a).cells();
    res.report.expect(img == pre, {"inverse-function", {a}, {}, static_cast<double>(symmetric_difference(img, pre)),
                                   0.0, 0.0, "q(A) differs from u^-1(A)"});
  }
  return res;
}

int haar_square_side(const Grid& g, double eps) {
  return static_cast<int>(std::ceil(eps / (g.spec().pitch() * std::sqrt(2.0)) - 1e-9)) + 1;
}

Region haar_square(const GridPtr& g, double eps) {
  const int n = haar_square_side(*g, eps);
  const int cx = g->cell_at(shapes::window_center(*g));
  std::vector<int> cells;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cells.push_back(g->index(g->ix(cx) + i, g->iy(cx) + j));
  return Region::from_indices(g, cells, Kind::Compact);
}

AxiomReport haar_nonuniqueness_demo(const GridPtr& g, const Measure& m, const std::vector<double>& eps_list,
                                    RegionSampler& s, std::size_t trials) {
  if (g->window_is_space()) throw Error("invalid-params", "the Haar demo runs on a plane grid");
  require_same_grid(*g, *m.grid(), "haar_nonuniqueness_demo");
  const double pitch = g->spec().pitch();
  for (double e : eps_list) {
    const double k = e / pitch;
    if (e < 0.0 || std::abs(k - std::round(k)) > 1e-9)
      throw Error("invalid-params", "eps must be a nonnegative multiple of the cell pitch");
  }
  AxiomReport rep;
  std::vector<double> positive;
  for (double e : eps_list) {
    const ImageTransform q = catalog::it_resolution_kill(g, e);
    const Measure qm = adjoint(q, m);
    const int reach = static_cast<int>(std::ceil(e / pitch)) + 2;
    // A region, a shift, and the shifted region, all clear of the frame.
    auto shifted_pair = [&](Kind kind) -> std::optional<std::tuple<Region, Region, int, int>> {
      for (int attempt = 0; attempt < 50; ++attempt) {
        const Region a = s.region(kind);
        const int dx = std::uniform_int_distribution<int>(-4, 4)(s.rng());
        const int dy = std::uniform_int_distribution<int>(-4, 4)(s.rng());
        const Region b(g, translate(*g, a.cells(), dx, dy), kind);
        const CellSet band = dilate(*g, g->frame(), Connectivity::Eight, reach);
        if (b.count() != a.count() || a.cells().intersects(band) || b.cells().intersects(band)) continue;
        return std::make_tuple(a, b, dx, dy);
      }
      return std::nullopt;
    };
    for (std::size_t t = 0; t < trials; ++t) {
      const Kind kind = t % 2 ? Kind::Open : Kind::Compact;
      if (e == 0.0) {
        const Region a = s.region(kind);
        rep.expect(q(a).cells() == a.cells(), {"identity", {a}, {}, 0.0, 0.0, 0.0, "q_0(A) != A"});
        rep.expect_close("identity", qm(a), m(a), 0.0, {a});
        continue;
      }
      const auto p = shifted_pair(kind);
      if (!p) continue;
      const auto& [a, b, dx, dy] = *p;
      const CellSet lhs = q(b).cells();
      const CellSet rhs = translate(*g, q(a).cells(), dx, dy);
      rep.expect(lhs == rhs, {"commute", {a, b}, {}, static_cast<double>(symmetric_difference(lhs, rhs)), 0.0, 0.0,
                              "eps = " + std::to_string(e)});
      if (kind == Kind::Compact) rep.expect_close("invariant", qm(b), qm(a), 0.0, {a, b}, {}, "eps = " + std::to_string(e));
    }
    if (e > 0.0) positive.push_back(e);
  }
  std::sort(positive.begin(), positive.end());
  for (std::size_t i = 0; i + 1 < positive.size(); ++i) {
    const double e1 = positive[i], e2 = positive[i + 1];
    const Region k = haar_square(g, e1);
    if (diameter(k) >= e2) continue;
    const int n = haar_square_side(*g, e1);
    std::vector<int> cells;
    k.cells().for_each([&](int c) { cells.push_back(c); });
    const ImageTransform q1 = catalog::it_resolution_kill(g, e1), q2 = catalog::it_resolution_kill(g, e2);
    const double v1 = m(q1(k)), v2 = m(q2(k)), v = m(k);
    rep.expect(v1 != v2 && v1 != v && v2 != v,
               {"non-unique", {k}, {}, v1, v2, 0.0,
                "eps " + std::to_string(e1) + " vs " + std::to_string(e2) + ", m(K) = " + std::to_string(v)});
    // q_e1(K) sits at the four corners, up to one cell ring, when diam K = e1;
    // only asserted when the cell square gets within a pitch of e1.
    if (diameter(k) - e1 > pitch + 1e-12) continue;
    CellSet corners(g->cell_count());
    for (int cc : {cells.front(), cells[static_cast<std::size_t>(n - 1)], cells[cells.size() - static_cast<std::size_t>(n)],
                   cells.back()})
      corners.set(static_cast<std::size_t>(cc));
    const CellSet near = dilate(*g, corners, Connectivity::Eight, 1);
    const CellSet img = q1(k).cells();
    bool each = true;
    corners.for_each([&](int cc) {
      CellSet one(g->cell_count());
      one.set(static_cast<std::size_t>(cc));
      each = each && dilate(*g, one, Connectivity::Eight, 1).intersects(img);
    });
    rep.expect(img.subset_of(near) && each,
               {"four-corners", {k, q1(k)}, {}, static_cast<double>((img - near).count()), 0.0, 0.0,
                "eps = " + std::to_string(e1)});
  }
  return rep;
}

// ------------------------------------------------------------- catalog

namespace catalog {

ImageTransform it_identity(const GridPtr& g) {
  return ImageTransform({"identity", g, g, false}, [](const Region& a) { return a; });
}

ImageTransform it_preimage(const GridPtr& x, const GridPtr& y, std::vector<int> u, std::string name) {
  if (u.size() != y->cell_count()) throw Error("invalid-params", "cell map size differs from the codomain");
  bool ok = true;
  y->domain().for_each([&](int c) {
    const int t = u[static_cast<std::size_t>(c)];
    ok = ok && t >= 0 && x->domain().test(static_cast<std::size_t>(t));
  });
  if (!ok) throw Error("invalid-params", "cell map leaves the domain of X");
  MeasureMap::Info info;
  info.name = name;
  info.domain = x;
  info.codomain = y;
  info.point_map = u;
  MeasureMap w(std::move(info), [x, u](int c) { return point_mass_cell(x, u[static_cast<std::size_t>(c)]); });
  return it_from_measure_map(w);
}

std::vector<int> translation_map(const GridPtr& x, const GridPtr& y, int dx, int dy) {
  if (x->nx() != y->nx() || x->ny() != y->ny()) throw Error("invalid-params", "translation needs equal grid sizes");
  std::vector<int> u(y->cell_count(), -1);
  y->domain().for_each([&](int c) {
    const int ix = std::clamp(y->ix(c) + dx, 0, x->nx() - 1);
    const int iy = std::clamp(y->iy(c) + dy, 0, x->ny() - 1);
    const int t = x->index(ix, iy);
    if (!x->domain().test(static_cast<std::size_t>(t)))
      throw Error("invalid-params", "translated cell leaves the domain of X");
    u[static_cast<std::size_t>(c)] = t;
  });
  return u;
}

std::vector<int> reflection_map(const GridPtr& g) {
  std::vector<int> u(g->cell_count(), -1);
  g->domain().for_each([&](int c) {
    const int t = g->index(g->nx() - 1 - g->ix(c), g->iy(c));
    if (!g->domain().test(static_cast<std::size_t>(t)))
      throw Error("invalid-params", "reflected cell leaves the domain");
    u[static_cast<std::size_t>(c)] = t;
  });
  return u;
}

ImageTransform it_two_point(const GridPtr& g, Point x, Point z) {
  if (!g->window_is_space()) throw Error("invalid-params", "two-point transform needs a window-is-space grid");
  const int cx = g->cell_at(x), cz = g->cell_at(z);
  if (cx < 0 || cz < 0 || cx == cz) throw Error("invalid-params", "E must be two distinct points of the domain");
  return it_from_solid_rule("two_point_it", g, g, [g, cx, cz](const Region& s) {
    const int k = (s.contains(cx) ? 1 : 0) + (s.contains(cz) ? 1 : 0);
    if (k == 0) return CellSet(g->cell_count());
    return k == 1 ? s.cells() : g->domain();
  });
}

ImageTransform it_boundary(const GridPtr& g, const Region& b) {
  if (!g->window_is_space()) throw Error("invalid-params", "boundary transform needs a window-is-space grid");
  require_same_grid(*g, *b.grid(), "it_boundary");
  if (b.empty()) throw Error("invalid-params", "B must be nonempty");
  const CellSet bc = b.cells();
  return it_from_solid_rule("boundary_it", g, g, [g, bc](const Region& s) {
    if (!s.cells().intersects(bc)) return CellSet(g->cell_count());
    return bc.subset_of(s.cells()) ? g->domain() : s.cells();
  });
}

namespace {

void check_kill_params(const Grid& g, double eps) {
  if (g.window_is_space()) throw Error("invalid-params", "resolution kill needs a plane grid");
  if (eps < 0.0) throw Error("invalid-params", "eps must be nonnegative");
  if (eps > 0.0 && eps <= g.spec().pitch()) throw Error("invalid-params", "eps must exceed the cell pitch");
}

}  // namespace

ImageTransform it_resolution_kill(const GridPtr& g, double eps) {
  check_kill_params(*g, eps);
  if (eps == 0.0) return it_identity(g);
  MeasureMap::Info info;
  info.name = "resolution_kill(" + std::to_string(eps) + ")";
  info.domain = g;
  info.codomain = g;
  return it_from_measure_map(MeasureMap(std::move(info), aarnes_circle_family(g, eps)));
}

ImageTransform it_resolution_kill_morph(const GridPtr& g, double eps) {
  check_kill_params(*g, eps);
  if (eps == 0.0) return it_identity(g);
  const std::vector<Offset> ring = shapes::ring_template(*g, eps);
  std::vector<Offset> back;
  for (const auto& [dx, dy] : ring) back.emplace_back(-dx, -dy);
  return it_from_solid_rule("resolution_kill_morph(" + std::to_string(eps) + ")", g, g,
                            [g, ring, back](const Region& s) {
                              return erode_by(*g, s.cells(), ring) | (s.cells() & dilate_by(*g, s.cells(), back));
                            });
}

ImageTransform it_measure_threshold(const GridPtr& g, double eps, const Measure& m) {
  require_same_grid(*g, *m.grid(), "it_measure_threshold");
  if (!g->window_is_space()) throw Error("invalid-params", "threshold transform needs a window-is-space grid");
  if (!(eps > 0.0 && eps < 0.5)) throw Error("invalid-params", "eps must lie in (0, 1/2)");
  if (std::abs(m.total_mass() - 1.0) > 1e-12) throw Error("invalid-params", "m must be normalized");
  if (const AdditiveWeights* w = m.additive_weights(); w && w->sparse.empty() && w->uniform > 0.0) {
    for (double t : {eps, 1.0 - eps}) {
      const double k = t / w->uniform;
      if (std::abs(k - std::round(k)) <= 1e-9)
        throw Error("invalid-params", "eps falls on a value of m; choose eps between cell multiples");
    }
  }
  return it_from_solid_rule("measure_threshold(" + std::to_string(eps) + ")", g, g, [g, eps, m](const Region& s) {
    const double v = m(s);
    if (v < eps) return CellSet(g->cell_count());
    return v < 1.0 - eps ? s.cells() : g->domain();
  });
}

ImageTransform it_constant(const GridPtr& x, const GridPtr& y, const Measure& mu0) {
  require_same_grid(*x, *mu0.grid(), "it_constant");
  if (!mu0.is_simple()) throw Error("invalid-params", "the constant transform needs a simple measure");
  MeasureMap::Info info;
  info.name = "constant(" + mu0.name() + ")";
  info.domain = x;
  info.codomain = y;
  info.deficient_only = mu0.is_deficient_only();
  info.constant = true;
  return it_from_measure_map(MeasureMap(std::move(info), [mu0](int) { return mu0; }));
}

MeasureMap axis_points_map(const GridPtr& g) {
  if (g->window_is_space()) throw Error("invalid-params", "axis-point map needs a plane grid");
  const GridSpec& s = g->spec();
  // Points outside the window are clamped onto the frame.
  auto cell = [g, &s](double x, double y) {
    const double cx = std::clamp(x, s.x_min + 0.5 * s.dx(), s.x_max - 0.5 * s.dx());
    const double cy = std::clamp(y, s.y_min + 0.5 * s.dy(), s.y_max - 0.5 * s.dy());
    return g->cell_at(cx, cy);
  };
  MeasureMap::Info info;
  info.name = "axis_points";
  info.domain = g;
  info.codomain = g;
  return MeasureMap(std::move(info), [g, cell](int y) {
    const Point p = g->center(y);
    return odd_point_cells(g, {cell(p.x, 0.0), cell(p.x, p.y), cell(p.y, 0.0)});
  });
}

}  // namespace catalog

}  // namespace tmkit
