#include "tmkit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tmkit/error.hpp"
#include "tmkit/shapes.hpp"
#include "tmkit/topology.hpp"

namespace tmkit {

namespace {

constexpr int kMaxAttempts = 4000;

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Cells within `margin` rings of the window edge.
CellSet margin_band(const Grid& g, int margin) {
  CellSet s(g.cell_count());
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ix = 0; ix < g.nx(); ++ix)
      if (ix < margin || iy < margin || ix >= g.nx() - margin || iy >= g.ny() - margin)
        s.set(static_cast<std::size_t>(g.index(ix, iy)));
  return s;
}

double window_extent(const Grid& g) {
  const GridSpec& s = g.spec();
  return std::min(s.x_max - s.x_min, s.y_max - s.y_min);
}

}  // namespace

// ---------------------------------------------------------------- regions

RegionSampler::RegionSampler(GridPtr grid, std::uint64_t seed, int margin)
    : grid_(std::move(grid)), rng_(seed), margin_(grid_->window_is_space() ? 0 : margin) {}

Point RegionSampler::point() {
  const GridSpec& s = grid_->spec();
  const double mx = margin_ * s.dx(), my = margin_ * s.dy();
  for (int k = 0; k < kMaxAttempts; ++k) {
    const Point p{uniform(rng_, s.x_min + mx, s.x_max - mx), uniform(rng_, s.y_min + my, s.y_max - my)};
    if (grid_->cell_at(p) >= 0) return p;
  }
  throw Error("invalid-params", "could not sample a point in the grid domain");
}

Region RegionSampler::random_shape(Kind kind) {
  const double ext = window_extent(*grid_);
  const double pitch = grid_->spec().pitch();
  const Point c = point();
  const double r = uniform(rng_, 2.0 * pitch, std::max(2.5 * pitch, 0.3 * ext));
  switch (uniform_int(rng_, 0, 2)) {
    case 0: return shapes::disk(grid_, c, r, kind);
    case 1: {
      const double w = uniform(rng_, 0.4, 1.0) * r, h = uniform(rng_, 0.4, 1.0) * r;
      return shapes::rect(grid_, c.x - w, c.y - h, c.x + w, c.y + h, kind);
    }
    default: {
      const double r_in = uniform(rng_, 0.3, 0.6) * r;
      if (r - r_in < 2.0 * pitch) return shapes::disk(grid_, c, r, kind);
      return shapes::annulus(grid_, c, r_in, r, kind);
    }
  }
}

bool RegionSampler::acceptable(const Region& r) const {
  if (r.empty()) return false;
  if (margin_ > 0 && r.cells().intersects(margin_band(*grid_, margin_))) return false;
  return is_well_composed(*grid_, r.cells());
}

Region RegionSampler::solid(Kind kind) {
  const double ext = window_extent(*grid_);
  const double pitch = grid_->spec().pitch();
  for (int k = 0; k < kMaxAttempts; ++k) {
    const Point c = point();
    const double r = uniform(rng_, 1.5 * pitch, std::max(2.0 * pitch, 0.35 * ext));
    Region a = uniform_int(rng_, 0, 1) == 0
                   ? shapes::disk(grid_, c, r, kind)
                   : shapes::rect(grid_, c.x - r * uniform(rng_, 0.3, 1.0), c.y - r * uniform(rng_, 0.3, 1.0),
                                  c.x + r * uniform(rng_, 0.3, 1.0), c.y + r * uniform(rng_, 0.3, 1.0), kind);
    if (acceptable(a) && is_solid(a)) return a;
  }
  throw Error("invalid-params", "could not sample a solid region");
}

Region RegionSampler::region(Kind kind) {
  for (int k = 0; k < kMaxAttempts; ++k) {
    Region a = random_shape(kind);
    const int extra = uniform_int(rng_, 0, 2);
    for (int j = 0; j < extra; ++j) a = union_of(a, random_shape(kind));
    if (acceptable(a)) return a;
  }
  throw Error("invalid-params", "could not sample a region");
}

std::pair<Region, Region> RegionSampler::nested(Kind kind) {
  for (int k = 0; k < kMaxAttempts; ++k) {
    Region b = region(kind);
    Region a = uniform_int(rng_, 0, 3) == 0 ? b : intersection_of(b, random_shape(kind));
    if (acceptable(a)) return {a, b};
  }
  throw Error("invalid-params", "could not sample a nested pair");
}

std::pair<Region, Region> RegionSampler::separated_pair(Kind ka, Kind kb) {
  for (int k = 0; k < kMaxAttempts; ++k) {
    Region a = region(ka);
    Region b = region(kb);
    b = b.with_cells(b.cells() - dilate(*grid_, a.cells(), Connectivity::Eight, 1));
    if (acceptable(b) && separated(a, b)) return {a, b};
  }
  throw Error("invalid-params", "could not sample a separated pair");
}

std::pair<Region, Region> RegionSampler::complementary() {
  if (!grid_->window_is_space())
    throw Error("invalid-params", "complementary pairs need a window-is-space grid");
  Region k = solid(Kind::Compact);
  return {k, complement(k)};
}

RegionFamily sample_family(RegionSampler& s, std::size_t trials, bool compact_only) {
  RegionFamily f;
  const Kind kinds[2] = {Kind::Compact, Kind::Open};
  for (std::size_t t = 0; t < trials; ++t) {
    const Kind k = compact_only ? Kind::Compact : kinds[t % 2];
    f.nested.push_back(s.nested(k));
    const Kind kb = compact_only ? Kind::Compact : kinds[(t / 2) % 2];
    f.separated.push_back(s.separated_pair(k, kb));
    if (s.grid()->window_is_space()) f.complementary.push_back(s.complementary());
    {
      auto [a, b] = s.separated_pair(Kind::Compact, Kind::Compact);
      Region container = union_of(union_of(a, b), s.region(Kind::Compact));
      if (!compact_only && t % 2 == 1) container = container.with_kind(Kind::Open);
      f.packed.push_back({{a, b}, container});
    }
    f.compact_pairs.emplace_back(s.region(Kind::Compact), s.region(Kind::Compact));
    f.singles.push_back(s.region(k));
  }
  return f;
}

// ---------------------------------------------------------------- functions

double PiecewiseLinear::operator()(double t) const {
  if (xs.empty()) return 0.0;
  if (t <= xs.front()) return ys.front();
  if (t >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double x0 = xs[i - 1], x1 = xs[i];
  const double w = (t - x0) / (x1 - x0);
  return ys[i - 1] + w * (ys[i] - ys[i - 1]);
}

bool PiecewiseLinear::nondecreasing() const {
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (ys[i] < ys[i - 1]) return false;
  return true;
}

FunctionSampler::FunctionSampler(GridPtr grid, std::uint64_t seed, double quantum, bool well_composed)
    : grid_(std::move(grid)), rng_(seed), quantum_(quantum), well_composed_(well_composed) {}

SampledFunction FunctionSampler::quantize(const SampledFunction& f) const {
  const double q = quantum_;
  SampledFunction out = f.map([q](double v) { return std::round(v / q) * q; });
  if (!grid_->window_is_space()) {
    grid_->frame().for_each([&](int i) { out[i] = 0.0; });
  }
  return out;
}

SampledFunction FunctionSampler::bump(Point c, double r, double height, double plateau) const {
  const double ramp = std::max(r * (1.0 - plateau), 1e-12);
  SampledFunction f = SampledFunction::from_expression(grid_, [=](Point p) {
    const double d = std::hypot(p.x - c.x, p.y - c.y);
    return height * std::clamp((r - d) / ramp, 0.0, 1.0);
  });
  return quantize(f);
}

SampledFunction FunctionSampler::ramp(const CellSet& cells, int rings) const {
  const std::vector<int> d = chessboard_distance(*grid_, cells, rings + 1);
  std::vector<double> v(grid_->cell_count(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = std::max(0.0, 1.0 - static_cast<double>(d[i]) / (rings + 1));
  return quantize(SampledFunction(grid_, std::move(v)));
}

SampledFunction FunctionSampler::flatten_slopes(const SampledFunction& f) const {
  const Grid& g = *grid_;
  const int nx = g.nx(), ny = g.ny();
  SampledFunction out = f;
  const CellSet& dom = g.domain();
  auto relax = [&](int x, int y, int dx, int dy) {
    const int i = g.index(x, y);
    for (int k = 0; k < 4; ++k) {
      static constexpr int ox[4] = {-1, -1, 0, 1};
      static constexpr int oy[4] = {0, -1, -1, -1};
      const int u = x + ox[k] * dx, v = y + oy[k] * dy;
      if (u < 0 || v < 0 || u >= nx || v >= ny) continue;
      const int j = g.index(u, v);
      if (!dom.test(static_cast<std::size_t>(j))) continue;
      if (out[j] + quantum_ < out[i]) out[i] = out[j] + quantum_;
    }
  };
  // Chamfer passes in both directions until stable (the disk domain is not
  // a rectangle, so one pair of passes may not suffice).
  for (bool changed = true; changed;) {
    const SampledFunction before = out;
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        if (dom.test(static_cast<std::size_t>(g.index(x, y)))) relax(x, y, 1, 1);
    for (int y = ny; y-- > 0;)
      for (int x = nx; x-- > 0;)
        if (dom.test(static_cast<std::size_t>(g.index(x, y)))) relax(x, y, -1, -1);
    changed = !(out == before);
  }
  return out;
}

bool FunctionSampler::levels_well_composed(const SampledFunction& f) const {
  for (double t : f.distinct_values()) {
    CellSet s = CellSet::threshold(f.values(), t, false);
    s &= grid_->domain();
    if (!is_well_composed(*grid_, s)) return false;
  }
  return true;
}

SampledFunction FunctionSampler::random_bumps(int count) {
  const GridSpec& s = grid_->spec();
  const double ext = window_extent(*grid_);
  const double pitch = s.pitch();
  const int margin = grid_->window_is_space() ? 0 : 3;
  RegionSampler points(grid_, rng_(), margin);
  SampledFunction f(grid_, 0.0);
  for (int k = 0; k < count; ++k) {
    const Point c = points.point();
    double r = uniform(rng_, 3.0 * pitch, std::max(4.0 * pitch, 0.4 * ext));
    if (!grid_->window_is_space()) {
      const double room = std::min({c.x - s.x_min, s.x_max - c.x, c.y - s.y_min, s.y_max - c.y}) - 2.0 * pitch;
      r = std::min(r, std::max(room, pitch));
    }
    const double height = std::round(uniform(rng_, 0.25, 1.5) / quantum_) * quantum_;
    const double plateau = 0.3 * uniform_int(rng_, 0, 2);
    f += bump(c, r, height, plateau);
  }
  return well_composed_ ? flatten_slopes(f) : f;
}

SampledFunction FunctionSampler::nonnegative() {
  for (int k = 0; k < kMaxAttempts; ++k) {
    SampledFunction f = random_bumps(uniform_int(rng_, 1, 3));
    if (f.max() <= 0.0) continue;
    if (!well_composed_ || levels_well_composed(f)) return f;
  }
  throw Error("invalid-params", "could not sample a well-composed function");
}

SampledFunction FunctionSampler::signed_function() {
  for (int k = 0; k < kMaxAttempts; ++k) {
    SampledFunction pos = random_bumps(uniform_int(rng_, 1, 2));
    SampledFunction neg = random_bumps(uniform_int(rng_, 1, 2));
    const CellSet keep_out = dilate(*grid_, pos.support(), Connectivity::Eight, 2);
    keep_out.for_each([&](int i) { neg[i] = 0.0; });
    if (well_composed_) neg = flatten_slopes(neg);
    if (neg.max() <= 0.0 || pos.max() <= 0.0) continue;
    SampledFunction f = pos - neg;
    if (!well_composed_ || levels_well_composed(f)) return f;
  }
  throw Error("invalid-params", "could not sample a well-composed signed function");
}

std::pair<SampledFunction, SampledFunction> FunctionSampler::orthogonal_pair() {
  for (int k = 0; k < kMaxAttempts; ++k) {
    SampledFunction f = nonnegative();
    SampledFunction g = random_bumps(uniform_int(rng_, 1, 2));
    const CellSet keep_out = dilate(*grid_, f.support(), Connectivity::Eight, 2);
    keep_out.for_each([&](int i) { g[i] = 0.0; });
    if (well_composed_) g = flatten_slopes(g);
    if (g.max() <= 0.0) continue;
    if (!well_composed_ || (levels_well_composed(g) && levels_well_composed(f + g))) return {f, g};
  }
  throw Error("invalid-params", "could not sample an orthogonal pair");
}

SampledFunction FunctionSampler::dominating(const SampledFunction& f) {
  for (int k = 0; k < kMaxAttempts; ++k) {
    SampledFunction g = f + random_bumps(1);
    if (well_composed_) g = flatten_slopes(g);
    if (!well_composed_ || levels_well_composed(g)) return g;
  }
  return f;
}

PiecewiseLinear FunctionSampler::monotone_phi(double range) {
  const int knots = uniform_int(rng_, 2, 8);
  std::vector<double> xs{0.0};
  while (static_cast<int>(xs.size()) < knots) {
    const double x = range * uniform_int(rng_, -8, 8) / 8.0;
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  PiecewiseLinear phi;
  phi.xs = xs;
  phi.ys.assign(xs.size(), 0.0);
  const auto zero = static_cast<std::size_t>(std::find(xs.begin(), xs.end(), 0.0) - xs.begin());
  for (std::size_t i = zero + 1; i < xs.size(); ++i) phi.ys[i] = phi.ys[i - 1] + uniform_int(rng_, 0, 8) / 8.0;
  for (std::size_t i = zero; i-- > 0;) phi.ys[i] = phi.ys[i + 1] - uniform_int(rng_, 0, 8) / 8.0;
  return phi;
}

PiecewiseLinear FunctionSampler::arbitrary_phi(double range, bool fix_zero) {
  const int knots = uniform_int(rng_, 2, 8);
  std::vector<double> xs;
  if (fix_zero) xs.push_back(0.0);
  while (static_cast<int>(xs.size()) < knots) {
    const double x = range * uniform_int(rng_, -8, 8) / 8.0;
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  PiecewiseLinear phi;
  phi.xs = xs;
  for (double x : xs) phi.ys.push_back(fix_zero && x == 0.0 ? 0.0 : uniform_int(rng_, -16, 16) / 8.0);
  return phi;
}

std::vector<std::pair<SampledFunction, SampledFunction>> adversarial_pairs(
    const std::vector<Point>& anchors, const std::vector<CellSet>& anchor_sets, FunctionSampler& fs,
    std::size_t random_pairs) {
  std::vector<std::pair<SampledFunction, SampledFunction>> out;
  const GridPtr& g = fs.grid();
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      const double d = std::hypot(anchors[i].x - anchors[j].x, anchors[i].y - anchors[j].y);
      for (double plateau : {0.0, 0.5}) {
        out.emplace_back(fs.bump(anchors[i], 0.75 * d, 1.0, plateau),
                         fs.bump(anchors[j], 0.75 * d, 1.0, plateau));
      }
    }
  }
  for (const CellSet& s : anchor_sets) {
    if (s.count() < 2) continue;
    double cx = 0.0, cy = 0.0;
    s.for_each([&](int c) {
      cx += g->center(c).x;
      cy += g->center(c).y;
    });
    cx /= static_cast<double>(s.count());
    cy /= static_cast<double>(s.count());
    for (int k = 0; k < 4; ++k) {
      const double a = std::numbers::pi * k / 4.0;
      CellSet s1(s.size()), s2(s.size());
      s.for_each([&](int c) {
        const Point p = g->center(c);
        ((p.x - cx) * std::cos(a) + (p.y - cy) * std::sin(a) >= 0.0 ? s1 : s2).set(static_cast<std::size_t>(c));
      });
      if (s1.none() || s2.none()) continue;
      out.emplace_back(fs.ramp(s1, 3), fs.ramp(s2, 3));
    }
  }
  for (std::size_t k = 0; k < random_pairs; ++k) {
    SampledFunction f = fs.nonnegative();
    SampledFunction h = fs.nonnegative();
    out.emplace_back(std::move(f), std::move(h));
  }
  return out;
}

}  // namespace tmkit
