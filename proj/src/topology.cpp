#include "tmkit/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "tmkit/error.hpp"

namespace tmkit {

namespace {

constexpr int kDx8[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy8[8] = {0, 0, 1, -1, 1, -1, 1, -1};

int neighbour_count(Connectivity c) { return c == Connectivity::Eight ? 8 : 4; }

// Cells with column index in [lo, hi).
CellSet column_band(const Grid& g, int lo, int hi) {
  CellSet s(g.cell_count());
  lo = std::max(lo, 0);
  hi = std::min(hi, g.nx());
  if (lo >= hi) return s;
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ix = lo; ix < hi; ++ix) s.set(static_cast<std::size_t>(g.index(ix, iy)));
  return s;
}

// Translation without domain masking; cells leaving the window are dropped.
CellSet shift_raw(const Grid& g, const CellSet& s, int dx, int dy) {
  if (dx == 0 && dy == 0) return s;
  if (std::abs(dx) >= g.nx() || std::abs(dy) >= g.ny()) return CellSet(s.size());
  CellSet out = s.shifted(static_cast<long>(dy) * g.nx() + dx);
  if (dx > 0)
    out &= column_band(g, dx, g.nx());
  else if (dx < 0)
    out &= column_band(g, 0, g.nx() + dx);
  return out;
}

std::vector<Offset> element(Connectivity c) {
  std::vector<Offset> o;
  for (int k = 0; k < neighbour_count(c); ++k) o.emplace_back(kDx8[k], kDy8[k]);
  return o;
}

// Labels the members of `s`; returns the component count. labels[i] = -1
// for non-members.
int label_components(const Grid& g, const CellSet& s, Connectivity c, std::vector<int>& labels) {
  labels.assign(g.cell_count(), -1);
  const int nx = g.nx(), ny = g.ny();
  const int nn = neighbour_count(c);
  std::vector<int> stack;
  int next = 0;
  s.for_each([&](int seed) {
    if (labels[static_cast<std::size_t>(seed)] >= 0) return;
    const int lab = next++;
    labels[static_cast<std::size_t>(seed)] = lab;
    stack.push_back(seed);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int cx = cur % nx, cy = cur / nx;
      for (int k = 0; k < nn; ++k) {
        const int x = cx + kDx8[k], y = cy + kDy8[k];
        if (x < 0 || y < 0 || x >= nx || y >= ny) continue;
        const int j = y * nx + x;
        if (labels[static_cast<std::size_t>(j)] >= 0 || !s.test(static_cast<std::size_t>(j))) continue;
        labels[static_cast<std::size_t>(j)] = lab;
        stack.push_back(j);
      }
    }
  });
  return next;
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

ComponentDecomposition connected_components(const Region& r) {
  ComponentDecomposition out;
  const Grid& g = *r.grid();
  std::vector<int> labels;
  const int n = label_components(g, r.cells(), connectivity_of(r.kind()), labels);
  std::vector<CellSet> sets(static_cast<std::size_t>(n), CellSet(g.cell_count()));
  r.cells().for_each([&](int i) { sets[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].set(static_cast<std::size_t>(i)); });
  out.components.reserve(sets.size());
  for (auto& s : sets) {
    const bool bounded = g.window_is_space() || !s.intersects(g.frame());
    out.components.emplace_back(r.grid(), std::move(s), r.kind());
    out.bounded.push_back(bounded);
  }
  return out;
}

std::size_t component_count(const Region& r) {
  std::vector<int> labels;
  return static_cast<std::size_t>(
      label_components(*r.grid(), r.cells(), connectivity_of(r.kind()), labels));
}

bool is_connected(const Region& r) { return component_count(r) == 1; }

Region complement(const Region& r) {
  return Region(r.grid(), r.grid()->domain() - r.cells(), flip(r.kind()));
}

bool is_solid(const Region& r) {
  if (r.empty() || !is_connected(r)) return false;
  const Region c = complement(r);
  if (c.empty()) return true;
  if (r.grid()->window_is_space()) return is_connected(c);
  const ComponentDecomposition d = connected_components(c);
  return std::all_of(d.bounded.begin(), d.bounded.end(), [](bool b) { return !b; });
}

Region superlevel_set(const SampledFunction& f, double t, bool strict) {
  CellSet s = CellSet::threshold(f.values(), t, strict);
  s &= f.grid()->domain();
  return Region(f.grid(), std::move(s), strict ? Kind::Open : Kind::Compact);
}

double diameter(const Region& r) {
  if (r.empty()) throw Error("empty-region", "diameter of an empty region");
  const Grid& g = *r.grid();
  // Only cells on the region's own edge can be hull vertices.
  const CellSet edge = r.cells() - erode(g, r.cells(), Connectivity::Four, 1);
  std::vector<Point> pts;
  (edge.any() ? edge : r.cells()).for_each([&](int i) { pts.push_back(g.center(i)); });
  if (pts.size() == 1) return 0.0;
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  // Andrew's monotone chain.
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    const Point& p = pts[i - 1];
    while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  const std::size_t h = hull.size();
  if (h <= 2) return std::sqrt(dist2(hull.front(), hull.back()));
  // Rotating calipers over antipodal pairs.
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % h];
    while (std::abs(cross(a, b, hull[(j + 1) % h])) > std::abs(cross(a, b, hull[j])))
      j = (j + 1) % h;
    best = std::max({best, dist2(a, hull[j]), dist2(b, hull[j])});
  }
  return std::sqrt(best);
}

double diameter_bruteforce(const Region& r) {
  if (r.empty()) throw Error("empty-region", "diameter of an empty region");
  std::vector<Point> pts;
  r.cells().for_each([&](int i) { pts.push_back(r.grid()->center(i)); });
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, dist2(pts[i], pts[j]));
  return std::sqrt(best);
}

bool disjoint(const Region& a, const Region& b) {
  require_same_grid(*a.grid(), *b.grid(), "disjoint");
  return !a.cells().intersects(b.cells());
}

bool separated(const Region& a, const Region& b) {
  require_same_grid(*a.grid(), *b.grid(), "separated");
  const Connectivity c =
      a.is_compact() || b.is_compact() ? Connectivity::Eight : Connectivity::Four;
  return !dilate(*a.grid(), a.cells(), c, 1).intersects(b.cells());
}

Region union_of(const Region& a, const Region& b) {
  require_same_grid(*a.grid(), *b.grid(), "union");
  return Region(a.grid(), a.cells() | b.cells(), a.kind());
}

Region intersection_of(const Region& a, const Region& b) {
  require_same_grid(*a.grid(), *b.grid(), "intersection");
  return Region(a.grid(), a.cells() & b.cells(), a.kind());
}

CellSet dilate_by(const Grid& g, const CellSet& s, const std::vector<Offset>& offsets) {
  CellSet out(s.size());
  for (const auto& [dx, dy] : offsets) out |= shift_raw(g, s, dx, dy);
  out &= g.domain();
  return out;
}

CellSet erode_by(const Grid& g, const CellSet& s, const std::vector<Offset>& offsets) {
  CellSet out = g.domain();
  for (const auto& [dx, dy] : offsets) {
    out &= shift_raw(g, s, -dx, -dy);
    if (out.none()) break;
  }
  return out;
}

CellSet dilate(const Grid& g, const CellSet& s, Connectivity c, int steps) {
  std::vector<Offset> el = element(c);
  el.emplace_back(0, 0);
  CellSet out = s;
  for (int k = 0; k < steps; ++k) out = dilate_by(g, out, el);
  return out;
}

CellSet erode(const Grid& g, const CellSet& s, Connectivity c, int steps) {
  std::vector<Offset> el = element(c);
  el.emplace_back(0, 0);
  CellSet out = s;
  for (int k = 0; k < steps; ++k) out = erode_by(g, out, el);
  return out;
}

CellSet translate(const Grid& g, const CellSet& s, int dx, int dy) {
  CellSet out = shift_raw(g, s, dx, dy);
  out &= g.domain();
  return out;
}

CellSet inner_boundary(const Grid& g, const CellSet& s, Connectivity c) {
  return s & dilate(g, g.domain() - s, c, 1);
}

bool is_well_composed(const Grid& g, const CellSet& s) {
  const int nx = g.nx(), ny = g.ny();
  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const bool a = s.test(static_cast<std::size_t>(g.index(ix, iy)));
      const bool b = s.test(static_cast<std::size_t>(g.index(ix + 1, iy)));
      const bool c = s.test(static_cast<std::size_t>(g.index(ix, iy + 1)));
      const bool d = s.test(static_cast<std::size_t>(g.index(ix + 1, iy + 1)));
      if (a == d && b == c && a != b) return false;
    }
  }
  return true;
}

std::vector<int> chessboard_distance(const Grid& g, const CellSet& targets, int cap) {
  std::vector<int> dist(g.cell_count(), cap);
  std::deque<int> queue;
  (targets & g.domain()).for_each([&](int i) {
    dist[static_cast<std::size_t>(i)] = 0;
    queue.push_back(i);
  });
  const int nx = g.nx(), ny = g.ny();
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const int d = dist[static_cast<std::size_t>(cur)];
    if (d + 1 >= cap) continue;
    const int cx = cur % nx, cy = cur / nx;
    for (int k = 0; k < 8; ++k) {
      const int x = cx + kDx8[k], y = cy + kDy8[k];
      if (x < 0 || y < 0 || x >= nx || y >= ny) continue;
      const int j = y * nx + x;
      if (!g.domain().test(static_cast<std::size_t>(j)) || dist[static_cast<std::size_t>(j)] <= d + 1)
        continue;
      dist[static_cast<std::size_t>(j)] = d + 1;
      queue.push_back(j);
    }
  }
  return dist;
}

}  // namespace tmkit
