#include "tmkit/measure_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "tmkit/shapes.hpp"
#include "tmkit/topology.hpp"

namespace tmkit {

double value_tolerance(double scale) {
  return 1e-9 * std::max(1.0, std::isfinite(scale) ? std::abs(scale) : 1.0);
}

namespace {

// Separated compact solids inside the compact solid `c`.
std::vector<Region> solid_pieces(const Region& c, std::mt19937_64& rng) {
  const Grid& g = *c.grid();
  const CellSet inner = erode(g, c.cells(), Connectivity::Eight, 1);
  std::vector<Region> pieces;
  if (inner.none()) return pieces;
  const std::vector<int> cells = inner.indices();
  const int want = std::uniform_int_distribution<int>(1, 3)(rng);
  CellSet used(g.cell_count());
  for (int attempt = 0; attempt < 40 && static_cast<int>(pieces.size()) < want; ++attempt) {
    const int seed = cells[std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng)];
    const double r = g.spec().pitch() * std::uniform_real_distribution<double>(0.5, 6.0)(rng);
    Region d = shapes::disk(c.grid(), g.center(seed), r, Kind::Compact);
    d = d.with_cells(d.cells() & inner);
    if (d.empty() || !is_solid(d) || !is_well_composed(g, d.cells())) continue;
    if (dilate(g, d.cells(), Connectivity::Eight, 1).intersects(used)) continue;
    used |= d.cells();
    pieces.push_back(std::move(d));
  }
  return pieces;
}

std::pair<CellSet, CellSet> split_by_line(const Grid& g, const CellSet& s, double angle) {
  double cx = 0.0, cy = 0.0;
  s.for_each([&](int c) {
    cx += g.center(c).x;
    cy += g.center(c).y;
  });
  cx /= static_cast<double>(s.count());
  cy /= static_cast<double>(s.count());
  CellSet a(s.size()), b(s.size());
  s.for_each([&](int c) {
    const Point p = g.center(c);
    ((p.x - cx) * std::cos(angle) + (p.y - cy) * std::sin(angle) >= 0.0 ? a : b)
        .set(static_cast<std::size_t>(c));
  });
  return {a, b};
}

}  // namespace

AxiomReport check_solid_axioms(const SolidSetRule& rule, RegionSampler& sampler, std::size_t trials) {
  AxiomReport rep;
  const GridPtr& g = rule.grid;
  const auto& lam = rule.evaluator;
  for (std::size_t t = 0; t < trials; ++t) {
    // s1
    {
      const Region c = sampler.solid(Kind::Compact);
      const std::vector<Region> pieces = solid_pieces(c, sampler.rng());
      if (!pieces.empty()) {
        double sum = 0.0;
        for (const Region& p : pieces) sum += lam(p);
        std::vector<Region> wit = pieces;
        wit.push_back(c);
        rep.expect_leq("s1", sum, lam(c), value_tolerance(sum), std::move(wit));
      }
    }
    // s2: open solid, compact chain inside it
    {
      // Near the disk edge the compact twin of an open solid can have a
      // complement split at a staircase corner; redraw so the chain starts at U.
      Region u = sampler.solid(Kind::Open);
      for (int tries = 0; tries < 20 && !is_solid(u.with_kind(Kind::Compact)); ++tries) u = sampler.solid(Kind::Open);
      const double lu = lam(u);
      double best = -1.0;
      for (int j = 0; j <= 2; ++j) {
        const Region k = u.with_cells(erode(*g, u.cells(), Connectivity::Eight, j)).with_kind(Kind::Compact);
        if (k.empty() || !is_solid(k)) continue;
        const double lk = lam(k);
        rep.expect_leq("s2", lk, lu, value_tolerance(lu), {k, u}, {}, "compact inside open exceeds it");
        best = std::max(best, lk);
      }
      rep.expect_close("s2", best, lu, value_tolerance(lu), {u}, {}, "supremum over compact chain");
    }
    // s3: compact solid, open chain around it
    {
      const Region k = sampler.solid(Kind::Compact);
      const double lk = lam(k);
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j <= 2; ++j) {
        const Region u = k.with_cells(dilate(*g, k.cells(), Connectivity::Eight, j)).with_kind(Kind::Open);
        if (!g->window_is_space() && u.touches_frame()) continue;
        if (!is_solid(u)) continue;
        const double lu = lam(u);
        rep.expect_leq("s3", lk, lu, value_tolerance(lk), {k, u}, {}, "open around compact is smaller");
        best = std::min(best, lu);
      }
      rep.expect_close("s3", best, lk, value_tolerance(lk), {k}, {}, "infimum over open chain");
    }
    // s4
    if (g->window_is_space()) {
      Region k = sampler.solid(Kind::Compact);
      if (t % 4 == 0) {
        const double a = std::numbers::pi * static_cast<double>(t % 8) / 8.0;
        auto [left, right] = split_by_line(*g, g->domain(), a);
        (void)right;
        k = Region(g, left, Kind::Compact);
      }
      const Region u = complement(k);
      if (is_solid(k) && is_solid(u)) {
        const Region x = Region::full(g, Kind::Compact);
        const double lhs = lam(x), rhs = lam(k) + lam(u);
        rep.expect_close("s4", lhs, rhs, value_tolerance(lhs), {k, u});
      }
    }
  }
  return rep;
}

AxiomReport check_dtm_axioms(const Measure& m, const RegionFamily& family) {
  AxiomReport rep;
  for (const auto& [a, b] : family.separated) {
    if (a.kind() != b.kind()) continue;
    if (a.is_open() && !m.is_topological()) continue;
    const double lhs = m(union_of(a, b)), rhs = m(a) + m(b);
    rep.expect_close("TM1", lhs, rhs, value_tolerance(lhs), {a, b});
  }
  if (m.is_topological()) {
    for (const auto& [k, u] : family.complementary) {
      const double lhs = m(Region::full(m.grid(), Kind::Open)), rhs = m(k) + m(u);
      rep.expect_close("TM1", lhs, rhs, value_tolerance(lhs), {k, u}, {}, "complementary pair");
    }
  }
  for (const auto& [a, b] : family.nested) {
    const double va = m(a), vb = m(b);
    rep.expect_leq("monotonicity", va, vb, value_tolerance(vb), {a, b});
  }
  for (const auto& [pieces, container] : family.packed) {
    double sum = 0.0;
    for (const Region& p : pieces) sum += m(p);
    std::vector<Region> wit = pieces;
    wit.push_back(container);
    const double vc = m(container);
    rep.expect_leq("superadditivity", sum, vc, value_tolerance(vc), std::move(wit));
  }
  return rep;
}

std::optional<std::pair<Region, Region>> subadditivity_witness(
    const Measure& m, const std::vector<std::pair<Region, Region>>& compact_pairs) {
  for (const auto& [c, k] : compact_pairs) {
    const double lhs = m(union_of(c, k)), rhs = m(c) + m(k);
    if (lhs > rhs + value_tolerance(lhs)) return std::make_pair(c, k);
  }
  return std::nullopt;
}

std::vector<std::pair<Region, Region>> anchored_compact_pairs(const Measure& m) {
  std::vector<std::pair<Region, Region>> out;
  const GridPtr& g = m.grid();
  for (const CellSet& s : m.anchor_sets()) {
    if (s.count() < 2) continue;
    for (int k = 0; k < 4; ++k) {
      auto [a, b] = split_by_line(*g, s, std::numbers::pi * k / 4.0);
      if (a.none() || b.none()) continue;
      out.emplace_back(Region(g, a, Kind::Compact), Region(g, b, Kind::Compact));
    }
  }
  const auto& pts = m.anchors();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
      out.emplace_back(shapes::disk(g, pts[i], 0.6 * d), shapes::disk(g, pts[j], 0.6 * d));
    }
  return out;
}

}  // namespace tmkit
