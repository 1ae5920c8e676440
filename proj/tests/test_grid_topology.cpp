#include <gtest/gtest.h>

#include <cmath>
#include <queue>
#include <random>
#include <vector>

#include "test_common.hpp"
#include "tmkit/error.hpp"
#include "tmkit/sampling.hpp"
#include "tmkit/shapes.hpp"
#include "tmkit/topology.hpp"

using namespace tmkit;
using namespace tmkit::testing;

namespace {

// Plain flood fill over a bool mask, independent of the library's labelling.
struct Labels {
  std::vector<int> label;
  int count = 0;
  std::vector<bool> touches_frame;
};

Labels flood(const Grid& g, const CellSet& s, bool eight) {
  const int nx = g.nx(), ny = g.ny();
  Labels out;
  out.label.assign(g.cell_count(), -1);
  for (int start = 0; start < static_cast<int>(g.cell_count()); ++start) {
    if (!s.test(static_cast<std::size_t>(start)) || out.label[static_cast<std::size_t>(start)] >= 0) continue;
    const int id = out.count++;
    out.touches_frame.push_back(false);
    std::queue<int> q;
    q.push(start);
    out.label[static_cast<std::size_t>(start)] = id;
    while (!q.empty()) {
      const int c = q.front();
      q.pop();
      const int x = c % nx, y = c / nx;
      if (x == 0 || y == 0 || x == nx - 1 || y == ny - 1) out.touches_frame[static_cast<std::size_t>(id)] = true;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= nx || yy >= ny) continue;
          const int n = yy * nx + xx;
          if (!s.test(static_cast<std::size_t>(n)) || out.label[static_cast<std::size_t>(n)] >= 0) continue;
          out.label[static_cast<std::size_t>(n)] = id;
          q.push(n);
        }
    }
  }
  return out;
}

Region cells(const GridPtr& g, std::initializer_list<std::pair<int, int>> xy, Kind k = Kind::Compact) {
  std::vector<int> idx;
  for (auto [x, y] : xy) idx.push_back(g->index(x, y));
  return Region::from_indices(g, idx, k);
}

}  // namespace

// ---- grid basics ----

TEST(Grid, RejectsDegenerateSpecs) {
  EXPECT_THROW(Grid::make({0, 1, 0, 1, 3, 8, SpaceModel::Square}), Error);
  EXPECT_THROW(Grid::make({0, 1, 0, 1, 8, 2, SpaceModel::Square}), Error);
  EXPECT_THROW(Grid::make({1, 1, 0, 1, 8, 8, SpaceModel::Square}), Error);
  EXPECT_THROW(Grid::make({0, 1, 2, 1, 8, 8, SpaceModel::Square}), Error);
  try {
    Grid::make({0, 1, 0, 1, 2, 2, SpaceModel::Square});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "bad-grid");
  }
}

TEST(Grid, CellAtInvertsCenter) {
  auto g = plane_grid(61);
  for (int c = 0; c < static_cast<int>(g->cell_count()); c += 7) EXPECT_EQ(g->cell_at(g->center(c)), c);
  EXPECT_EQ(g->cell_at(-2.5, 0.0), -1);
  EXPECT_NEAR(g->spec().cell_area(), (6.0 / 61) * (6.0 / 61), 1e-15);
}

TEST(Grid, DiskDomainIsTheInscribedDisk) {
  auto g = disk_grid(40);
  g->domain().for_each([&](int c) {
    const Point p = g->center(c);
    EXPECT_LE(std::hypot(p.x, p.y), 1.0);
  });
  EXPECT_EQ(g->cell_at(0.95, 0.95), -1);
  EXPECT_LT(g->domain().count(), g->cell_count());
  // Cells outside the disk do not exist, so they never enter a region.
  const Region full = Region::full(g, Kind::Open);
  EXPECT_EQ(full.count(), g->domain().count());
  EXPECT_TRUE(complement(full).empty());
}

// ---- connected_components ----

TEST(Components, TwoDisjointDisksAreTwoBoundedComponents) {
  auto g = square_grid(64);
  const Region r = union_of(shapes::disk(g, {0.25, 0.25}, 0.15), shapes::disk(g, {0.7, 0.7}, 0.2));
  const auto d = connected_components(r);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_TRUE(d.bounded[0]);
  EXPECT_TRUE(d.bounded[1]);
  EXPECT_FALSE(is_connected(r));
}

TEST(Components, EmptyRegionHasNone) {
  for (Kind k : {Kind::Open, Kind::Compact}) {
    EXPECT_EQ(component_count(Region::empty(square_grid(), k)), 0u);
    EXPECT_EQ(connected_components(Region::empty(plane_grid(), k)).size(), 0u);
  }
}

TEST(Components, AnnulusComplementInThePlaneMatchesFloodFill) {
  auto g = Grid::make({-1.0, 1.0, -1.0, 1.0, 64, 64, SpaceModel::Plane});
  const Region ring = shapes::annulus(g, {0.0, 0.0}, 0.3, 0.55);
  const Region outside = complement(ring);
  ASSERT_TRUE(outside.is_open());
  const auto d = connected_components(outside);
  ASSERT_EQ(d.size(), 2u);

  const Labels oracle = flood(*g, outside.cells(), false);
  ASSERT_EQ(oracle.count, 2);
  int bounded = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    bounded += d.bounded[i];
    // Each library component is exactly one oracle label.
    const int first = static_cast<int>(d.components[i].cells().first());
    const int id = oracle.label[static_cast<std::size_t>(first)];
    std::size_t same = 0;
    for (int l : oracle.label) same += l == id;
    EXPECT_EQ(d.components[i].count(), same);
    d.components[i].cells().for_each([&](int c) { EXPECT_EQ(oracle.label[static_cast<std::size_t>(c)], id); });
    EXPECT_EQ(d.bounded[i], !oracle.touches_frame[static_cast<std::size_t>(id)]);
  }
  EXPECT_EQ(bounded, 1);
  // The bounded one is the hole around the origin.
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.bounded[i]) EXPECT_TRUE(d.components[i].contains(g->cell_at(0.0, 0.0)));
}

TEST(Components, DiagonalCellsDependOnKind) {
  auto g = square_grid(8);
  const Region diag = cells(g, {{2, 2}, {3, 3}});
  EXPECT_EQ(component_count(diag), 1u);
  EXPECT_EQ(component_count(diag.with_kind(Kind::Open)), 2u);
}

TEST(Components, RandomRegionsMatchFloodFillAndPartition) {
  for (auto g : {square_grid(48), plane_grid(60), disk_grid(48)}) {
    RegionSampler s(g, 21);
    for (int i = 0; i < 40; ++i) {
      const Kind k = i % 2 ? Kind::Open : Kind::Compact;
      const Region r = i % 3 == 0 ? complement(s.region(flip(k))) : s.region(k);
      const auto d = connected_components(r);
      const Labels oracle = flood(*g, r.cells(), r.is_compact());
      EXPECT_EQ(static_cast<int>(d.size()), oracle.count);
      CellSet all(g->cell_count());
      for (std::size_t j = 0; j < d.size(); ++j) {
        EXPECT_FALSE(all.intersects(d.components[j].cells()));
        all |= d.components[j].cells();
        EXPECT_EQ(d.components[j].kind(), r.kind());
        EXPECT_TRUE(is_connected(d.components[j]));
        if (g->window_is_space()) EXPECT_TRUE(d.bounded[j]);
        else EXPECT_EQ(d.bounded[j], !d.components[j].touches_frame());
      }
      EXPECT_EQ(all, r.cells());
    }
  }
}

// ---- is_solid ----

TEST(Solid, DiskIsSolid) {
  EXPECT_TRUE(is_solid(shapes::disk(square_grid(), {0.5, 0.5}, 0.3)));
  EXPECT_TRUE(is_solid(shapes::disk(plane_grid(), {1.0, 0.0}, 1.0, Kind::Open)));
}

TEST(Solid, AnnulusIsNotSolid) {
  EXPECT_FALSE(is_solid(shapes::annulus(square_grid(), {0.5, 0.5}, 0.15, 0.35)));
  EXPECT_FALSE(is_solid(shapes::annulus(plane_grid(), {1.0, 0.0}, 0.8, 1.5)));
}

TEST(Solid, TwoDisjointSquaresAreNotSolid) {
  auto g = square_grid();
  EXPECT_FALSE(is_solid(union_of(shapes::square(g, {0.25, 0.25}, 0.2), shapes::square(g, {0.75, 0.75}, 0.2))));
}

TEST(Solid, EmptyIsNotSolidAndFullSpaceIs) {
  auto g = square_grid();
  EXPECT_FALSE(is_solid(Region::empty(g, Kind::Compact)));
  // X itself: connected, empty complement.
  EXPECT_TRUE(is_solid(Region::full(g, Kind::Compact)));
}

TEST(Solid, SolidImpliesConnected) {
  for (auto g : {square_grid(40), plane_grid(60), disk_grid(40)}) {
    RegionSampler s(g, 5);
    int solids = 0;
    for (int i = 0; i < 60; ++i) {
      const Region r = i % 4 == 0 ? s.solid(Kind::Compact) : s.region(i % 2 ? Kind::Open : Kind::Compact);
      if (is_solid(r)) {
        ++solids;
        EXPECT_TRUE(is_connected(r));
      }
    }
    EXPECT_GT(solids, 0);
  }
}

// ---- complement ----

TEST(Complement, OfEmptyCompactIsFullOpen) {
  for (auto g : {square_grid(), plane_grid(), disk_grid()}) {
    const Region c = complement(Region::empty(g, Kind::Compact));
    EXPECT_TRUE(c.is_open());
    EXPECT_TRUE(c.is_full());
  }
}

TEST(Complement, PlaneComplementOfCompactIncludesFrame) {
  auto g = plane_grid();
  const Region c = complement(shapes::disk(g, {1.0, 0.0}, 1.0));
  EXPECT_TRUE(c.is_open());
  EXPECT_TRUE(g->frame().subset_of(c.cells()));
}

TEST(Complement, IsAnInvolution) {
  for (auto g : {square_grid(), plane_grid(), disk_grid()}) {
    RegionSampler s(g, 9);
    for (int i = 0; i < 30; ++i) {
      const Region r = s.region(i % 2 ? Kind::Open : Kind::Compact);
      const Region cc = complement(complement(r));
      EXPECT_EQ(cc.cells(), r.cells());
      EXPECT_EQ(cc.kind(), r.kind());
      EXPECT_TRUE(disjoint(r, complement(r)));
    }
  }
}

TEST(Complement, LeftHalfGivesRightHalf) {
  auto g = square_grid(32);
  const Region left = shapes::rect(g, 0.0, 0.0, 0.5, 1.0, Kind::Compact);
  const Region right = shapes::rect(g, 0.5, 0.0, 1.0, 1.0, Kind::Open);
  EXPECT_EQ(left.count(), g->cell_count() / 2);
  EXPECT_EQ(complement(left), right);
}

// ---- superlevel_set ----

TEST(Superlevel, ZeroFunction) {
  auto g = square_grid();
  const SampledFunction zero(g, 0.0);
  const Region s = superlevel_set(zero, 0.0, true);
  EXPECT_TRUE(s.empty());
  EXPECT_TRUE(s.is_open());
  const Region n = superlevel_set(zero, 0.0, false);
  EXPECT_TRUE(n.is_full());
  EXPECT_TRUE(n.is_compact());
}

TEST(Superlevel, ConeCutIsTheHalfRadiusDisk) {
  auto g = plane_grid(96);
  const Point c{1.0, 0.0};
  const SampledFunction cone = SampledFunction::from_expression(
      g, [&](Point p) { return std::max(0.0, 1.0 - std::hypot(p.x - c.x, p.y - c.y)); });
  const Region s = superlevel_set(cone, 0.5, true);
  EXPECT_TRUE(s.is_open());
  const double h = g->spec().pitch();
  // Per-cell predicate oracle, up to one cell at the boundary.
  EXPECT_TRUE(shapes::disk(g, c, 0.5 - h, Kind::Open).cells().subset_of(s.cells()));
  EXPECT_TRUE(s.cells().subset_of(shapes::disk(g, c, 0.5 + h, Kind::Open).cells()));
  g->domain().for_each([&](int i) {
    const Point p = g->center(i);
    const double d = std::hypot(p.x - c.x, p.y - c.y);
    if (std::abs(d - 0.5) > 1e-9) EXPECT_EQ(s.contains(i), d < 0.5);
  });
  EXPECT_TRUE(is_solid(s));
}

TEST(Superlevel, LevelSetsAreMonotone) {
  auto g = square_grid(40);
  FunctionSampler fs(g, 17);
  for (int i = 0; i < 10; ++i) {
    const SampledFunction f = fs.signed_function();
    const double lo = f.min(), hi = f.max();
    for (int k = 0; k < 10; ++k) {
      const double t1 = lo + (hi - lo) * k / 10.0, t2 = t1 + (hi - lo) / 13.0;
      for (bool strict : {true, false})
        EXPECT_TRUE(superlevel_set(f, t2, strict).cells().subset_of(superlevel_set(f, t1, strict).cells()));
      EXPECT_TRUE(superlevel_set(f, t1, true).cells().subset_of(superlevel_set(f, t1, false).cells()));
    }
  }
}

// ---- diameter ----

TEST(Diameter, SingleCellIsZero) {
  auto g = square_grid();
  EXPECT_EQ(diameter(cells(g, {{5, 7}})), 0.0);
}

TEST(Diameter, ThreeFourFive) {
  // Unit pitch with cell (0, 0) centred at the origin.
  auto g = Grid::make({-0.5, 9.5, -0.5, 9.5, 10, 10, SpaceModel::Square});
  EXPECT_DOUBLE_EQ(diameter(cells(g, {{0, 0}, {3, 4}})), 5.0);
}

TEST(Diameter, SquareDiagonal) {
  // Centres inside a closed interval of length s span (s - 2h, s], so the
  // diagonal of the rasterized square falls short of s * sqrt(2) by less
  // than 2h * sqrt(2) and never exceeds it.
  auto g = plane_grid(120);
  const double h = g->spec().pitch();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> side(0.2, 2.0), shift(-0.1, 0.1);
  for (int i = 0; i < 40; ++i) {
    const double s = side(rng);
    const Region sq = shapes::square(g, {1.0 + shift(rng), shift(rng)}, s);
    const double d = diameter(sq);
    EXPECT_LE(d, s * std::sqrt(2.0) + 1e-12);
    EXPECT_GT(d, (s - 2.0 * h) * std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(d, diameter_bruteforce(sq));
  }
}

TEST(Diameter, MatchesBruteforceOnRandomRegions) {
  auto g = square_grid(40);
  RegionSampler s(g, 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    Region r = s.region(Kind::Compact);
    if (i % 5 == 0) {
      // Scattered cells exercise the hull path on non-convex sets.
      CellSet scatter(g->cell_count());
      for (int k = 0; k < 25; ++k) scatter.set(rng() % g->cell_count());
      r = r.with_cells(scatter);
    }
    EXPECT_NEAR(diameter(r), diameter_bruteforce(r), 1e-12);
  }
}

TEST(Diameter, EmptyRegionThrows) {
  try {
    diameter(Region::empty(square_grid(), Kind::Compact));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "empty-region");
  }
}

// ---- disjoint / separated ----

TEST(Disjoint, RegionAndComplement) {
  auto g = square_grid();
  const Region r = shapes::disk(g, {0.4, 0.6}, 0.25);
  EXPECT_TRUE(disjoint(r, complement(r)));
  EXPECT_FALSE(separated(r, complement(r)));
}

TEST(Disjoint, OverlappingDisks) {
  auto g = square_grid();
  EXPECT_FALSE(disjoint(shapes::disk(g, {0.4, 0.5}, 0.2), shapes::disk(g, {0.6, 0.5}, 0.2)));
}

TEST(Disjoint, TangentClosedBallsShareTheTangencyCell) {
  // 61 cells over [-2, 4] put a cell centre exactly on the tangency point (1, 0).
  auto g = plane_grid(61);
  const int t = g->cell_at(1.0, 0.0);
  ASSERT_NEAR(g->center(t).x, 1.0, 1e-12);
  ASSERT_NEAR(g->center(t).y, 0.0, 1e-12);
  const Region k1 = shapes::disk(g, {0.0, 0.0}, 1.0);
  const Region k2 = shapes::disk(g, {2.0, 0.0}, 1.0);
  EXPECT_TRUE(k1.contains(t));
  EXPECT_TRUE(k2.contains(t));
  EXPECT_FALSE(disjoint(k1, k2));
  const Region c = union_of(k1, k2);
  EXPECT_TRUE(is_connected(c));
  EXPECT_TRUE(is_solid(c));
  EXPECT_TRUE(is_solid(k1));
}

TEST(Disjoint, TangentBallsOnAnEvenGridStillFormOneCompact) {
  // No cell centre on the tangency point: the disks are adjacent, not sharing.
  auto g = plane_grid(400);
  const Region k1 = shapes::disk(g, {0.0, 0.0}, 1.0);
  const Region k2 = shapes::disk(g, {2.0, 0.0}, 1.0);
  EXPECT_TRUE(disjoint(k1, k2));
  EXPECT_FALSE(separated(k1, k2));
  EXPECT_TRUE(is_solid(union_of(k1, k2)));
}

TEST(Disjoint, SeparatedPairs) {
  auto g = square_grid(16);
  const Region a = cells(g, {{3, 3}});
  const Region diag = cells(g, {{4, 4}});
  EXPECT_TRUE(disjoint(a, diag));
  EXPECT_FALSE(separated(a, diag));
  // Two open cells touching at a corner are separated under 4-connectivity.
  EXPECT_TRUE(separated(a.with_kind(Kind::Open), diag.with_kind(Kind::Open)));
  EXPECT_TRUE(separated(a, cells(g, {{5, 3}})));
  RegionSampler s(g, 1);
  for (int i = 0; i < 10; ++i) {
    auto [x, y] = s.separated_pair(Kind::Compact, Kind::Compact);
    EXPECT_TRUE(separated(x, y));
    EXPECT_EQ(component_count(union_of(x, y)), component_count(x) + component_count(y));
  }
}

// ---- Jordan sanity ----

TEST(Jordan, ThickRingSplitsThePlaneInTwo) {
  auto g = plane_grid(96);
  const double h = g->spec().pitch();
  for (double r : {0.6, 1.0, 1.7}) {
    const Region ring = shapes::annulus(g, {1.0, 0.0}, r, r + 3.0 * h);
    ASSERT_TRUE(is_connected(ring));
    const auto d = connected_components(complement(ring));
    ASSERT_EQ(d.size(), 2u) << r;
    EXPECT_NE(d.bounded[0], d.bounded[1]);
  }
}

TEST(Jordan, SupercoverRingSeparatesUnderBothConnectivities) {
  auto g = plane_grid(96);
  for (Kind k : {Kind::Compact, Kind::Open}) {
    const Region ring = shapes::circle_ring(g, {1.0, 0.0}, 1.2, k);
    EXPECT_TRUE(is_connected(ring));
    EXPECT_EQ(component_count(complement(ring)), 2u);
  }
}

// ---- morphology helpers ----

TEST(Morphology, DilateErodeAreDualOnTheInterior) {
  auto g = square_grid(32);
  const Region r = shapes::disk(g, {0.5, 0.5}, 0.25);
  const CellSet d = dilate(*g, r.cells(), Connectivity::Eight);
  const CellSet e = erode(*g, d, Connectivity::Eight);
  EXPECT_TRUE(r.cells().subset_of(e));
  EXPECT_TRUE(erode(*g, r.cells(), Connectivity::Four).subset_of(r.cells()));
  const auto dist = chessboard_distance(*g, r.cells(), 100);
  g->domain().for_each([&](int c) { EXPECT_EQ(d.test(static_cast<std::size_t>(c)), dist[static_cast<std::size_t>(c)] <= 1); });
}
