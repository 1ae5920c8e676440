#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_common.hpp"
#include "tmkit/error.hpp"
#include "tmkit/measure.hpp"
#include "tmkit/measure_checks.hpp"
#include "tmkit/sampling.hpp"
#include "tmkit/shapes.hpp"
#include "tmkit/topology.hpp"

using namespace tmkit;
using namespace tmkit::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Relative tolerance for area-type values: one boundary ring of cells.
double area_tol(const Grid& g) { return 4.0 / std::min(g.nx(), g.ny()); }

double cell_sum(const Region& r) { return static_cast<double>(r.count()) * r.grid()->spec().cell_area(); }

// Three points for n = 1 and a cover of the unit square by three solid
// rectangles holding one point each.
const std::vector<Point> kThree = {{0.2, 0.5}, {0.5, 0.8}, {0.8, 0.2}};

std::vector<Region> three_piece_cover(const GridPtr& g) {
  return {shapes::rect(g, 0.0, 0.0, 0.35, 1.0), shapes::rect(g, 0.3, 0.5, 1.0, 1.0),
          shapes::rect(g, 0.3, 0.0, 1.0, 0.55)};
}

}  // namespace

// ---- two-point measure ----

TEST(TwoPoint, RuleValues) {
  // Wide enough window that the radius-3 ball stays off the frame.
  auto g = Grid::make({-4.0, 6.0, -5.0, 5.0, 200, 200, SpaceModel::Plane});
  const Point p1{0.0, 0.0}, p2{2.0, 0.0};
  const SolidSetRule rule = catalog::two_point_rule(g, p1, p2);
  const Measure nu = catalog::two_point(g, p1, p2);

  const Region away = shapes::disk(g, {1.0, 3.0}, 0.8);
  EXPECT_EQ(rule.evaluator(away), 0.0);
  EXPECT_EQ(nu(away), 0.0);

  const Region k1 = shapes::disk(g, p1, 1.0);
  EXPECT_NEAR(nu(k1), kPi, kPi * area_tol(*g));
  EXPECT_DOUBLE_EQ(nu(k1), cell_sum(k1));

  const Region big = shapes::disk(g, {1.0, 0.0}, 3.0);
  ASSERT_TRUE(is_solid(big));
  EXPECT_NEAR(nu(big), 2.0 * cell_sum(big), 1e-9);
  EXPECT_NEAR(nu(big), 18.0 * kPi, 18.0 * kPi * area_tol(*g));
}

TEST(TwoPoint, TangentBallsAndTheirUnion) {
  auto g = plane_grid(200);
  const Measure nu = catalog::two_point(g, {0.0, 0.0}, {2.0, 0.0});
  const Region k1 = shapes::disk(g, {0.0, 0.0}, 1.0);
  const Region k2 = shapes::disk(g, {2.0, 0.0}, 1.0);
  const Region c = union_of(k1, k2);
  const double tol = area_tol(*g);
  EXPECT_NEAR(nu(k1), kPi, kPi * tol);
  EXPECT_NEAR(nu(k2), kPi, kPi * tol);
  EXPECT_NEAR(nu(c), 4.0 * kPi, 4.0 * kPi * tol);

  const auto w = subadditivity_witness(nu, {{k1, k2}});
  ASSERT_TRUE(w.has_value());
  EXPECT_GT(nu(union_of(w->first, w->second)), nu(w->first) + nu(w->second));
}

TEST(TwoPoint, SolidAxiomsHold) {
  auto g = plane_grid(60);
  RegionSampler s(g, 7);
  const AxiomReport rep = check_solid_axioms(catalog::two_point_rule(g, {0.0, 0.0}, {2.0, 0.0}), s, 200);
  EXPECT_TRUE(rep.ok()) << rep.violations.front().axiom;
  EXPECT_GE(rep.checked, 200u);
}

TEST(TwoPoint, Tm1OnCompactPairs) {
  auto g = plane_grid(60);
  RegionSampler s(g, 8);
  const Measure nu = catalog::two_point(g, {0.0, 0.0}, {2.0, 0.0});
  const AxiomReport rep = check_dtm_axioms(nu, sample_family(s, 60, true));
  EXPECT_EQ(rep.count("TM1"), 0u);
  EXPECT_TRUE(rep.ok());
}

// ---- odd point counting ----

TEST(OddPoints, OnePointPiecesCoverTheSquare) {
  auto g = square_grid(60);
  const Measure nu = catalog::odd_points(g, kThree);
  CellSet covered(g->cell_count());
  for (const Region& a : three_piece_cover(g)) {
    ASSERT_TRUE(is_solid(a));
    int held = 0;
    for (Point p : kThree) held += a.contains(g->cell_at(p));
    EXPECT_EQ(held, 1);
    EXPECT_EQ(nu(a), 0.0);
    covered |= a.cells();
  }
  EXPECT_EQ(covered, g->domain());
  EXPECT_EQ(nu(Region::full(g, Kind::Compact)), 1.0);
  EXPECT_EQ(nu.total_mass(), 1.0);
}

TEST(OddPoints, ThreeOfFiveIsOneHalf) {
  auto g = square_grid(60);
  const std::vector<Point> five = {{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.15}, {0.8, 0.8}, {0.9, 0.6}};
  const Measure nu = catalog::odd_points(g, five);
  const Region a = shapes::rect(g, 0.0, 0.0, 0.45, 0.45);
  ASSERT_TRUE(is_solid(a));
  EXPECT_DOUBLE_EQ(nu(a), 0.5);
  EXPECT_DOUBLE_EQ(nu(shapes::rect(g, 0.0, 0.0, 0.25, 0.25)), 0.5);
  EXPECT_DOUBLE_EQ(nu(shapes::rect(g, 0.0, 0.0, 0.15, 0.15)), 0.0);
  EXPECT_DOUBLE_EQ(nu(Region::full(g, Kind::Open)), 1.0);
}

// ---- Aarnes circle measure ----

TEST(Aarnes, RuleValuesOnTheDisk) {
  auto g = disk_grid(64);
  const Point p{0.3, 0.2};
  const Measure mu = catalog::aarnes_circle(g, p, 0.0);
  EXPECT_TRUE(mu.is_simple());
  EXPECT_TRUE(mu.is_topological());
  EXPECT_EQ(mu(Region::full(g, Kind::Compact)), 1.0);
  EXPECT_EQ(mu(shapes::disk(g, p, 0.1)), 0.0);
  // The half-disk x >= 0 holds p and an arc of the boundary circle.
  const Region half = shapes::from_predicate(g, [](Point q) { return q.x >= 0.0; }, Kind::Compact);
  ASSERT_TRUE(is_solid(half));
  EXPECT_EQ(mu(half), 1.0);
  const Region other = shapes::from_predicate(g, [](Point q) { return q.x <= -0.05; }, Kind::Compact);
  EXPECT_EQ(mu(other), 0.0);
  EXPECT_EQ(mu(Region::full(g, Kind::Compact).with_cells(g->boundary())), 1.0);
}

TEST(Aarnes, ThreePiecePartitionSumsToZero) {
  auto g = disk_grid(96);
  const Measure mu = catalog::aarnes_circle(g, {0.3, 0.2}, 0.0);
  const Region a1 = shapes::boundary_arc(g, 0.0, 2.0);
  const Region a2 = shapes::boundary_arc(g, 2.0, 2.0 * kPi);
  const Region b = union_of(a1, a2);
  const Region a3 = complement(b);
  EXPECT_EQ(b.cells(), g->boundary());
  EXPECT_TRUE(a3.is_open());
  EXPECT_EQ(mu(a1) + mu(a2) + mu(a3), 0.0);
  EXPECT_EQ(mu(Region::full(g, Kind::Open)), 1.0);

  const auto w = subadditivity_witness(mu, {{a1, a2}});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(mu(b), 1.0);
}

TEST(Aarnes, SolidAxiomsHold) {
  auto g = disk_grid(48);
  RegionSampler s(g, 4);
  const AxiomReport rep = check_solid_axioms(catalog::aarnes_circle_rule(g, {0.3, 0.2}, 0.0), s, 100);
  for (const Violation& v : rep.violations) ADD_FAILURE() << v.axiom << " " << v.lhs << " " << v.rhs << " " << v.note;
  EXPECT_GT(rep.checked, 0u);
}

TEST(Aarnes, PlaneVariantUsesTheSmallCircle) {
  auto g = plane_grid(96);
  const Point p{1.0, 0.0};
  const Measure mu = catalog::aarnes_circle(g, p, 0.5);
  EXPECT_EQ(mu(shapes::disk(g, p, 0.8)), 1.0);
  EXPECT_EQ(mu(shapes::disk(g, p, 0.2)), 0.0);
  EXPECT_EQ(mu(shapes::disk(g, {-1.0, 0.0}, 0.5)), 0.0);
}

// ---- blob deficient measure ----

TEST(Blob, ContainmentRule) {
  auto g = square_grid(64);
  const Region d = shapes::disk(g, {0.5, 0.5}, 0.15);
  const Measure nu = catalog::blob_dtm(g, d);
  EXPECT_TRUE(nu.is_deficient_only());
  EXPECT_FALSE(nu.is_topological());
  EXPECT_EQ(nu(shapes::disk(g, {0.5, 0.5}, 0.3)), 1.0);
  EXPECT_EQ(nu(shapes::disk(g, {0.1, 0.1}, 0.05)), 0.0);

  // Open halves of D: each misses part of D, together they cover it.
  const Region left = shapes::from_predicate(g, [](Point q) { return q.x < 0.5 + 1e-9; }, Kind::Open);
  const Region right = complement(left).with_kind(Kind::Open);
  const Region a1 = intersection_of(left, shapes::disk(g, {0.5, 0.5}, 0.2, Kind::Open));
  const Region a2 = intersection_of(right, shapes::disk(g, {0.5, 0.5}, 0.2, Kind::Open));
  ASSERT_TRUE(disjoint(a1, a2));
  EXPECT_EQ(nu(a1) + nu(a2), 0.0);
  EXPECT_EQ(nu(union_of(a1, a2)), 1.0);
}

TEST(Blob, DeficientAxiomsHold) {
  auto g = square_grid(40);
  RegionSampler s(g, 12);
  const Measure nu = catalog::blob_dtm(g, shapes::disk(g, {0.5, 0.5}, 0.1));
  EXPECT_TRUE(check_dtm_axioms(nu, sample_family(s, 50, true)).ok());
}

// ---- Lebesgue and point masses ----

TEST(Lebesgue, NormalizedAndAdditive) {
  auto g = square_grid(50);
  const Measure leb = catalog::lebesgue(g);
  EXPECT_NEAR(leb(Region::full(g, Kind::Compact)), 1.0, 1e-12);
  RegionSampler s(g, 2);
  for (int i = 0; i < 30; ++i) {
    auto [a, b] = s.separated_pair(Kind::Compact, Kind::Compact);
    EXPECT_EQ(union_of(a, b).count(), a.count() + b.count());
    EXPECT_DOUBLE_EQ(leb(union_of(a, b)), leb(a) + leb(b));
  }
  EXPECT_TRUE(check_dtm_axioms(leb, sample_family(s, 40)).ok());
  EXPECT_FALSE(subadditivity_witness(leb, sample_family(s, 40).compact_pairs).has_value());
}

TEST(PointMass, MembershipOfTheCell) {
  auto g = square_grid(40);
  const Point x{0.31, 0.77};
  const Measure d = catalog::point_mass(g, x);
  EXPECT_TRUE(d.is_simple());
  RegionSampler s(g, 3);
  for (int i = 0; i < 50; ++i) {
    const Region r = s.region(i % 2 ? Kind::Open : Kind::Compact);
    EXPECT_EQ(d(r), r.contains(g->cell_at(x)) ? 1.0 : 0.0);
  }
}

TEST(PointMass, RuleExtensionIsTheDirac) {
  auto g = square_grid(32);
  const Point x{0.4, 0.6};
  const int cx = g->cell_at(x);
  const SolidSetRule rule{"delta", g, 1.0, [cx](const Region& a) { return a.contains(cx) ? 1.0 : 0.0; }};
  const Measure ext = extend_to_measure(rule, {true, true, false});
  const Measure d = catalog::point_mass(g, x);
  RegionSampler s(g, 6);
  for (int i = 0; i < 60; ++i) {
    const Region r = s.region(i % 2 ? Kind::Open : Kind::Compact);
    EXPECT_EQ(ext(r), d(r));
  }
}

// ---- rule checks ----

TEST(SolidAxioms, SquaredAreaBreaksPartitionAdditivity) {
  auto g = square_grid(32);
  const SolidSetRule sq{"area^2", g, 1.0, [](const Region& a) {
                          const double l = cell_sum(a);
                          return l * l;
                        }};
  RegionSampler s(g, 1);
  const AxiomReport rep = check_solid_axioms(sq, s, 20);
  ASSERT_GT(rep.count("s4"), 0u);
  const Violation* v = rep.first("s4");
  EXPECT_NEAR(v->lhs, 1.0, 1e-12);
  EXPECT_LT(v->rhs, 1.0);

  // The hand-checkable case: two half squares give 1/4 + 1/4.
  const Region left = shapes::rect(g, 0.0, 0.0, 0.5, 1.0);
  const Region right = complement(left);
  ASSERT_TRUE(is_solid(left) && is_solid(right));
  EXPECT_DOUBLE_EQ(sq.evaluator(left) + sq.evaluator(right), 0.5);
}

TEST(DtmAxioms, CorruptedEvaluatorGivesOneMonotonicityViolation) {
  auto g = square_grid(32);
  const Measure leb = catalog::lebesgue(g);
  const Region a = shapes::disk(g, {0.5, 0.5}, 0.2);
  CellSet grown = a.cells();
  grown.set(static_cast<std::size_t>(g->index(2, 2)));
  const Region b = a.with_cells(grown);
  const Measure bad(g, {"corrupted", {true, false, false}, 1.0}, [leb, a](const Region& r) {
    return leb(r) + (r == a ? 0.1 : 0.0);
  });
  RegionSampler s(g, 10);
  RegionFamily fam = sample_family(s, 40);
  fam.nested.emplace_back(a, b);
  const AxiomReport clean = check_dtm_axioms(leb, fam);
  EXPECT_TRUE(clean.ok());
  const AxiomReport rep = check_dtm_axioms(bad, fam);
  EXPECT_EQ(rep.count("monotonicity"), 1u);
  const Violation* v = rep.first("monotonicity");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->regions.front(), a);
}

// ---- extension agrees with the rule ----

TEST(Extension, AgreesWithRuleOnSolids) {
  auto sq = square_grid(40);
  auto pl = plane_grid(60);
  auto dk = disk_grid(40);
  const std::vector<SolidSetRule> rules = {
      catalog::odd_points_rule(sq, kThree),
      catalog::two_point_rule(pl, {0.0, 0.0}, {2.0, 0.0}),
      catalog::aarnes_circle_rule(dk, {0.3, 0.2}, 0.0),
  };
  for (const SolidSetRule& rule : rules) {
    const Measure m = extend_to_measure(rule);
    RegionSampler s(rule.grid, 31);
    for (int i = 0; i < 60; ++i) {
      const Region r = s.solid(i % 2 ? Kind::Open : Kind::Compact);
      ASSERT_TRUE(is_solid(r));
      EXPECT_EQ(m(r), rule.evaluator(r)) << rule.name;
    }
  }
}

TEST(Extension, PlaneUnboundedNonSolidIsNonFinite) {
  auto g = plane_grid(60);
  const Measure nu = catalog::two_point(g, {0.0, 0.0}, {2.0, 0.0});
  const Region ring = shapes::annulus(g, {1.0, 0.0}, 0.5, 1.0);
  try {
    nu(complement(union_of(ring, shapes::disk(g, {-1.0, 2.0}, 0.3))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "non-finite");
  }
}

// ---- invariants over the catalog ----

namespace {

struct Case {
  Measure m;
  RegionSampler sampler;
};

std::vector<Case> catalog_cases() {
  auto sq = square_grid(36);
  auto pl = plane_grid(48);
  auto dk = disk_grid(40);
  std::vector<Case> out;
  out.push_back({catalog::lebesgue(sq), RegionSampler(sq, 1)});
  out.push_back({catalog::point_mass(sq, {0.45, 0.55}), RegionSampler(sq, 2)});
  out.push_back({catalog::odd_points(sq, kThree), RegionSampler(sq, 3)});
  out.push_back({catalog::two_point(pl, {0.0, 0.0}, {2.0, 0.0}), RegionSampler(pl, 4)});
  out.push_back({catalog::aarnes_circle(dk, {0.3, 0.2}, 0.0), RegionSampler(dk, 5)});
  out.push_back({catalog::blob_dtm(sq, shapes::disk(sq, {0.5, 0.5}, 0.12)), RegionSampler(sq, 6)});
  return out;
}

}  // namespace

TEST(Invariants, MonotoneAndSuperadditiveOverTheCatalog) {
  for (Case& c : catalog_cases()) {
    const bool deficient = c.m.is_deficient_only();
    const RegionFamily fam = sample_family(c.sampler, 500, deficient);
    ASSERT_GE(fam.nested.size(), 500u);
    ASSERT_GE(fam.packed.size(), 200u);
    std::size_t nested = 0, packed = 0;
    for (const auto& [a, b] : fam.nested) {
      EXPECT_LE(c.m(a), c.m(b) + value_tolerance(c.m(b))) << c.m.name();
      ++nested;
    }
    for (const auto& [pieces, container] : fam.packed) {
      double sum = 0.0;
      for (const Region& p : pieces) sum += c.m(p);
      EXPECT_LE(sum, c.m(container) + value_tolerance(sum)) << c.m.name();
      ++packed;
    }
    EXPECT_GE(nested, 500u);
    EXPECT_GE(packed, 200u);
  }
}

TEST(Invariants, Tm1ExactOnDisjointCompactPairs) {
  for (Case& c : catalog_cases()) {
    for (int i = 0; i < 60; ++i) {
      auto [a, b] = c.sampler.separated_pair(Kind::Compact, Kind::Compact);
      EXPECT_NEAR(c.m(union_of(a, b)), c.m(a) + c.m(b), 1e-9) << c.m.name();
    }
  }
}

TEST(Invariants, SimpleComplementLaw) {
  for (Case& c : catalog_cases()) {
    if (!c.m.is_simple()) continue;
    const GridPtr& g = c.m.grid();
    if (!g->window_is_space()) continue;
    int hits = 0;
    for (int i = 0; i < 80; ++i) {
      const Region a = i % 3 == 0 ? Region::full(g, Kind::Compact) : c.sampler.region(i % 2 ? Kind::Open : Kind::Compact);
      const double v = c.m(a);
      EXPECT_TRUE(v == 0.0 || v == 1.0);
      if (v == 1.0) {
        ++hits;
        EXPECT_EQ(c.m(complement(a)), 0.0) << c.m.name();
      }
    }
    EXPECT_GT(hits, 0);
  }
}

TEST(Invariants, SimpleMeasureCarryingAPointIsThatPointMass) {
  auto g = square_grid(36);
  RegionSampler s(g, 40);
  for (const Measure& m : {catalog::point_mass(g, {0.45, 0.55}), catalog::aarnes_circle(disk_grid(40), {0.3, 0.2}, 0.0),
                           catalog::blob_dtm(g, shapes::disk(g, {0.5, 0.5}, 0.12))}) {
    const GridPtr& mg = m.grid();
    // Singleton scan: is there a cell x with nu({x}) = 1?
    int carrier = -1;
    mg->domain().for_each([&](int c) {
      if (carrier < 0 && m(Region::from_indices(mg, {c}, Kind::Compact)) == 1.0) carrier = c;
    });
    if (carrier < 0) continue;
    const Measure d = catalog::point_mass_cell(mg, carrier);
    RegionSampler rs(mg, 41);
    for (int i = 0; i < 60; ++i) {
      const Region r = rs.region(i % 2 ? Kind::Open : Kind::Compact);
      EXPECT_EQ(m(r), d(r)) << m.name();
    }
  }
}
