#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tmkit/grid.hpp"
#include "tmkit/sampled_function.hpp"

namespace tmkit {

/// Seeded generator of test regions. On plane grids every shape keeps at
/// least `margin` cells away from the frame. Regions are rejected and
/// redrawn until they are well-composed, so their 4- and 8-connected
/// structure agree.
class RegionSampler {
 public:
  RegionSampler(GridPtr grid, std::uint64_t seed, int margin = 3);

  const GridPtr& grid() const noexcept { return grid_; }
  std::mt19937_64& rng() noexcept { return rng_; }

  Point point();
  /// A disk or rectangle that is solid in the grid's space.
  Region solid(Kind kind);
  /// A union of one to three disks, rectangles or annuli (may be non-solid).
  Region region(Kind kind);
  /// (A, B) with A a subset of B, both of `kind`.
  std::pair<Region, Region> nested(Kind kind);
  /// Separated (A, B): disjoint and not adjacent.
  std::pair<Region, Region> separated_pair(Kind ka, Kind kb);
  /// (K, X - K) for a compact solid K. Window-is-space grids.
  std::pair<Region, Region> complementary();

 private:
  Region random_shape(Kind kind);
  bool acceptable(const Region& r) const;

  GridPtr grid_;
  std::mt19937_64 rng_;
  int margin_;
};

struct RegionFamily {
  /// first is a subset of second, same kind.
  std::vector<std::pair<Region, Region>> nested;
  std::vector<std::pair<Region, Region>> separated;
  /// (K, X - K); empty on plane grids.
  std::vector<std::pair<Region, Region>> complementary;
  /// Pairwise separated pieces inside a container.
  std::vector<std::pair<std::vector<Region>, Region>> packed;
  /// Compact pairs, possibly overlapping.
  std::vector<std::pair<Region, Region>> compact_pairs;
  std::vector<Region> singles;
};

/// `trials` configurations of each shape. With compact_only, separated
/// pairs and packed pieces are compact (the deficient setting).
RegionFamily sample_family(RegionSampler& s, std::size_t trials, bool compact_only = false);

/// Piecewise-linear map R -> R through (xs[i], ys[i]); constant beyond the
/// outer knots.
struct PiecewiseLinear {
  std::vector<double> xs;
  std::vector<double> ys;

  double operator()(double t) const;
  bool nondecreasing() const;
};

/// Seeded generator of test functions: sums of cones and plateaus, values
/// quantized to multiples of `quantum`, vanishing on the frame of plane
/// grids. With `well_composed`, every superlevel set is well-composed and
/// 8-neighbouring cells differ by at most one quantum, so level bands of
/// non-adjacent values never touch.
class FunctionSampler {
 public:
  FunctionSampler(GridPtr grid, std::uint64_t seed, double quantum = 1.0 / 32.0,
                  bool well_composed = true);

  const GridPtr& grid() const noexcept { return grid_; }
  std::mt19937_64& rng() noexcept { return rng_; }

  /// height * clamp((r - |x - c|) / (r * (1 - plateau)), 0, 1), quantized.
  SampledFunction bump(Point c, double r, double height, double plateau = 0.0) const;
  /// 1 on `cells`, falling to 0 over `rings` chessboard rings, quantized.
  SampledFunction ramp(const CellSet& cells, int rings) const;

  SampledFunction nonnegative();
  /// Positive and negative parts with supports separated by two rings.
  SampledFunction signed_function();
  /// f, g >= 0 with separated supports.
  std::pair<SampledFunction, SampledFunction> orthogonal_pair();
  /// g = f + a nonnegative bump.
  SampledFunction dominating(const SampledFunction& f);

  /// Nondecreasing, at most 8 knots on [-range, range], phi(0) = 0.
  PiecewiseLinear monotone_phi(double range);
  /// Arbitrary, at most 8 knots; phi(0) = 0 when `fix_zero`.
  PiecewiseLinear arbitrary_phi(double range, bool fix_zero);

  bool levels_well_composed(const SampledFunction& f) const;
  SampledFunction quantize(const SampledFunction& f) const;
  /// Largest g <= f (f >= 0) with 8-neighbour steps of at most one quantum.
  SampledFunction flatten_slopes(const SampledFunction& f) const;

 private:
  SampledFunction random_bumps(int count);

  GridPtr grid_;
  std::mt19937_64 rng_;
  double quantum_;
  bool well_composed_;
};

/// Function pairs aimed at additivity failures: overlapping cones at pairs
/// of anchor points, overlapping ramps over the two halves of each anchor
/// set, and `random_pairs` overlapping random bumps.
std::vector<std::pair<SampledFunction, SampledFunction>> adversarial_pairs(
    const std::vector<Point>& anchors, const std::vector<CellSet>& anchor_sets, FunctionSampler& fs,
    std::size_t random_pairs);

}  // namespace tmkit
