#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tmkit/grid.hpp"

namespace tmkit {

struct MeasureFlags {
  bool is_topological = false;
  bool is_simple = false;
  bool is_deficient_only = false;
};

/// mu(A) = uniform * |A| + sum of sparse weights over cells of A. Set for
/// measures that are plain cell sums (Lebesgue, point masses and their
/// nonnegative combinations); quasi-integrals use it for a sorted sweep.
struct AdditiveWeights {
  double uniform = 0.0;
  std::vector<std::pair<int, double>> sparse;
  /// Plane grids: regions touching the frame have infinite value.
  bool infinite_on_frame = false;

  double weight(int cell) const;
};

/// A (deficient) topological measure on a grid: an evaluator on regions
/// with capability flags and the total mass mu(X). Cheap to copy; copies
/// share the evaluator and its memo.
class Measure {
 public:
  using Evaluator = std::function<double(const Region&)>;

  struct Info {
    std::string name;
    MeasureFlags flags;
    double total_mass = 0.0;
    /// Memoize region -> value (for evaluators that decompose regions).
    bool memoize = false;
    /// Points the measure is built around (used to aim adversarial tests).
    std::vector<Point> anchors;
    /// Sets the measure is built around, e.g. the circle B or the blob D.
    std::function<std::vector<CellSet>()> anchor_sets;
  };

  Measure() = default;
  Measure(GridPtr grid, Info info, Evaluator eval);
  static Measure additive(GridPtr grid, Info info, AdditiveWeights weights);

  /// Throws Error("grid-mismatch") when `r` lives on another grid.
  double operator()(const Region& r) const;
  /// Same value, bypassing the memo (for large per-cell measure families).
  double uncached(const Region& r) const;

  const GridPtr& grid() const;
  const std::string& name() const;
  const MeasureFlags& flags() const;
  double total_mass() const;
  bool is_topological() const { return flags().is_topological; }
  bool is_simple() const { return flags().is_simple; }
  bool is_deficient_only() const { return flags().is_deficient_only; }
  const std::vector<Point>& anchors() const;
  std::vector<CellSet> anchor_sets() const;
  /// Non-null for additive measures.
  const AdditiveWeights* additive_weights() const;

  bool valid() const noexcept { return static_cast<bool>(core_); }
  /// Identity of the shared evaluator; equal ids mean equal measures.
  const void* id() const noexcept { return core_.get(); }

  /// Same evaluator under a new name and flags.
  Measure relabeled(std::string name, MeasureFlags flags) const;

 private:
  struct Core;
  std::shared_ptr<Core> core_;
};

/// lambda on solid regions, total mass mu(X) (may be +inf on plane grids).
struct SolidSetRule {
  std::string name;
  GridPtr grid;
  double total_mass = 0.0;
  std::function<double(const Region&)> evaluator;
};

/// The unique topological measure extending `rule`, evaluated through the
/// solid decomposition of each region. Throws Error("non-finite") when an
/// evaluation needs mu(X) and the total mass is infinite.
Measure extend_to_measure(const SolidSetRule& rule, MeasureFlags flags = {true, false, false},
                          std::vector<Point> anchors = {},
                          std::function<std::vector<CellSet>()> anchor_sets = {});

/// sum c_i * mu_i with c_i >= 0. Additive when every term is.
Measure combination(const std::vector<double>& coeffs, const std::vector<Measure>& measures,
                    std::string name = "combination");

namespace catalog {

/// Solid rule 0 / lambda(A) / 2 lambda(A) by the number of the points p1,
/// p2 in A. Plane grids only.
SolidSetRule two_point_rule(const GridPtr& g, Point p1, Point p2);
Measure two_point(const GridPtr& g, Point p1, Point p2);

/// Solid rule i/n when A holds 2i or 2i+1 of the 2n+1 points.
/// odd_point_cells counts repeated cells with multiplicity.
SolidSetRule odd_points_rule(const GridPtr& g, const std::vector<Point>& points);
Measure odd_points(const GridPtr& g, const std::vector<Point>& points);
Measure odd_point_cells(const GridPtr& g, const std::vector<int>& cells);

/// Aarnes circle measure. eps == 0: disk grid, B = the grid boundary ring.
/// eps > 0: plane grid, B = supercover circle of radius eps around p.
SolidSetRule aarnes_circle_rule(const GridPtr& g, Point p, double eps);
Measure aarnes_circle(const GridPtr& g, Point p, double eps);
/// Same with p given as a cell; used for per-cell measure families.
Measure aarnes_circle_at(const GridPtr& g, int p_cell, double eps);
/// p_cell -> aarnes_circle_at(g, p_cell, eps), sharing the ring geometry.
std::function<Measure(int)> aarnes_circle_family(const GridPtr& g, double eps);

/// nu(A) = 1 iff D is contained in A. Deficient, not topological.
Measure blob_dtm(const GridPtr& g, const Region& D);

/// Cell-area sum. Infinite total mass on plane grids.
Measure lebesgue(const GridPtr& g);
/// Lebesgue scaled to total mass 1 (window-is-space grids).
Measure normalized_lebesgue(const GridPtr& g);
Measure point_mass(const GridPtr& g, Point x);
Measure point_mass_cell(const GridPtr& g, int cell);

}  // namespace catalog

}  // namespace tmkit
