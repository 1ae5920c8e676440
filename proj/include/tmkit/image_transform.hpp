#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tmkit/measure.hpp"
#include "tmkit/report.hpp"
#include "tmkit/sampling.hpp"

namespace tmkit {

class ImageTransform;

/// y -> w_y, a simple (deficient) topological measure on X for every
/// domain cell y of Y.
class MeasureMap {
 public:
  struct Info {
    std::string name;
    GridPtr domain;    ///< X
    GridPtr codomain;  ///< Y
    bool deficient_only = false;
    /// w_y is the same measure for every y.
    bool constant = false;
    /// When non-empty, w_y = delta at point_map[y] (a domain cell of X).
    std::vector<int> point_map;
  };

  MeasureMap() = default;
  MeasureMap(Info info, std::function<Measure(int)> at);

  const std::string& name() const;
  const GridPtr& domain() const;
  const GridPtr& codomain() const;
  bool deficient_only() const;
  bool constant() const;
  const std::vector<int>& point_map() const;

  /// w_y. Built once per cell and kept.
  const Measure& at(int y) const;
  /// Cells y of Y with w_y(A) = 1, kind copied from A.
  Region preimage_of_one(const Region& a) const;

  /// Transform this map was read off from, if any.
  const ImageTransform* source() const;
  void set_source(std::shared_ptr<const ImageTransform> q);

  bool valid() const noexcept { return static_cast<bool>(core_); }

 private:
  struct Core;
  std::shared_ptr<Core> core_;
};

/// A (d-)image transformation q from regions of X to regions of Y.
class ImageTransform {
 public:
  using Apply = std::function<Region(const Region&)>;

  struct Info {
    std::string name;
    GridPtr domain;    ///< X
    GridPtr codomain;  ///< Y
    bool deficient_only = false;
  };

  ImageTransform() = default;
  ImageTransform(Info info, Apply apply);

  /// q(A). Throws Error("grid-mismatch") when A is not on X. Memoized.
  Region operator()(const Region& a) const;

  const std::string& name() const;
  const GridPtr& domain() const;
  const GridPtr& codomain() const;
  bool deficient_only() const;
  /// q(X).
  Region full_image() const;

  /// Measure map the transform was built from (scan route), if any.
  const MeasureMap* measure_map() const;
  void set_measure_map(MeasureMap w);

  bool valid() const noexcept { return static_cast<bool>(core_); }

 private:
  struct Core;
  std::shared_ptr<Core> core_;
};

/// Image of one solid region: a cell set of Y (the kind is copied from the
/// argument).
using SolidImageRule = std::function<CellSet(const Region&)>;

/// Extends a rule on solid regions through the solid decomposition: y lies in
/// q(A) iff sum coef * [y in rule(piece)] (+ mass * [y in rule(X)]) is 1.
/// Throws Error("unsupported-shape") when A has no finite decomposition.
ImageTransform it_from_solid_rule(std::string name, GridPtr x, GridPtr y, SolidImageRule rule,
                                  bool deficient_only = false);

/// q(A) = {y : w_y(A) = 1}, by a scan over the cells of Y.
ImageTransform it_from_measure_map(const MeasureMap& w);

/// w_y = adjoint(q, delta_y). Keeps q as the source.
MeasureMap measure_map_from_it(const ImageTransform& q);

/// q* nu : A -> nu(q(A)). Topological iff q is not deficient-only and nu is
/// topological; simple iff nu is simple.
Measure adjoint(const ImageTransform& q, const Measure& nu);

/// (p o q)(A) = p(q(A)).
ImageTransform compose(const ImageTransform& p, const ImageTransform& q);

/// Per-configuration axiom checks on sampled regions of X:
///  "IT1" kind preserved, "empty" q(empty) = empty, "monotone" on nested pairs,
///  "disjoint-union" q(A u B) = q(A) u q(B) disjointly on separated pairs,
///  "complement" q(X - K) = q(X) - q(K) (window-is-space, not deficient),
///  "regularity" erosion / dilation chains attain q(U) and q(K).
AxiomReport check_it_axioms(const ImageTransform& q, RegionSampler& s, std::size_t trials);

struct InjectivityResult {
  bool injective = true;
  /// First domain cell x with q({x}) empty.
  std::optional<int> witness;
};
InjectivityResult injectivity_check(const ImageTransform& q);

struct InverseFunctionResult {
  /// u(y) = the x with y in q({x}), when the singleton images cover Y.
  std::optional<std::vector<int>> u;
  /// q(A) = u^-1(A) on the sample ("inverse-function").
  AxiomReport report;
};
/// Throws Error("ambiguous-cover") when two singleton images overlap.
InverseFunctionResult inverse_function_check(const ImageTransform& q, RegionSampler& s, std::size_t trials);

/// Smallest square of cells, anchored at the window centre, whose cell-centre
/// diameter reaches eps, and its side in cells.
Region haar_square(const GridPtr& g, double eps);
int haar_square_side(const Grid& g, double eps);

/// Haar non-uniqueness on a plane grid: every eps is a multiple of the cell
/// pitch (0 allowed). Checks "identity" (q_0 = id), "commute" (q_eps commutes
/// with grid shifts), "invariant" (q_eps* m is shift-invariant) and
/// "non-unique" (a square K with q_e1* m(K), q_e2* m(K) and m(K) all different)
/// and "four-corners" (q_e1(K) near the corners of K, when diam K is within a
/// pitch of e1).
AxiomReport haar_nonuniqueness_demo(const GridPtr& g, const Measure& m, const std::vector<double>& eps_list,
                                    RegionSampler& s, std::size_t trials);

namespace catalog {

ImageTransform it_identity(const GridPtr& g);
/// q(A) = u^-1(A) for a cell map u : Y -> X (domain cells).
ImageTransform it_preimage(const GridPtr& x, const GridPtr& y, std::vector<int> u, std::string name = "preimage");
/// u(y) = y shifted by (dx, dy) cells, clamped to the window.
std::vector<int> translation_map(const GridPtr& x, const GridPtr& y, int dx, int dy);
/// u(y) = y mirrored left-right.
std::vector<int> reflection_map(const GridPtr& g);

/// By |A n E| = 0 / 1 / 2: empty / A / X. E two distinct points.
ImageTransform it_two_point(const GridPtr& g, Point x, Point z);
/// empty if A misses B, X if B is inside A, A otherwise. Window-is-space.
ImageTransform it_boundary(const GridPtr& g, const Region& b);
/// q_eps(A) = {p : aarnes(p, eps)(A) = 1} on a plane grid (scan over Y).
/// eps = 0 gives the identity; otherwise eps must exceed the cell pitch.
ImageTransform it_resolution_kill(const GridPtr& g, double eps);
/// The same transform from its solid rule erode(S, ring) u (S n dilate(S, -ring)).
ImageTransform it_resolution_kill_morph(const GridPtr& g, double eps);
/// empty if m(C) < eps, C if eps <= m(C) < 1 - eps, X otherwise; m
/// normalized. Needs eps < 1/2 and eps away from the values m takes.
ImageTransform it_measure_threshold(const GridPtr& g, double eps, const Measure& m);
/// Y if mu0(A) = 1, empty otherwise; mu0 simple.
ImageTransform it_constant(const GridPtr& x, const GridPtr& y, const Measure& mu0);
/// w_(a,b) = odd-point measure at (a, 0), (a, b), (b, 0) (plane grid).
MeasureMap axis_points_map(const GridPtr& g);

}  // namespace catalog

}  // namespace tmkit
