#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tmkit/image_transform.hpp"
#include "tmkit/quasi_integral.hpp"
#include "tmkit/report.hpp"
#include "tmkit/sampling.hpp"

namespace tmkit {

enum class QlmKind { QuasiLinear, Conic };

/// How theta(f) is evaluated.
///  Batched: one image q({f > t}) per breakpoint t, read off for every y at
///           once. Needs simple w_y (a source transform, a point map or a
///           constant map).
///  PerCell: quasi_integral(w_y, f) for each y.
///  Auto:    Batched when available.
enum class ThetaRoute { Auto, Batched, PerCell };

/// theta(f)(y) = t * integral of f against w_y.
class QuasiLinearMap {
 public:
  QuasiLinearMap() = default;
  explicit QuasiLinearMap(MeasureMap w, double scale = 1.0);

  /// Throws Error("nonnegative-required") for a conic map and an f with
  /// negative values, Error("grid-mismatch") when f is not on X.
  SampledFunction operator()(const SampledFunction& f, ThetaRoute route = ThetaRoute::Auto) const;

  const MeasureMap& w() const noexcept { return w_; }
  const std::string& name() const noexcept { return name_; }
  const GridPtr& domain() const { return w_.domain(); }
  const GridPtr& codomain() const { return w_.codomain(); }
  QlmKind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }
  /// t * max_y w_y(X).
  double norm_bound() const noexcept { return norm_bound_; }
  bool batched_available() const;

 private:
  MeasureMap w_;
  std::string name_;
  QlmKind kind_ = QlmKind::QuasiLinear;
  double scale_ = 1.0;
  double norm_bound_ = 0.0;
};

QuasiLinearMap theta_from_w(const MeasureMap& w);
/// t * theta, t > 0.
QuasiLinearMap scaled(const QuasiLinearMap& theta, double t);

/// Pointwise over Y: "zero", "homogeneity", "monotonicity", "norm-bound"
/// (norm_bound * |f|), "lipschitz" (2 * norm_bound * |f - g|),
/// "orthogonal-additivity", "cone-linearity" and, for quasi-linear maps,
/// "subalgebra-linearity". Conic maps only see f >= 0.
AxiomReport check_qlm_properties(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t trials);

/// "square" theta(f^2) = theta(f)^2 cellwise; the witness region is the set
/// of failing Y cells. Only when every square check passes: "composition"
/// theta(phi o f) = phi o theta(f) for nondecreasing phi with phi(0) = 0,
/// and "polynomial" for p with nonnegative coefficients, degree <= 4, p(0) = 0.
AxiomReport check_qh_criteria(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t trials);

/// Y cells where theta(f^2) and theta(f)^2 differ.
CellSet square_law_failures(const QuasiLinearMap& theta, const SampledFunction& f);

/// "duality": integral of f against q* nu equals the integral of theta(f)
/// against nu (1e-6). "orthogonal-product": theta(f) theta(g) = 0 for
/// f, g >= 0 with fg = 0.
AxiomReport duality_check(const ImageTransform& q, const QuasiLinearMap& theta, const Measure& nu,
                          FunctionSampler& fs, std::size_t trials);

/// "level-set": q({f > t}) against {theta(f) > t} (open) and q({f >= t})
/// against {theta(f) >= t} (compact), equal up to the one-cell ring around
/// the boundary of q's side. For d-image transformations, thresholds that
/// are values of f (a null set of t) are skipped.
AxiomReport level_set_identity_check(const ImageTransform& q, const QuasiLinearMap& theta, const SampledFunction& f,
                                     const std::vector<double>& thresholds);

struct HomomorphismResult {
  bool linear = true;
  /// Pair with theta(f + g) != theta(f) + theta(g).
  std::optional<std::pair<SampledFunction, SampledFunction>> witness;
  /// First Y cell whose w_y has a subadditivity witness, and the pair.
  std::optional<int> cell;
  std::optional<std::pair<Region, Region>> cell_witness;
  std::size_t pairs_tried = 0;
};

/// Additivity of theta on at least `pairs` adversarial pairs (nested and
/// overlapping bumps, plus ramps over the anchored pairs of the w_y), checked
/// against the per-cell subadditivity route. Throws Error("criteria-disagree")
/// when theta is additive on every pair while some w_y is not subadditive.
HomomorphismResult homomorphism_check(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t pairs = 100);

/// f -> (integral of f against mu_i)_i.
struct PsiSample {
  std::vector<Measure> measures;
  std::vector<double> operator()(const SampledFunction& f) const;
};
PsiSample psi_sample(std::vector<Measure> measures);

/// "order"; "injectivity" (raising f at a point-mass cell of the sample
/// changes Psi(f)); for simple samples "multiplicativity" (Psi(f^2) and
/// Psi(f * phi(f))) and "isometry" (max_i |Psi(f)_i| <= |f|, with equality
/// when the sample has a point mass at an extremizer of f); "measure-additivity"
/// in the measure argument, for sums and for t * mu.
AxiomReport psi_checks(const PsiSample& psi, FunctionSampler& fs, std::size_t trials);

/// "compose": the map of (q2 o q1) against theta2(theta1(f)), 1e-6. Both maps
/// must come from transforms. Throws Error("invalid-params") otherwise.
AxiomReport compose_check(const QuasiLinearMap& theta2, const QuasiLinearMap& theta1, FunctionSampler& fs,
                          std::size_t trials);

/// theta = H o Psi with Psi over the range of w and H the coordinate
/// selection y -> t * Psi(f)[w_y]. "factorization" exact; "H-sum" and
/// "H-product" on pairs of Psi images.
AxiomReport factorization_check(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t trials);

/// lambda = sum c_i nu_i. "integral" (1e-9) and "value" on sampled regions.
/// Throws Error("not-convex") unless the c_i are nonnegative and sum to 1.
AxiomReport representable_check(const std::vector<double>& coeffs, const std::vector<Measure>& simple_measures,
                                FunctionSampler& fs, RegionSampler& rs, std::size_t trials);

}  // namespace tmkit
