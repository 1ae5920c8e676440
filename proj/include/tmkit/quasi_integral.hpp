#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tmkit/measure.hpp"
#include "tmkit/report.hpp"
#include "tmkit/sampled_function.hpp"
#include "tmkit/sampling.hpp"

namespace tmkit {

/// Distribution of f under mu, sampled at the breakpoints of f.
struct DistributionFunction {
  /// Distinct domain values of f together with 0, ascending.
  std::vector<double> breakpoints;
  /// mu({f > t_i}); +inf below 0 on plane grids with infinite total mass.
  std::vector<double> r1;
  /// mu({f >= t_i}); empty unless requested.
  std::vector<double> r2;
  /// R2 counterpart of `layer` on [t_i, t_{i+1}): R2(t_{i+1}), less mu(X)
  /// below 0. Empty unless requested.
  std::vector<double> layer2;
  /// Integrand on [t_i, t_{i+1}): R1(t_i) for t_i >= 0 and R1(t_i) - mu(X)
  /// below 0. Below 0 with infinite total mass this is -mu({f <= t_i}),
  /// which equals R1 - mu(X) for topological measures of finite mass.
  std::vector<double> layer;
  double total_mass = 0.0;

  /// The R2 form of the same integral.
  double r2_integral() const;
};

struct QuasiIntegralValue {
  double value = 0.0;
  /// a = min(min f, 0), b = max f.
  double a = 0.0;
  double b = 0.0;
  DistributionFunction dist;
};

enum class Sweep {
  /// Bisects breakpoint ranges and fills runs where R1 is constant at both
  /// ends (valid for monotone set functions).
  Adaptive,
  /// Evaluates every breakpoint.
  Full,
};

struct IntegralOptions {
  Sweep sweep = Sweep::Adaptive;
  bool with_r2 = false;
  /// Extra breakpoints (for step-exactness checks); merged with the rest.
  std::vector<double> extra_breakpoints;
};

/// Distinct domain values of f with 0, ascending.
std::vector<double> breakpoints_of(const SampledFunction& f);

/// sum layer_i * (t_{i+1} - t_i). Shared by every route that integrates a
/// step distribution, so equal inputs give bit-identical sums.
double layer_cake_sum(std::span<const double> breaks, std::span<const double> layer);

/// Integral of f against mu by the layer-cake formula. Additive measures use
/// a sorted sweep. Throws Error("non-finite-measure") when a needed value is
/// infinite: f takes negative values, mu(X) is infinite and mu is not
/// topological, or some mu({f > t}) is infinite.
QuasiIntegralValue quasi_integral(const Measure& m, const SampledFunction& f,
                                  const IntegralOptions& opt = {});

/// Integral of f+ minus integral of f-. Throws Error("requires-topological").
double quasi_integral_split(const Measure& m, const SampledFunction& f);

using Functional = std::function<double(const SampledFunction&)>;

/// rho = f -> quasi_integral(m, f).value.
Functional functional_of(const Measure& m);

/// Measure recovered from a functional: mu(U) is the best of rho over ramps
/// 0 <= f <= 1 supported in U (ramp widths 1, 2 and 4 cells); mu(K) the best
/// of rho over ramps equal to 1 on K. On plane grids the ramps vanish on
/// the frame. Memoized.
Measure recover_measure(Functional rho, const GridPtr& grid, std::string name = "recovered");

/// Properties of rho = integral against m on sampled functions:
///  "homogeneity", "monotonicity", "orthogonal-additivity", "norm-bound",
///  "cone-linearity" (nondecreasing phi with phi(0) = 0; f >= 0 when m is
///  deficient), "subalgebra-linearity" (topological m: arbitrary phi and signs).
AxiomReport check_pcqlf_properties(const Measure& m, FunctionSampler& fs, std::size_t trials);

/// First pair with rho(f + g) != rho(f) + rho(g) among `pairs`.
std::optional<std::pair<SampledFunction, SampledFunction>> additivity_witness(
    const Measure& m, const std::vector<std::pair<SampledFunction, SampledFunction>>& pairs);

/// "square" rho(f^2) = rho(f)^2; for simple m also "composition"
/// rho(phi o f) = phi(rho(f)) and "value-in-range".
AxiomReport check_simplicity(const Measure& m, FunctionSampler& fs, std::size_t trials);

/// Integrals along an ascending (or descending) sequence increase (decrease)
/// and reach the limit's integral within max(1e-9, 2 mu(X) |f_N - f|).
/// Throws Error("not-monotone-input") when the sequence is not ordered
/// cellwise, and Error("requires-topological") for a descending sequence on a
/// measure that is not topological.
AxiomReport monotone_convergence_check(const Measure& m, const std::vector<SampledFunction>& seq,
                                       const SampledFunction& limit, bool descending = false);

}  // namespace tmkit
