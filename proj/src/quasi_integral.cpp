#include "tmkit/quasi_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tmkit/error.hpp"
#include "tmkit/measure_checks.hpp"
#include "tmkit/parallel.hpp"
#include "tmkit/topology.hpp"

namespace tmkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const Measure& m, double t) {
  if (!std::isfinite(v))
    throw Error("non-finite-measure",
                m.name() + " is infinite on a level set of f (t = " + std::to_string(t) + ")");
}

struct LevelValues {
  double r1 = 0.0;
  double layer = 0.0;
};

// R1 and the layer integrand at threshold t.
LevelValues level_values(const Measure& m, const SampledFunction& f, double t) {
  const Region up = superlevel_set(f, t, true);
  const double total = m.total_mass();
  if (t >= 0.0) {
    const double r = m(up);
    require_finite(r, m, t);
    return {r, r};
  }
  if (std::isfinite(total)) {
    const double r = m(up);
    require_finite(r, m, t);
    return {r, r - total};
  }
  const double low = m(complement(up));
  require_finite(low, m, t);
  return {kInf, -low};
}

// R2 at t and its layer counterpart.
LevelValues level_values_r2(const Measure& m, const SampledFunction& f, double t, bool below_zero) {
  const Region up = superlevel_set(f, t, false);
  const double total = m.total_mass();
  const double r = m(up);
  if (!below_zero) {
    require_finite(r, m, t);
    return {r, r};
  }
  if (std::isfinite(total)) return {r, r - total};
  const double low = m(complement(up));
  require_finite(low, m, t);
  return {r, -low};
}

void fill_layers(const Measure& m, const SampledFunction& f, const std::vector<double>& breaks,
                 std::size_t lo, std::size_t hi, Sweep sweep, std::vector<double>& r1,
                 std::vector<double>& layer) {
  if (lo >= hi) return;
  auto eval = [&](std::size_t i) {
    const LevelValues v = level_values(m, f, breaks[i]);
    r1[i] = v.r1;
    layer[i] = v.layer;
  };
  if (sweep == Sweep::Full) {
    parallel_for(hi - lo, [&](std::size_t k) { eval(lo + k); });
    return;
  }
  eval(lo);
  if (hi - lo == 1) return;
  eval(hi - 1);
  // Bisection on [a, b] with both ends known.
  std::vector<std::pair<std::size_t, std::size_t>> stack{{lo, hi - 1}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    if (b - a <= 1) continue;
    if (layer[a] == layer[b] && r1[a] == r1[b]) {
      for (std::size_t i = a + 1; i < b; ++i) {
        r1[i] = r1[a];
        layer[i] = layer[a];
      }
      continue;
    }
    const std::size_t mid = a + (b - a) / 2;
    eval(mid);
    stack.emplace_back(a, mid);
    stack.emplace_back(mid, b);
  }
}

// Sorted sweep for additive measures: R1 from suffix sums of cell weights.
void additive_layers(const Measure& m, const AdditiveWeights& w, const SampledFunction& f,
                     const std::vector<double>& breaks, DistributionFunction& dist, bool with_r2) {
  const Grid& g = *f.grid();
  std::vector<int> cells = g.domain().indices();
  std::sort(cells.begin(), cells.end(), [&](int a, int b) { return f[a] < f[b]; });
  const std::size_t n = cells.size();
  // prefix[i] = weight of the i lowest cells.
  std::vector<double> prefix(n + 1, 0.0), suffix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + w.weight(cells[i]);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + w.weight(cells[i]);
  double frame_max = -kInf, frame_min = kInf;
  if (w.infinite_on_frame) {
    g.frame().for_each([&](int c) {
      frame_max = std::max(frame_max, f[c]);
      frame_min = std::min(frame_min, f[c]);
    });
  }
  const double total = m.total_mass();
  auto count_leq = [&](double t) {
    return static_cast<std::size_t>(
        std::upper_bound(cells.begin(), cells.end(), t, [&](double v, int c) { return v < f[c]; }) -
        cells.begin());
  };
  auto count_lt = [&](double t) {
    return static_cast<std::size_t>(
        std::lower_bound(cells.begin(), cells.end(), t, [&](int c, double v) { return f[c] < v; }) -
        cells.begin());
  };
  // Weight of {f > t} (strict) or {f >= t}, and of the complement.
  auto values = [&](double t, bool strict, bool below_zero) -> LevelValues {
    const std::size_t k = strict ? count_leq(t) : count_lt(t);
    const bool up_inf = w.infinite_on_frame && (strict ? frame_max > t : frame_max >= t);
    const double r = up_inf ? kInf : suffix[k];
    if (!below_zero) {
      require_finite(r, m, t);
      return {r, r};
    }
    if (std::isfinite(total)) return {r, r - total};
    const bool low_inf = w.infinite_on_frame && (strict ? frame_min <= t : frame_min < t);
    const double low = low_inf ? kInf : prefix[k];
    require_finite(low, m, t);
    return {r, -low};
  };
  const std::size_t k = breaks.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const LevelValues v = values(breaks[i], true, breaks[i] < 0.0);
    dist.r1[i] = v.r1;
    dist.layer[i] = v.layer;
  }
  if (with_r2) {
    for (std::size_t i = 0; i < k; ++i) {
      const bool inf = w.infinite_on_frame && frame_max >= breaks[i];
      dist.r2[i] = inf ? kInf : suffix[count_lt(breaks[i])];
    }
    for (std::size_t i = 0; i + 1 < k; ++i)
      dist.layer2[i] = values(breaks[i + 1], false, breaks[i] < 0.0).layer;
  }
}

}  // namespace

double DistributionFunction::r2_integral() const {
  if (layer2.empty()) throw Error("invalid-params", "distribution computed without R2");
  return layer_cake_sum(breakpoints, layer2);
}

std::vector<double> breakpoints_of(const SampledFunction& f) {
  std::vector<double> v = f.distinct_values();
  if (!std::binary_search(v.begin(), v.end(), 0.0)) v.insert(std::upper_bound(v.begin(), v.end(), 0.0), 0.0);
  return v;
}

double layer_cake_sum(std::span<const double> breaks, std::span<const double> layer) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) s += layer[i] * (breaks[i + 1] - breaks[i]);
  return s;
}

QuasiIntegralValue quasi_integral(const Measure& m, const SampledFunction& f, const IntegralOptions& opt) {
  require_same_grid(*m.grid(), *f.grid(), "quasi_integral");
  QuasiIntegralValue out;
  out.a = std::min(f.min(), 0.0);
  out.b = f.max();
  DistributionFunction& dist = out.dist;
  dist.total_mass = m.total_mass();
  std::vector<double> breaks = breakpoints_of(f);
  if (!opt.extra_breakpoints.empty()) {
    for (double t : opt.extra_breakpoints)
      if (t > out.a && t < std::max(out.b, 0.0)) breaks.push_back(t);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  }
  const std::size_t k = breaks.size();
  dist.breakpoints = breaks;
  dist.r1.assign(k, 0.0);
  dist.layer.assign(k > 0 ? k - 1 : 0, 0.0);
  if (opt.with_r2) {
    dist.r2.assign(k, 0.0);
    dist.layer2.assign(dist.layer.size(), 0.0);
  }
  if (out.a < 0.0 && !std::isfinite(dist.total_mass) && !m.is_topological())
    throw Error("non-finite-measure", m.name() + " has infinite total mass and f takes negative values");

  if (const AdditiveWeights* w = m.additive_weights()) {
    additive_layers(m, *w, f, breaks, dist, opt.with_r2);
  } else {
    const auto zero = static_cast<std::size_t>(std::lower_bound(breaks.begin(), breaks.end(), 0.0) - breaks.begin());
    std::vector<double> r1(k, 0.0), layer(k, 0.0);
    // Below 0 and from 0 up the layer is monotone separately.
    fill_layers(m, f, breaks, 0, zero, opt.sweep, r1, layer);
    fill_layers(m, f, breaks, zero, k - 1, opt.sweep, r1, layer);
    std::copy(r1.begin(), r1.end() - 1, dist.r1.begin());
    std::copy(layer.begin(), layer.end() - 1, dist.layer.begin());
    if (opt.with_r2) {
      parallel_for(k, [&](std::size_t i) { dist.r2[i] = m(superlevel_set(f, breaks[i], false)); });
      parallel_for(k - 1, [&](std::size_t i) {
        dist.layer2[i] = level_values_r2(m, f, breaks[i + 1], breaks[i] < 0.0).layer;
      });
    }
  }
  out.value = layer_cake_sum(breaks, dist.layer);
  return out;
}

double quasi_integral_split(const Measure& m, const SampledFunction& f) {
  if (!m.is_topological())
    throw Error("requires-topological", m.name() + " is not a topological measure");
  return quasi_integral(m, f.positive_part()).value - quasi_integral(m, f.negative_part()).value;
}

Functional functional_of(const Measure& m) {
  return [m](const SampledFunction& f) { return quasi_integral(m, f).value; };
}

Measure recover_measure(Functional rho, const GridPtr& grid, std::string name) {
  static constexpr int kWidths[] = {1, 2, 4};
  static constexpr int kCap = 6;
  auto eval = [rho = std::move(rho), grid](const Region& r) {
    const Grid& g = *grid;
    if (r.empty()) return 0.0;
    std::vector<double> v(g.cell_count(), 0.0);
    if (r.is_open()) {
      CellSet outside = g.domain() - r.cells();
      if (!g.window_is_space()) outside |= g.frame();
      const std::vector<int> d = chessboard_distance(g, outside, kCap);
      double best = -kInf;
      for (int j : kWidths) {
        g.domain().for_each([&](int c) {
          v[static_cast<std::size_t>(c)] = std::min(1.0, d[static_cast<std::size_t>(c)] / double(j + 1));
        });
        best = std::max(best, rho(SampledFunction(grid, v)));
      }
      return best;
    }
    const std::vector<int> e = chessboard_distance(g, r.cells(), kCap);
    double best = kInf;
    for (int j : kWidths) {
      g.domain().for_each([&](int c) {
        v[static_cast<std::size_t>(c)] = std::max(0.0, 1.0 - e[static_cast<std::size_t>(c)] / double(j + 1));
      });
      if (!g.window_is_space()) g.frame().for_each([&](int c) { v[static_cast<std::size_t>(c)] = 0.0; });
      best = std::min(best, rho(SampledFunction(grid, v)));
    }
    return best;
  };
  Measure::Info info;
  info.name = std::move(name);
  info.memoize = true;
  info.total_mass = eval(Region::full(grid, Kind::Open));
  return Measure(grid, std::move(info), std::move(eval));
}

// ------------------------------------------------------------------ checks

namespace {

double tol_for(double a, double b) {
  return value_tolerance(std::max(std::abs(a), std::abs(b)));
}

SampledFunction compose(const SampledFunction& f, const PiecewiseLinear& phi) {
  return f.map([&](double t) { return phi(t); });
}

SampledFunction combine(double a, const SampledFunction& f, double b, const SampledFunction& g) {
  return a * f + b * g;
}

}  // namespace

AxiomReport check_pcqlf_properties(const Measure& m, FunctionSampler& fs, std::size_t trials) {
  AxiomReport rep;
  const bool topo = m.is_topological();
  const bool plane = !m.grid()->window_is_space();
  const double total = m.total_mass();
  auto rho = [&](const SampledFunction& f) { return quasi_integral(m, f).value; };
  auto coef = [&](bool signed_) {
    const int k = std::uniform_int_distribution<int>(signed_ ? -8 : 0, 8)(fs.rng());
    return k / 4.0;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = topo && t % 2 == 1 ? fs.signed_function() : fs.nonnegative();
    const double rf = rho(f);

    for (double c : {0.0, 0.5, 2.0, 3.0}) {
      const double lhs = rho(c * f), rhs = c * rf;
      rep.expect_close("homogeneity", lhs, rhs, tol_for(lhs, rhs), {}, {f}, "c = " + std::to_string(c));
    }

    const SampledFunction g = fs.dominating(f);
    rep.expect_leq("monotonicity", rf, rho(g), tol_for(rf, 0.0), {}, {f, g});

    {
      const auto [p, q] = fs.orthogonal_pair();
      const double lhs = rho(p + q), rhs = rho(p) + rho(q);
      rep.expect_close("orthogonal-additivity", lhs, rhs, tol_for(lhs, rhs), {}, {p, q});
      if (topo) {
        const double lhs2 = rho(p - q), rhs2 = rho(p) + rho(-1.0 * q);
        rep.expect_close("orthogonal-additivity", lhs2, rhs2, tol_for(lhs2, rhs2), {}, {p, -1.0 * q},
                         "f >= 0, g <= 0");
      }
    }

    if (std::isfinite(total)) {
      const double bound = f.norm() * total;
      rep.expect_leq("norm-bound", std::abs(rf), bound, tol_for(bound, 0.0), {}, {f});
      rep.expect_leq("norm-bound", total * std::min(f.min(), 0.0), rf, tol_for(rf, total), {}, {f},
                     "lower normalization");
      rep.expect_leq("norm-bound", rf, total * std::max(f.max(), 0.0), tol_for(rf, total), {}, {f},
                     "upper normalization");
    }

    {
      const SampledFunction h = topo ? f : fs.nonnegative();
      const double range = std::max(h.norm(), 1e-3);
      const PiecewiseLinear p1 = fs.monotone_phi(range), p2 = fs.monotone_phi(range);
      const double a = coef(false), b = coef(false);
      const SampledFunction u = compose(h, p1), v = compose(h, p2);
      const double lhs = rho(combine(a, u, b, v)), rhs = a * rho(u) + b * rho(v);
      rep.expect_close("cone-linearity", lhs, rhs, tol_for(lhs, rhs), {}, {h});
    }

    if (topo) {
      const double range = std::max(f.norm(), 1e-3);
      const PiecewiseLinear p1 = fs.arbitrary_phi(range, plane), p2 = fs.arbitrary_phi(range, plane);
      const double a = coef(true), b = coef(true);
      const SampledFunction u = compose(f, p1), v = compose(f, p2);
      const double lhs = rho(combine(a, u, b, v)), rhs = a * rho(u) + b * rho(v);
      rep.expect_close("subalgebra-linearity", lhs, rhs, tol_for(lhs, rhs), {}, {f});
    }
  }
  return rep;
}

std::optional<std::pair<SampledFunction, SampledFunction>> additivity_witness(
    const Measure& m, const std::vector<std::pair<SampledFunction, SampledFunction>>& pairs) {
  for (const auto& [f, g] : pairs) {
    const double lhs = quasi_integral(m, f + g).value;
    const double rhs = quasi_integral(m, f).value + quasi_integral(m, g).value;
    if (std::abs(lhs - rhs) > tol_for(lhs, rhs)) return std::make_pair(f, g);
  }
  return std::nullopt;
}

AxiomReport check_simplicity(const Measure& m, FunctionSampler& fs, std::size_t trials) {
  AxiomReport rep;
  const bool topo = m.is_topological();
  auto rho = [&](const SampledFunction& f) { return quasi_integral(m, f).value; };
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = topo && t % 2 == 1 ? fs.signed_function() : fs.nonnegative();
    const double rf = rho(f);
    const double lhs = rho(f * f), rhs = rf * rf;
    rep.expect_close("square", lhs, rhs, tol_for(lhs, rhs), {}, {f});
    if (!m.is_simple()) continue;

    const PiecewiseLinear phi = fs.monotone_phi(std::max(f.norm(), 1e-3));
    const double lc = rho(compose(f, phi)), rc = phi(rf);
    rep.expect_close("composition", lc, rc, tol_for(lc, rc), {}, {f});

    const std::vector<double> vals = breakpoints_of(f);
    double nearest = kInf;
    for (double v : vals) nearest = std::min(nearest, std::abs(v - rf));
    rep.expect_leq("value-in-range", nearest, 0.0, tol_for(rf, 0.0), {}, {f});
  }
  return rep;
}

AxiomReport monotone_convergence_check(const Measure& m, const std::vector<SampledFunction>& seq,
                                       const SampledFunction& limit, bool descending) {
  if (seq.empty()) throw Error("not-monotone-input", "empty sequence");
  if (descending && !m.is_topological())
    throw Error("requires-topological", "descending convergence needs a topological measure");
  auto ordered = [&](const SampledFunction& lo, const SampledFunction& hi) {
    return descending ? hi.leq(lo) : lo.leq(hi);
  };
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!ordered(seq[i], seq[i + 1])) throw Error("not-monotone-input", "terms " + std::to_string(i) + " and " + std::to_string(i + 1) + " are not ordered");
  if (!ordered(seq.back(), limit)) throw Error("not-monotone-input", "last term is not ordered against the limit");

  AxiomReport rep;
  std::vector<double> vals(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) vals[i] = quasi_integral(m, seq[i]).value;
  const double target = quasi_integral(m, limit).value;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
    const double lo = descending ? vals[i + 1] : vals[i];
    const double hi = descending ? vals[i] : vals[i + 1];
    rep.expect_leq("monotone-values", lo, hi, tol_for(lo, hi), {}, {seq[i], seq[i + 1]});
  }
  // Mass available to the sequence: mu(X), or on plane grids with infinite
  // mass the measure of the union of supports.
  double mass = m.total_mass();
  if (!std::isfinite(mass)) {
    CellSet supp = limit.support();
    for (const SampledFunction& f : seq) supp |= f.support();
    mass = supp.none() ? 0.0 : m(Region(m.grid(), supp, Kind::Compact));
  }
  const double dist = sup_distance(seq.back(), limit);
  const double tol = std::max(1e-9, dist > 0.0 ? 2.0 * mass * dist : 0.0);
  rep.expect_close("convergence", vals.back(), target, tol, {}, {seq.back(), limit});
  return rep;
}

}  // namespace tmkit
