#include "tmkit/quasi_linear.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "tmkit/error.hpp"
#include "tmkit/measure_checks.hpp"
#include "tmkit/parallel.hpp"
#include "tmkit/topology.hpp"

namespace tmkit {

namespace {

constexpr double kDualityTolerance = 1e-6;
constexpr double kExactTolerance = 1e-9;
constexpr double kQuantum = 1.0 / 32.0;

double tol_for(double a, double b) { return value_tolerance(std::max(std::abs(a), std::abs(b))); }

double fn_tol(const SampledFunction& a, const SampledFunction& b) { return tol_for(a.norm(), b.norm()); }

// Same values without the per-region memo, so large measure families do not
// keep one memo entry per cell and function. Additive measures keep their
// weights (and the sorted sweep).
Measure unmemoized(const Measure& m) {
  if (m.additive_weights()) return m;
  Measure::Info info;
  info.name = m.name();
  info.flags = m.flags();
  info.total_mass = m.total_mass();
  info.anchors = m.anchors();
  return Measure(m.grid(), std::move(info), [m](const Region& r) { return m.uncached(r); });
}

SampledFunction compose(const SampledFunction& f, const PiecewiseLinear& phi) {
  return f.map([&](double t) { return phi(t); });
}

std::optional<int> point_mass_cell_of(const Measure& m) {
  const AdditiveWeights* w = m.additive_weights();
  if (!w || w->uniform != 0.0 || w->sparse.size() != 1 || w->sparse.front().second != 1.0) return std::nullopt;
  return w->sparse.front().first;
}

// Signed inputs only where the map accepts them.
SampledFunction sample_for(QlmKind kind, FunctionSampler& fs, std::size_t t) {
  return kind == QlmKind::QuasiLinear && t % 2 == 1 ? fs.signed_function() : fs.nonnegative();
}

double max_excess(const SampledFunction& a, const SampledFunction& b) {
  double worst = -std::numeric_limits<double>::infinity();
  a.grid()->domain().for_each([&](int c) { worst = std::max(worst, a[c] - b[c]); });
  return worst;
}

}  // namespace

// ---------------------------------------------------------- QuasiLinearMap

QuasiLinearMap::QuasiLinearMap(MeasureMap w, double scale) : w_(std::move(w)), scale_(scale) {
  if (!w_.valid()) throw Error("invalid-params", "quasi-linear map needs a measure map");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error("invalid-params", "scale must be positive");
  name_ = scale == 1.0 ? "theta(" + w_.name() + ")" : std::to_string(scale) + " * theta(" + w_.name() + ")";
  kind_ = w_.deficient_only() ? QlmKind::Conic : QlmKind::QuasiLinear;
  double mass = 0.0;
  if (batched_available()) {
    const Region full = Region::full(w_.domain(), Kind::Open);
    const bool any = w_.source() ? (*w_.source())(full).cells().any() : w_.preimage_of_one(full).cells().any();
    mass = any ? 1.0 : 0.0;
  } else {
    w_.codomain()->domain().for_each([&](int y) { mass = std::max(mass, w_.at(y).total_mass()); });
  }
  norm_bound_ = scale * mass;
}

bool QuasiLinearMap::batched_available() const {
  return w_.source() != nullptr || !w_.point_map().empty() || w_.constant();
}

SampledFunction QuasiLinearMap::operator()(const SampledFunction& f, ThetaRoute route) const {
  const GridPtr& xg = w_.domain();
  const GridPtr& yg = w_.codomain();
  require_same_grid(*xg, *f.grid(), "quasi-linear map");
  f.validate();
  if (kind_ == QlmKind::Conic && f.min() < 0.0)
    throw Error("nonnegative-required", name_ + " is conic and takes only f >= 0");
  if (route == ThetaRoute::Batched && !batched_available())
    throw Error("invalid-params", "no batched route for " + name_);
  const bool batched = route != ThetaRoute::PerCell && batched_available();

  SampledFunction out(yg, 0.0);
  if (batched) {
    auto image = [&](const Region& a) {
      return w_.source() ? (*w_.source())(a).cells() : w_.preimage_of_one(a).cells();
    };
    const std::vector<double> breaks = breakpoints_of(f);
    const std::size_t k = breaks.size();
    std::vector<CellSet> ups;
    ups.reserve(k > 0 ? k - 1 : 0);
    for (std::size_t i = 0; i + 1 < k; ++i) ups.push_back(image(superlevel_set(f, breaks[i], true)));
    const CellSet full = breaks.front() < 0.0 ? image(Region::full(xg, Kind::Open)) : CellSet(yg->cell_count());
    std::vector<double> layer(ups.size());
    yg->domain().for_each([&](int y) {
      const auto yy = static_cast<std::size_t>(y);
      for (std::size_t i = 0; i < ups.size(); ++i)
        layer[i] = (ups[i].test(yy) ? 1.0 : 0.0) - (breaks[i] < 0.0 && full.test(yy) ? 1.0 : 0.0);
      out[y] = scale_ * layer_cake_sum(breaks, layer);
    });
    return out;
  }
  if (w_.constant()) {
    const double v = scale_ * quasi_integral(w_.at(static_cast<int>(yg->domain().first())), f).value;
    yg->domain().for_each([&](int y) { out[y] = v; });
    return out;
  }
  const std::vector<int> ys = yg->domain().indices();
  w_.at(ys.front());
  parallel_for(ys.size(), [&](std::size_t i) {
    out[ys[i]] = scale_ * quasi_integral(unmemoized(w_.at(ys[i])), f).value;
  });
  return out;
}

QuasiLinearMap theta_from_w(const MeasureMap& w) { return QuasiLinearMap(w); }

QuasiLinearMap scaled(const QuasiLinearMap& theta, double t) { return QuasiLinearMap(theta.w(), theta.scale() * t); }

// ------------------------------------------------------------ properties

AxiomReport check_qlm_properties(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t trials) {
  require_same_grid(*theta.domain(), *fs.grid(), "check_qlm_properties");
  AxiomReport rep;
  const bool conic = theta.kind() == QlmKind::Conic;
  const bool plane = !theta.domain()->window_is_space();
  const double nb = theta.norm_bound();
  auto same = [&](const std::string& axiom, const SampledFunction& a, const SampledFunction& b,
                  std::vector<SampledFunction> wit, std::string note = {}) {
    rep.expect_close(axiom, sup_distance(a, b), 0.0, fn_tol(a, b), {}, std::move(wit), std::move(note));
  };
  auto coef = [&](bool signed_) { return std::uniform_int_distribution<int>(signed_ ? -8 : 0, 8)(fs.rng()) / 4.0; };

  {
    const SampledFunction zero(theta.domain(), 0.0);
    rep.expect_close("zero", theta(zero).norm(), 0.0, 0.0, {}, {zero});
  }
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = sample_for(theta.kind(), fs, t);
    const SampledFunction tf = theta(f);

    for (double c : {0.0, 0.5, 2.0, 3.0}) same("homogeneity", theta(c * f), c * tf, {f}, "c = " + std::to_string(c));

    const SampledFunction g = fs.dominating(f);
    const SampledFunction tg = theta(g);
    rep.expect_leq("monotonicity", max_excess(tf, tg), 0.0, fn_tol(tf, tg), {}, {f, g});

    rep.expect_leq("norm-bound", tf.norm(), nb * f.norm(), tol_for(nb * f.norm(), 0.0), {}, {f});

    const SampledFunction h = sample_for(theta.kind(), fs, t + 1);
    const SampledFunction th = theta(h);
    const double lip = 2.0 * nb * sup_distance(f, h);
    rep.expect_leq("lipschitz", sup_distance(tf, th), lip, tol_for(lip, 0.0), {}, {f, h});

    {
      const auto [p, q] = fs.orthogonal_pair();
      same("orthogonal-additivity", theta(p + q), theta(p) + theta(q), {p, q});
      if (!conic) same("orthogonal-additivity", theta(p - q), theta(p) + theta(-1.0 * q), {p, -1.0 * q}, "f >= 0, g <= 0");
    }

    {
      const double range = std::max(f.norm(), 1e-3);
      const PiecewiseLinear p1 = fs.monotone_phi(range), p2 = fs.monotone_phi(range);
      const double a = coef(false), b = coef(false);
      const SampledFunction u = compose(f, p1), v = compose(f, p2);
      same("cone-linearity", theta(a * u + b * v), a * theta(u) + b * theta(v), {f});
    }

    if (!conic) {
      const double range = std::max(f.norm(), 1e-3);
      const PiecewiseLinear p1 = fs.arbitrary_phi(range, plane), p2 = fs.arbitrary_phi(range, plane);
      const double a = coef(true), b = coef(true);
      const SampledFunction u = compose(f, p1), v = compose(f, p2);
      same("subalgebra-linearity", theta(a * u + b * v), a * theta(u) + b * theta(v), {f});
    }
  }
  return rep;
}

CellSet square_law_failures(const QuasiLinearMap& theta, const SampledFunction& f) {
  const SampledFunction lhs = theta(f * f);
  const SampledFunction tf = theta(f);
  const SampledFunction rhs = tf * tf;
  CellSet out(theta.codomain()->cell_count());
  theta.codomain()->domain().for_each([&](int y) {
    if (std::abs(lhs[y] - rhs[y]) > tol_for(lhs[y], rhs[y])) out.set(static_cast<std::size_t>(y));
  });
  return out;
}

AxiomReport check_qh_criteria(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t trials) {
  require_same_grid(*theta.domain(), *fs.grid(), "check_qh_criteria");
  AxiomReport rep;
  const GridPtr& yg = theta.codomain();
  std::vector<SampledFunction> fs_seen;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = sample_for(theta.kind(), fs, t);
    const CellSet bad = square_law_failures(theta, f);
    rep.expect(bad.none(), {"square", {Region(yg, bad, Kind::Compact)}, {f}, static_cast<double>(bad.count()), 0.0,
                            0.0, "cells where theta(f^2) != theta(f)^2"});
    fs_seen.push_back(f);
  }
  if (!rep.ok()) return rep;
  for (const SampledFunction& f : fs_seen) {
    const SampledFunction tf = theta(f);
    const PiecewiseLinear phi = fs.monotone_phi(std::max(f.norm(), 1e-3));
    const SampledFunction lhs = theta(compose(f, phi));
    const SampledFunction rhs = compose(tf, phi);
    rep.expect_close("composition", sup_distance(lhs, rhs), 0.0, fn_tol(lhs, rhs), {}, {f});

    std::vector<double> c(5, 0.0);
    for (int k = 1; k <= 4; ++k) c[static_cast<std::size_t>(k)] = std::uniform_int_distribution<int>(0, 4)(fs.rng()) / 4.0;
    auto p = [&c](double x) { return x * (c[1] + x * (c[2] + x * (c[3] + x * c[4]))); };
    const SampledFunction plhs = theta(f.map(p));
    const SampledFunction prhs = tf.map(p);
    rep.expect_close("polynomial", sup_distance(plhs, prhs), 0.0, fn_tol(plhs, prhs), {}, {f});
  }
  return rep;
}

AxiomReport duality_check(const ImageTransform& q, const QuasiLinearMap& theta, const Measure& nu, FunctionSampler& fs,
                          std::size_t trials) {
  require_same_grid(*q.domain(), *theta.domain(), "duality_check");
  require_same_grid(*q.codomain(), *nu.grid(), "duality_check");
  AxiomReport rep;
  const Measure qnu = adjoint(q, nu);
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = sample_for(theta.kind(), fs, t);
    const double lhs = quasi_integral(qnu, f).value;
    const double rhs = quasi_integral(nu, theta(f)).value;
    rep.expect_close("duality", lhs, rhs, kDualityTolerance, {}, {f});

    const auto [a, b] = fs.orthogonal_pair();
    const SampledFunction prod = theta(a) * theta(b);
    rep.expect_close("orthogonal-product", prod.norm(), 0.0, kExactTolerance, {}, {a, b});
  }
  return rep;
}

AxiomReport level_set_identity_check(const ImageTransform& q, const QuasiLinearMap& theta, const SampledFunction& f,
                                     const std::vector<double>& thresholds) {
  require_same_grid(*q.domain(), *f.grid(), "level_set_identity_check");
  require_same_grid(*q.codomain(), *theta.codomain(), "level_set_identity_check");
  AxiomReport rep;
  const Grid& yg = *q.codomain();
  const SampledFunction tf = theta(f);
  const std::vector<double> values = f.distinct_values();
  for (double t : thresholds) {
    if (!(t > 0.0)) throw Error("invalid-params", "level-set thresholds must be positive");
    if (q.deficient_only() && std::binary_search(values.begin(), values.end(), t)) continue;
    for (bool strict : {true, false}) {
      const Region lhs = q(superlevel_set(f, t, strict));
      const Region rhs = superlevel_set(tf, t, strict);
      const CellSet diff = (lhs.cells() - rhs.cells()) | (rhs.cells() - lhs.cells());
      const CellSet ring = dilate(yg, lhs.cells(), Connectivity::Eight, 1) - erode(yg, lhs.cells(), Connectivity::Eight, 1);
      const CellSet outside = diff - ring;
      rep.expect(outside.none(), {"level-set", {lhs, rhs}, {f}, static_cast<double>(outside.count()), 0.0, 0.0,
                                  std::string(strict ? "open" : "compact") + " t = " + std::to_string(t)});
    }
  }
  return rep;
}

// ------------------------------------------------------------ homomorphism

HomomorphismResult homomorphism_check(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t pairs) {
  require_same_grid(*theta.domain(), *fs.grid(), "homomorphism_check");
  const MeasureMap& w = theta.w();
  const GridPtr& xg = theta.domain();
  const GridPtr& yg = theta.codomain();
  HomomorphismResult res;

  // Per-cell route: subadditivity of each w_y on its anchored pairs.
  std::vector<std::pair<Region, Region>> anchored_of_cell;
  if (w.point_map().empty()) {
    const std::vector<int> ys = w.constant() ? std::vector<int>{static_cast<int>(yg->domain().first())}
                                             : yg->domain().indices();
    for (int y : ys) {
      const Measure& m = w.at(y);
      if (m.additive_weights()) continue;
      const auto cp = anchored_compact_pairs(m);
      if (auto wit = subadditivity_witness(m, cp)) {
        res.cell = y;
        res.cell_witness = *wit;
        anchored_of_cell = cp;
        break;
      }
    }
  }

  // Function route.
  std::vector<std::pair<SampledFunction, SampledFunction>> cands;
  if (res.cell_witness) {
    cands.emplace_back(fs.ramp(res.cell_witness->first.cells(), 2), fs.ramp(res.cell_witness->second.cells(), 2));
    for (const auto& [c, k] : anchored_of_cell) cands.emplace_back(fs.ramp(c.cells(), 2), fs.ramp(k.cells(), 2));
  }
  const GridSpec& s = xg->spec();
  const double ext = std::min(s.x_max - s.x_min, s.y_max - s.y_min);
  RegionSampler points(xg, fs.rng()(), xg->window_is_space() ? 0 : 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto height = [&] { return std::uniform_int_distribution<int>(4, 32)(fs.rng()) * kQuantum; };
  for (std::size_t i = 0; i < pairs; ++i) {
    const Point c = points.point();
    const double r = ext * (0.08 + 0.25 * unit(fs.rng()));
    if (i % 2 == 0) {
      cands.emplace_back(fs.bump(c, r, height()), fs.bump(c, r * (0.3 + 0.5 * unit(fs.rng())), height(), 0.5));
    } else {
      const double a = 6.283185307179586 * unit(fs.rng());
      const Point d{c.x + r * std::cos(a), c.y + r * std::sin(a)};
      cands.emplace_back(fs.bump(c, r, height(), 0.3), fs.bump(d, r, height(), 0.3));
    }
  }
  for (const auto& [f, g] : cands) {
    if (!xg->window_is_space() && (!f.vanishes_on_frame() || !g.vanishes_on_frame())) continue;
    ++res.pairs_tried;
    const SampledFunction lhs = theta(f + g);
    const SampledFunction rhs = theta(f) + theta(g);
    if (sup_distance(lhs, rhs) > fn_tol(lhs, rhs)) {
      res.witness = std::make_pair(f, g);
      break;
    }
  }
  res.linear = !res.witness;
  if (res.linear && res.cell)
    throw Error("criteria-disagree", "theta is additive on every sampled pair but w at cell " +
                                         std::to_string(*res.cell) + " is not subadditive; enlarge the pair family");

  // A failing pair with no anchored cell witness: look for one among the
  // superlevel sets of the pair at a failing cell.
  if (res.witness && !res.cell && w.point_map().empty()) {
    const auto& [f, g] = *res.witness;
    const SampledFunction lhs = theta(f + g), rhs = theta(f) + theta(g);
    int y_bad = -1;
    yg->domain().for_each([&](int y) {
      if (y_bad < 0 && std::abs(lhs[y] - rhs[y]) > tol_for(lhs[y], rhs[y])) y_bad = y;
    });
    if (y_bad >= 0) {
      std::vector<std::pair<Region, Region>> cp;
      for (double t : f.distinct_values())
        for (double u : g.distinct_values())
          if (t > 0.0 && u > 0.0) cp.emplace_back(superlevel_set(f, t, false), superlevel_set(g, u, false));
      if (auto wit = subadditivity_witness(w.at(y_bad), cp)) {
        res.cell = y_bad;
        res.cell_witness = *wit;
      }
    }
  }
  return res;
}

// -------------------------------------------------------------------- Psi

std::vector<double> PsiSample::operator()(const SampledFunction& f) const {
  std::vector<double> out(measures.size());
  parallel_for(measures.size(), [&](std::size_t i) { out[i] = quasi_integral(unmemoized(measures[i]), f).value; });
  return out;
}

PsiSample psi_sample(std::vector<Measure> measures) {
  if (measures.empty()) throw Error("invalid-params", "empty measure sample");
  for (const Measure& m : measures) require_same_grid(*measures.front().grid(), *m.grid(), "psi_sample");
  return PsiSample{std::move(measures)};
}

AxiomReport psi_checks(const PsiSample& psi, FunctionSampler& fs, std::size_t trials) {
  require_same_grid(*psi.measures.front().grid(), *fs.grid(), "psi_checks");
  AxiomReport rep;
  const Grid& g = *fs.grid();
  bool simple = true, topological = true;
  std::vector<std::pair<std::size_t, int>> points;
  for (std::size_t i = 0; i < psi.measures.size(); ++i) {
    simple = simple && psi.measures[i].is_simple();
    topological = topological && psi.measures[i].is_topological();
    if (auto c = point_mass_cell_of(psi.measures[i]); c && !g.frame().test(static_cast<std::size_t>(*c)))
      points.emplace_back(i, *c);
  }
  auto max_gap = [](const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  };
  auto norm = [](const std::vector<double>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = topological && t % 2 == 1 ? fs.signed_function() : fs.nonnegative();
    const std::vector<double> pf = psi(f);

    {
      const SampledFunction h = fs.dominating(f);
      const std::vector<double> ph = psi(h);
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pf.size(); ++i) worst = std::max(worst, pf[i] - ph[i]);
      rep.expect_leq("order", worst, 0.0, tol_for(norm(pf), norm(ph)), {}, {f, h});
    }

    if (!points.empty()) {
      const auto& [idx, cell] = points[std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(fs.rng())];
      SampledFunction h = f;
      h[cell] += kQuantum;
      const double gap = max_gap(psi(h), pf);
      rep.expect(gap > tol_for(norm(pf), 0.0), {"injectivity", {}, {f, h}, gap, 0.0, 0.0,
                                                "raised f at cell " + std::to_string(cell)});
      (void)idx;
    }

    if (simple) {
      const std::vector<double> sq = psi(f * f);
      double worst = 0.0;
      for (std::size_t i = 0; i < pf.size(); ++i) worst = std::max(worst, std::abs(sq[i] - pf[i] * pf[i]));
      rep.expect_close("multiplicativity", worst, 0.0, tol_for(norm(sq), 0.0), {}, {f}, "f^2");

      const SampledFunction fp = f.positive_part();
      const PiecewiseLinear phi = fs.monotone_phi(std::max(fp.norm(), 1e-3));
      const SampledFunction pfp = compose(fp, phi);
      const std::vector<double> a = psi(fp), b = psi(pfp), ab = psi(fp * pfp);
      worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(ab[i] - a[i] * b[i]));
      rep.expect_close("multiplicativity", worst, 0.0, tol_for(norm(ab), 0.0), {}, {fp}, "f * phi(f)");

      const double fn = f.norm();
      rep.expect_leq("isometry", norm(pf), fn, tol_for(fn, 0.0), {}, {f});
      for (const auto& [i, c] : points) {
        if (std::abs(f[c]) == fn) {
          rep.expect_close("isometry", norm(pf), fn, tol_for(fn, 0.0), {}, {f}, "point mass at an extremizer");
          break;
        }
      }
    }

    {
      const std::size_t n = psi.measures.size();
      const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(fs.rng());
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(fs.rng());
      const Measure sum = combination({1.0, 1.0}, {psi.measures[i], psi.measures[j]});
      const double lhs = quasi_integral(sum, f).value, rhs = pf[i] + pf[j];
      rep.expect_close("measure-additivity", lhs, rhs, tol_for(lhs, rhs), {}, {f}, "mu + nu");
      for (double c : {0.5, 2.0}) {
        const Measure sc = combination({c}, {psi.measures[i]});
        const double l2 = quasi_integral(sc, f).value, r2 = c * pf[i];
        rep.expect_close("measure-additivity", l2, r2, tol_for(l2, r2), {}, {f}, "t * mu");
      }
    }
  }
  return rep;
}

// ------------------------------------------------------------- structure

AxiomReport compose_check(const QuasiLinearMap& theta2, const QuasiLinearMap& theta1, FunctionSampler& fs,
                          std::size_t trials) {
  const ImageTransform* q1 = theta1.w().source();
  const ImageTransform* q2 = theta2.w().source();
  if (!q1 || !q2 || theta1.scale() != 1.0 || theta2.scale() != 1.0)
    throw Error("invalid-params", "compose_check needs maps read off image transforms");
  const QuasiLinearMap theta = theta_from_w(measure_map_from_it(compose(*q2, *q1)));
  const QlmKind kind =
      theta1.kind() == QlmKind::Conic || theta2.kind() == QlmKind::Conic ? QlmKind::Conic : QlmKind::QuasiLinear;
  AxiomReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = sample_for(kind, fs, t);
    const SampledFunction lhs = theta(f);
    const SampledFunction rhs = theta2(theta1(f));
    rep.expect_close("compose", sup_distance(lhs, rhs), 0.0, kDualityTolerance, {}, {f});
  }
  return rep;
}

AxiomReport factorization_check(const QuasiLinearMap& theta, FunctionSampler& fs, std::size_t trials) {
  const MeasureMap& w = theta.w();
  const GridPtr& yg = theta.codomain();
  // Range of w, with the index of w_y for every y.
  std::vector<Measure> range;
  std::vector<std::size_t> slot(yg->cell_count(), 0);
  if (w.constant()) {
    range.push_back(w.at(static_cast<int>(yg->domain().first())));
  } else if (!w.point_map().empty()) {
    std::unordered_map<int, std::size_t> seen;
    yg->domain().for_each([&](int y) {
      const int x = w.point_map()[static_cast<std::size_t>(y)];
      auto [it, fresh] = seen.emplace(x, range.size());
      if (fresh) range.push_back(catalog::point_mass_cell(theta.domain(), x));
      slot[static_cast<std::size_t>(y)] = it->second;
    });
  } else {
    std::unordered_map<const void*, std::size_t> seen;
    yg->domain().for_each([&](int y) {
      const Measure& m = w.at(y);
      auto [it, fresh] = seen.emplace(m.id(), range.size());
      if (fresh) range.push_back(m);
      slot[static_cast<std::size_t>(y)] = it->second;
    });
  }
  const PsiSample psi = psi_sample(std::move(range));
  const double t_scale = theta.scale();
  auto H = [&](const std::vector<double>& p) {
    SampledFunction out(yg, 0.0);
    yg->domain().for_each([&](int y) { out[y] = t_scale * p[slot[static_cast<std::size_t>(y)]]; });
    return out;
  };
  AxiomReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = sample_for(theta.kind(), fs, t);
    const SampledFunction g = sample_for(theta.kind(), fs, t + 1);
    const std::vector<double> pf = psi(f), pg = psi(g);
    const SampledFunction hf = H(pf), hg = H(pg);
    rep.expect_close("factorization", sup_distance(theta(f), hf), 0.0, 0.0, {}, {f});

    std::vector<double> sum(pf.size()), prod(pf.size());
    for (std::size_t i = 0; i < pf.size(); ++i) {
      sum[i] = pf[i] + pg[i];
      prod[i] = pf[i] * pg[i];
    }
    const SampledFunction hs = H(sum), hp = H(prod), hfg = hf * hg, hpl = hf + hg;
    rep.expect_close("H-sum", sup_distance(hs, hpl), 0.0, fn_tol(hs, hpl), {}, {f, g});
    rep.expect_close("H-product", sup_distance(hp, hfg), 0.0, fn_tol(hp, hfg), {}, {f, g});
  }
  return rep;
}

AxiomReport representable_check(const std::vector<double>& coeffs, const std::vector<Measure>& simple_measures,
                                FunctionSampler& fs, RegionSampler& rs, std::size_t trials) {
  if (coeffs.empty() || coeffs.size() != simple_measures.size())
    throw Error("not-convex", "need one coefficient per measure");
  double total = 0.0;
  for (double c : coeffs) {
    if (!(c >= 0.0)) throw Error("not-convex", "coefficients must be nonnegative");
    total += c;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("not-convex", "coefficients must sum to 1");
  bool topological = true;
  for (const Measure& m : simple_measures) {
    if (!m.is_simple()) throw Error("invalid-params", m.name() + " is not simple");
    topological = topological && m.is_topological();
  }
  const Measure lambda = combination(coeffs, simple_measures, "representable");
  AxiomReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledFunction f = topological && t % 2 == 1 ? fs.signed_function() : fs.nonnegative();
    double rhs = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) rhs += coeffs[i] * quasi_integral(simple_measures[i], f).value;
    rep.expect_close("integral", quasi_integral(lambda, f).value, rhs, kExactTolerance, {}, {f});

    const Region a = rs.region(t % 2 ? Kind::Open : Kind::Compact);
    double v = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * simple_measures[i](a);
    rep.expect_close("value", lambda(a), v, kExactTolerance, {a});
  }
  return rep;
}

}  // namespace tmkit
