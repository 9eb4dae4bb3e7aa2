#include "volterra/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>

#include "volterra/parallel.hpp"

namespace volterra {

std::string to_string(IntegralKind k) {
  switch (k) {
    case IntegralKind::IT: return "IT";
    case IntegralKind::IS: return "IS";
    case IntegralKind::IB: return "IB";
  }
  return "IT";
}

std::string to_string(PointwiseKind k) {
  return "K" + std::to_string(static_cast<int>(k) + 1);
}

IntegralKind parse_integral_kind(const std::string& s) {
  if (s == "IT") return IntegralKind::IT;
  if (s == "IS") return IntegralKind::IS;
  if (s == "IB") return IntegralKind::IB;
  throw std::invalid_argument("unknown integral kind '" + s + "' (expected IT, IS or IB)");
}

PointwiseKind parse_pointwise_kind(const std::string& s) {
  if (s.size() == 2 && s[0] == 'K' && s[1] >= '1' && s[1] <= '5') {
    return static_cast<PointwiseKind>(s[1] - '1');
  }
  throw std::invalid_argument("unknown pointwise kind '" + s + "' (expected K1..K5)");
}

std::string to_string(ProfileVerdict v) {
  switch (v) {
    case ProfileVerdict::CompactConsistent: return "Compact-consistent";
    case ProfileVerdict::NoncompactConsistent: return "Noncompact-consistent";
    case ProfileVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

double one_minus_r2(double r) { return (1.0 - r) * (1.0 + r); }

bool identically_one(const RadialWeight& w) {
  const auto e = w.standard_exponent();
  return e && *e == 0.0;
}

}  // namespace

double radial_integrand(IntegralKind kind, const SymbolSpec& g, const RadialWeight& nu, double r,
                        double theta) {
  const cplx z = std::polar(r, theta);
  switch (kind) {
    case IntegralKind::IT: return std::abs(g.derivative(z)) / nu(r);
    case IntegralKind::IS: return std::abs(g.value(z)) / (one_minus_r2(r) * nu(r));
    case IntegralKind::IB: return std::abs(g.value(z)) / nu(r);
  }
  return 0.0;
}

double radial_integral(IntegralKind kind, const SymbolSpec& g, const RadialWeight& nu,
                       double theta, double t_lo, double t_hi, const QuadSpec& quad) {
  if (!(t_lo >= 0.0 && t_lo < t_hi && t_hi < 1.0)) {
    throw std::invalid_argument("radial_integral: need 0 <= t_lo < t_hi < 1");
  }
  auto f = [&](double r) { return radial_integrand(kind, g, nu, r, theta); };
  return integrate_radial(f, t_lo, t_hi, quad).value;
}

CriterionResult boundedness_sup(IntegralKind kind, const SymbolSpec& g, const RadialWeight& nu,
                                const RadialWeight& mu, const GridSpec& grid,
                                const QuadSpec& quad, int jobs) {
  grid.validate();
  quad.validate();
  const bool sym = g.real_coefficients();
  const int na = grid.sampled_angles(sym);
  const auto radii = grid.radii();
  const int nr = grid.radial_points();

  // Q(r_j, theta_k) from one cumulative pass per ray.
  std::vector<std::vector<double>> table(na);
  parallel_for(static_cast<std::size_t>(na), jobs, [&](std::size_t k) {
    const double theta = grid.angle(static_cast<int>(k));
    auto f = [&](double r) { return radial_integrand(kind, g, nu, r, theta); };
    auto cum = cumulative_integral(f, radii, quad);
    for (int j = 0; j < nr; ++j) cum[j] *= mu(radii[j]);
    table[k] = std::move(cum);
  });

  auto q = [&](double r, double theta) -> double {
    const double step = grid.angle_step();
    const long k = std::lround(theta / step);
    if (k >= 0 && k < na && grid.angle(static_cast<int>(k)) == theta) {
      const long j = r <= 0.0 ? 0 : std::lround(-std::log2(1.0 - r) * grid.substeps);
      if (j >= 0 && j < nr && radii[j] == r) return table[k][j];
    }
    if (r <= 0.0) return 0.0;
    return mu(r) * radial_integral(kind, g, nu, theta, 0.0, r, quad);
  };
  const SupEstimate est = sup_over_disk(q, grid, sym, 1);

  CriterionResult res;
  res.kind = to_string(kind);
  res.mode = identically_one(mu) ? Mode::BoundaryOne : Mode::Sup;
  res.value = est.value;
  res.r = est.r;
  res.theta = est.theta;
  res.history = est.level_history;
  res.verdict = classify_sup(res.history);
  return res;
}

CriterionResult pointwise_quantity(PointwiseKind kind, const SymbolSpec& g, const RadialWeight& nu,
                                   const RadialWeight& mu, Mode mode, const GridSpec& grid,
                                   const AssocPolicy& assoc, int jobs) {
  if (mode != Mode::Sup && mode != Mode::BoundaryLimit) {
    throw std::invalid_argument("pointwise_quantity: mode must be Sup or BoundaryLimit");
  }
  CriterionResult res;
  res.kind = to_string(kind);
  res.mode = mode;

  const bool uses_assoc =
      kind == PointwiseKind::K2 || kind == PointwiseKind::K4 || kind == PointwiseKind::K5;
  std::function<double(double)> nut_upper;
  if (uses_assoc) {
    if (nu.is_analytic()) {
      res.note = "nu~ = nu (analytic witness)";
    } else if (check_property_U(nu, assoc.u_levels).holds()) {
      res.note = "nu~ replaced by nu (property (U): equal up to the essential constant)";
    } else {
      auto bounds = std::make_shared<MonomialBounds>(nu, assoc.monomial_n_max);
      nut_upper = [bounds, nu](double r) { return std::max(nu(r), bounds->upper(r).first); };
      res.note = "nu~ bracketed by [nu, monomial upper bound]";
    }
  }

  auto expression = [&](const std::function<double(double)>& nut) -> DiskFunction {
    return [&, nut](double r, double theta) {
      const cplx z = std::polar(r, theta);
      switch (kind) {
        case PointwiseKind::K1: return mu(r) * std::abs(g.value(z)) / nu(r);
        case PointwiseKind::K2: return mu(r) * std::abs(g.value(z)) / nut(r);
        case PointwiseKind::K3: return mu(r) * std::abs(g.value(z)) / (one_minus_r2(r) * nu(r));
        case PointwiseKind::K4: return one_minus_r2(r) * mu(r) * std::abs(g.value(z)) / nut(r);
        case PointwiseKind::K5:
          return one_minus_r2(r) * mu(r) * std::abs(g.derivative(z)) / nut(r);
      }
      return 0.0;
    };
  };

  const bool sym = g.real_coefficients();
  auto evaluate_with = [&](const std::function<double(double)>& nut, CriterionResult& out) {
    const DiskFunction f = expression(nut);
    if (mode == Mode::Sup) {
      const SupEstimate est = sup_over_disk(f, grid, sym, jobs);
      out.value = est.value;
      out.r = est.r;
      out.theta = est.theta;
      out.history = est.level_history;
      out.verdict = classify_sup(out.history);
    } else {
      std::vector<double> thetas;
      out.history = boundary_profile(f, grid, sym, &thetas);
      out.value = out.history.back();
      out.r = dyadic_radius(grid.levels);
      out.theta = thetas.back();
      out.verdict = classify_limit(out.history);
    }
  };

  const std::function<double(double)> nu_fn = [nu](double r) { return nu(r); };
  evaluate_with(nu_fn, res);
  if (nut_upper) {
    // nu <= nu~ <= upper, so the quantity lies between the two evaluations.
    CriterionResult low = res;
    evaluate_with(nut_upper, low);
    res.interval = true;
    res.value_upper = res.value;
    res.value = low.value;
    if (low.verdict != res.verdict) res.verdict = Verdict::Inconclusive;
  }
  return res;
}

ProfileVerdict classify_profile(const std::vector<double>& c, double tol_abs) {
  if (c.size() < 4) return ProfileVerdict::Inconclusive;
  const double first = c.front();
  const double last = c.back();
  const auto tail_begin = c.end() - 4;
  bool nonincreasing = true;
  bool nondecreasing = true;
  for (auto it = tail_begin + 1; it != c.end(); ++it) {
    if (*it > *(it - 1) * (1.0 + 1e-9) + tol_abs) nonincreasing = false;
    if (*it < *(it - 1) * (1.0 - 1e-9)) nondecreasing = false;
  }
  const double floor = 0.05 * std::max(first, tol_abs);
  if (last < floor && nonincreasing) return ProfileVerdict::CompactConsistent;
  const auto [lo, hi] = std::minmax_element(tail_begin, c.end());
  if (last >= floor && (nondecreasing || *lo >= 0.8 * *hi)) {
    return ProfileVerdict::NoncompactConsistent;
  }
  return ProfileVerdict::Inconclusive;
}

CompactnessProfile compactness_double_limit(IntegralKind kind, const SymbolSpec& g,
                                            const RadialWeight& nu, const RadialWeight& mu,
                                            const GridSpec& grid, const QuadSpec& quad,
                                            const DoubleLimitSpec& spec, int jobs) {
  grid.validate();
  quad.validate();
  if (spec.m_lo < 1 || spec.m_hi < spec.m_lo || spec.depth < 1 ||
      spec.m_hi + spec.depth > 50) {
    throw std::invalid_argument("compactness_double_limit: invalid level range");
  }
  const bool sym = g.real_coefficients();
  const int na = grid.sampled_angles(sym);
  const double dtheta = grid.angle_step();

  CompactnessProfile prof;
  prof.kind = kind;
  for (int m = spec.m_lo; m <= spec.m_hi; ++m) {
    std::vector<double> knots{dyadic_radius(m)};
    for (int i = 1; i <= spec.depth * grid.substeps; ++i) {
      knots.push_back(dyadic_radius(m + static_cast<double>(i) / grid.substeps));
    }
    std::vector<double> weights(knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) weights[i] = mu(knots[i]);

    // Best (value, t1) along the ray at angle theta.
    auto ray = [&](double theta) {
      auto f = [&](double r) { return radial_integrand(kind, g, nu, r, theta); };
      const auto cum = cumulative_integral(f, knots, quad);
      std::pair<double, double> best{0.0, knots[1]};
      for (std::size_t i = 1; i < knots.size(); ++i) {
        const double v = weights[i] * cum[i];
        if (v > best.first) best = {v, knots[i]};
      }
      return best;
    };

    std::vector<std::pair<double, double>> per_angle(na);
    parallel_for(static_cast<std::size_t>(na), jobs,
                 [&](std::size_t k) { per_angle[k] = ray(grid.angle(static_cast<int>(k))); });
    int best_k = 0;
    for (int k = 1; k < na; ++k) {
      if (per_angle[k].first > per_angle[best_k].first) best_k = k;
    }
    double value = per_angle[best_k].first;
    double t1 = per_angle[best_k].second;
    double theta = grid.angle(best_k);
    if (value > 0.0) {
      const auto gs = golden_section_max([&](double t) { return ray(t).first; }, theta - dtheta,
                                         theta + dtheta, dtheta * grid.refine_tol);
      if (gs.value > value) {
        value = gs.value;
        theta = gs.x;
        t1 = ray(theta).second;
      }
    }
    prof.levels.push_back(m);
    prof.values.push_back(value);
    prof.witness_t1.push_back(t1);
    prof.witness_theta.push_back(theta);
  }

  // Least-squares line through the last (up to) 4 points against 2^{-m}.
  const std::size_t n = prof.values.size();
  const std::size_t k0 = n >= 4 ? n - 4 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double cnt = static_cast<double>(n - k0);
  for (std::size_t i = k0; i < n; ++i) {
    const double x = std::exp2(-prof.levels[i]);
    sx += x;
    sy += prof.values[i];
    sxx += x * x;
    sxy += x * prof.values[i];
  }
  const double den = cnt * sxx - sx * sx;
  prof.extrapolated = den > 0.0 ? (sy * sxx - sx * sxy) / den : prof.values.back();
  prof.verdict = classify_profile(prof.values);
  return prof;
}

CriterionResult CompactnessProfile::as_result() const {
  CriterionResult res;
  res.kind = to_string(kind);
  res.mode = Mode::DoubleLimit;
  res.value = values.empty() ? 0.0 : values.back();
  res.history = values;
  if (!values.empty()) {
    res.r = witness_t1.back();
    res.theta = witness_theta.back();
  }
  switch (verdict) {
    case ProfileVerdict::CompactConsistent: res.verdict = Verdict::ZeroLimit; break;
    case ProfileVerdict::NoncompactConsistent: res.verdict = Verdict::NonzeroLimit; break;
    case ProfileVerdict::Inconclusive: res.verdict = Verdict::Inconclusive; break;
  }
  return res;
}

bool sg_into_hinf_compact(const SymbolSpec& g, double tol) { return g.is_zero(tol); }

}  // namespace volterra
