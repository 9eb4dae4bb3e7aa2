// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned
// below. Exit status is the number of failed criteria outside
// kKnownUnattainable; those still print FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "volterra/criteria.hpp"
#include "volterra/norms.hpp"
#include "volterra/operators.hpp"
#include "volterra/series.hpp"
#include "volterra/symbols.hpp"
#include "volterra/verify.hpp"
#include "volterra/weights.hpp"

using namespace volterra;

namespace {

constexpr double kLog2 = std::numbers::ln2;

// Criterion 10 on the S_g rows: the IS quantity bounds ||S_g|| only up to
// the derivative-growth constant, and S_z on H^inf_{std:1} has norm near 1
// against an IS value of 0.5 (take f = z^n).
const std::set<int> kKnownUnattainable{10};

int failures = 0;
int unexpected = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  const bool known = kKnownUnattainable.count(id) > 0;
  std::printf("[%s] %2d %s: %s%s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str(),
              !pass && known ? " [known unattainable]" : "");
  std::fflush(stdout);
  if (!pass) ++failures;
  if (!pass && !known) ++unexpected;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

TruncatedSeries random_series(std::mt19937_64& rng, std::size_t degree) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) x = {n(rng), n(rng)};
  return TruncatedSeries(std::move(c));
}

// Brute-force oracles straight from the coefficient definitions.
std::vector<cplx> oracle_product(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t n) {
  std::vector<cplx> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t i = 0; i <= k; ++i) out[k] += a[i] * b[k - i];
  return out;
}

double max_diff(const TruncatedSeries& s, const std::vector<cplx>& o) {
  double m = 0.0;
  const std::size_t n = std::max(s.degree() + 1, o.size());
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(s[k] - (k < o.size() ? o[k] : cplx{})));
  return m;
}

void criterion1() {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> deg(0, 64);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const TruncatedSeries a = random_series(rng, deg(rng));
    const TruncatedSeries b = random_series(rng, deg(rng));
    const std::size_t n = a.degree() + b.degree();
    worst = std::max(worst, max_diff(cauchy_product(a, b, n), oracle_product(a, b, n)));

    std::vector<cplx> d(std::max<std::size_t>(a.degree(), 1));
    for (std::size_t k = 1; k <= a.degree(); ++k) d[k - 1] = static_cast<double>(k) * a[k];
    worst = std::max(worst, max_diff(differentiate(a), d));

    std::vector<cplx> p(a.degree() + 2);
    for (std::size_t k = 0; k <= a.degree(); ++k) p[k + 1] = a[k] / static_cast<double>(k + 1);
    worst = std::max(worst, max_diff(volterra_antiderivative(a), p));
  }
  report(1, worst <= 1e-12, "series vs brute-force oracles",
         fmt("200 random pairs, degree <= 64, max coeff error %.3g (tol 1e-12)", worst));
}

void criterion2() {
  const std::vector<std::string> catalog{"neglog1mz", "identity", "cayleypow:0.5", "cayleypow:2",
                                         "expz",      "zero",     "poly:[1,-2,0.5,3]"};
  double worst_t = 0.0;
  double worst_s = 0.0;
  for (const auto& name : catalog) {
    const SymbolSpec g = make_symbol(name);
    const std::size_t n = g.coeffs().degree();
    const TruncatedSeries tg = apply_Tg(TruncatedSeries{1.0}, g, std::max<std::size_t>(n, 1));
    for (std::size_t k = 1; k <= n; ++k) {
      worst_t = std::max(worst_t, std::abs(tg[k] - g.coeffs()[k]) / std::max(1.0, std::abs(g.coeffs()[k])));
    }
    worst_t = std::max(worst_t, std::abs(tg[0]));
    const TruncatedSeries sg = apply_Sg(TruncatedSeries{cplx(2.5, -1.0)}, g, std::max<std::size_t>(n, 1));
    for (std::size_t k = 0; k <= sg.degree(); ++k) worst_s = std::max(worst_s, std::abs(sg[k]));
  }
  // (k g_k)/k can round once; anything beyond a few ulps is a real error.
  report(2, worst_t <= 1e-15 && worst_s == 0.0, "T_g(1) = g - g(0), S_g(const) = 0",
         fmt("%zu catalog symbols, T_g rel err %.3g (tol 1e-15), S_g max |coeff| %.3g (exact 0)",
             catalog.size(), worst_t, worst_s));
}

void criterion3() {
  bool ok = true;
  std::string detail;
  for (double a : {0.5, 1.0, 2.0}) {
    const RadialWeight w = RadialWeight::standard(a);
    const PropertyU u = check_property_U(w);
    const bool normal = is_normal(w);
    const double ratio = u.ratios.at(23);
    const double err = std::abs(ratio - std::exp2(-a));
    ok = ok && normal && err <= 1e-3;
    detail += fmt("std:%g normal=%d ratio24=%.6f (2^-a=%.6f); ", a, normal, ratio, std::exp2(-a));
  }
  for (double a : {0.5, 1.0}) {
    const RadialWeight w = RadialWeight::logarithmic(a);
    const bool u = check_property_U(w).holds();
    const bool l = check_property_L(w).holds();
    ok = ok && u && !l;
    detail += fmt("log:%g U=%d L=%d; ", a, u, l);
  }
  {
    const RadialWeight w = RadialWeight::one();
    const bool u = check_property_U(w).holds();
    const bool l = check_property_L(w).holds();
    ok = ok && u && !l;
    detail += fmt("one U=%d L=%d", u, l);
  }
  report(3, ok, "weight taxonomy", detail);
}

void criterion4() {
  const RadialWeight nu1 = RadialWeight::standard(1.0);
  const AssociatedSandwich base = associated_weight_bounds(nu1, {0.5}, 64, LPSpec{.enabled = false});
  const SandwichPoint& p = base.points.at(0);
  bool ok = std::abs(p.lower - 0.75) <= 1e-12 && std::abs(p.monomial_upper - 0.7699) <= 1e-3;
  std::string detail = fmt("std:1 at r=0.5: [%.6f, %.6f] (want [0.75, 0.7699 +- 1e-3]); ", p.lower,
                           p.monomial_upper);

  LPSpec lp;
  lp.degree = 64;
  lp.ladder_start = 16;
  for (const char* spec : {"std:0.5", "std:1", "std:2"}) {
    const RadialWeight w = make_weight(spec);
    if (!w.is_analytic()) continue;
    for (double r : {0.5, 0.9}) {
      const MonomialBounds mb(w, 64);
      const double lower = w(r);
      std::vector<std::pair<int, double>> ladder;
      lp_associated_upper(w, r, lp, nullptr, &ladder);
      std::vector<double> widths;
      for (const auto& [degree, bound] : ladder) widths.push_back(std::min(bound, mb.upper(r).first) - lower);
      bool mono = widths.size() >= 3;
      for (std::size_t i = 1; i < widths.size(); ++i) mono = mono && widths[i] <= widths[i - 1] + 1e-12;
      ok = ok && mono;
      detail += fmt("%s r=%.1f widths", spec, r);
      for (std::size_t i = 0; i < ladder.size(); ++i) detail += fmt(" d%d:%.2e", ladder[i].first, widths[i]);
      detail += mono ? "; " : " (not monotone); ";
    }
  }
  report(4, ok, "associated-weight sandwich", detail);
}

// Q(t) = (1-t^2)(1/4 ln(1/(1-t)) + 1/2 t/(1-t) + 1/4 ln(1+t)).
double primitive_it(double t) { return 0.25 * -std::log1p(-t) + 0.5 * t / (1.0 - t) + 0.25 * std::log1p(t); }

double oracle_case5() {
  double best = 0.0;
  for (int i = 0; i <= 400000; ++i) {
    const double t = 1.0 - std::exp2(-20.0 * i / 400000.0);
    best = std::max(best, (1.0 - t * t) * primitive_it(t));
  }
  return best;
}

CriterionResult case5_result;

void criterion5() {
  const SymbolSpec g = make_symbol("neglog1mz");
  const RadialWeight nu = RadialWeight::standard(1.0);
  case5_result = boundedness_sup(IntegralKind::IT, g, nu, nu, GridSpec{});
  const CriterionResult& r = case5_result;
  const double oracle = oracle_case5();
  const double theta = std::remainder(r.theta, 2.0 * std::numbers::pi);
  const bool ok = r.verdict == Verdict::Finite && r.value >= 1.00 && r.value <= 1.03 &&
                  std::abs(theta) <= 2.0 * std::numbers::pi / 256 && r.r >= 0.9 && r.r <= 0.999 &&
                  std::abs(r.value - oracle) <= 1e-3 * oracle;
  report(5, ok, "IT boundedness, g=-log(1-z), nu=mu=std:1",
         fmt("%s value %.6f (in [1.00,1.03]; closed form %.6f, rel tol 1e-3), t*=%.4f (in [0.9,0.999]), "
             "theta*=%.4g (|.| <= 2pi/256)",
             to_string(r.verdict).c_str(), r.value, oracle, r.r, theta));
}

void criterion6() {
  const SymbolSpec g = make_symbol("neglog1mz");
  const RadialWeight one = RadialWeight::one();
  const CriterionResult r = boundedness_sup(IntegralKind::IT, g, one, one, GridSpec{});
  bool ok = r.verdict == Verdict::Divergent;
  std::string detail = to_string(r.verdict) + ", mode " + to_string(r.mode);
  for (int m : {8, 10, 12}) {
    const double want = m * kLog2;
    const double got = r.history.at(m);
    const double ray = radial_integral(IntegralKind::IT, g, one, 0.0, 0.0, dyadic_radius(m));
    ok = ok && std::abs(got / want - 1.0) <= 0.05 && std::abs(ray / want - 1.0) <= 0.05;
    detail += fmt("; m=%d level %.4f, ray theta=0 %.4f (m log2 = %.4f, +-5%%)", m, got, ray, want);
  }
  report(6, ok, "IT divergence, nu=mu=1", detail);
}

void criterion7() {
  const SymbolSpec g = make_symbol("neglog1mz");
  const RadialWeight nu = RadialWeight::standard(1.0);
  const CriterionResult k5 = pointwise_quantity(PointwiseKind::K5, g, nu, nu, Mode::Sup, GridSpec{});
  const bool ok = k5.value >= 1.95 && k5.value <= 2.00 && k5.verdict == Verdict::Finite &&
                  case5_result.verdict == Verdict::Finite;
  report(7, ok, "K5 sup cross-check",
         fmt("K5 %.6f (in [1.95,2.00], oracle 2), %s; criterion 5 %s", k5.value, to_string(k5.verdict).c_str(),
             to_string(case5_result.verdict).c_str()));
}

void criterion8() {
  const SymbolSpec g = make_symbol("identity");
  const RadialWeight nu = RadialWeight::standard(1.0);
  const RadialWeight mu = RadialWeight::standard(2.0);
  const CompactnessProfile p = compactness_double_limit(IntegralKind::IT, g, nu, mu, GridSpec{});
  const CriterionResult k5 = pointwise_quantity(PointwiseKind::K5, g, nu, mu, Mode::BoundaryLimit, GridSpec{});
  const double c4 = p.values.front();
  const double c12 = p.values.back();
  const bool ok = p.levels.front() == 4 && p.levels.back() == 12 &&
                  p.verdict == ProfileVerdict::CompactConsistent && c12 < 0.05 * c4 &&
                  k5.verdict == Verdict::ZeroLimit;
  report(8, ok, "compactness, g=z, nu=std:1, mu=std:2",
         fmt("%s, C(4)=%.4g C(12)=%.4g (< 0.05 C(4)); K5 boundary %s (last %.3g)",
             to_string(p.verdict).c_str(), c4, c12, to_string(k5.verdict).c_str(), k5.value));
}

// C(m) on the same dyadic t1 sub-grid along theta = 0, from the primitive.
double oracle_profile(int m, const GridSpec& grid, const DoubleLimitSpec& spec) {
  const double t2 = dyadic_radius(m);
  double best = 0.0;
  for (int i = 1; i <= spec.depth * grid.substeps; ++i) {
    const double t1 = dyadic_radius(m + static_cast<double>(i) / grid.substeps);
    best = std::max(best, (1.0 - t1 * t1) * (primitive_it(t1) - primitive_it(t2)));
  }
  return best;
}

void criterion9() {
  const SymbolSpec g = make_symbol("neglog1mz");
  const RadialWeight nu = RadialWeight::standard(1.0);
  const GridSpec grid{};
  const DoubleLimitSpec spec{};
  const CompactnessProfile p = compactness_double_limit(IntegralKind::IT, g, nu, nu, grid);
  bool ok = p.verdict == ProfileVerdict::NoncompactConsistent && case5_result.verdict == Verdict::Finite;
  std::string detail = to_string(p.verdict) + "; criterion 5 " + to_string(case5_result.verdict);
  for (std::size_t i = 0; i < p.levels.size(); ++i) {
    const int m = p.levels[i];
    if (m < 8) continue;
    const double oracle = oracle_profile(m, grid, spec);
    ok = ok && p.values[i] >= 0.8 && p.values[i] <= 1.1 && std::abs(p.values[i] - oracle) <= 1e-3 * oracle;
    detail += fmt("; C(%d)=%.5f (oracle %.5f)", m, p.values[i], oracle);
  }
  report(9, ok, "non-compactness, g=-log(1-z), nu=mu=std:1", detail + " (in [0.8,1.1], rel tol 1e-3)");
}

double oracle_witness_one() {
  // ||T_g 1|| = sup (1-r^2) log(1/(1-r)) over r, attained on theta = 0.
  double best = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double r = i / 200000.0 * (1.0 - 1e-9);
    best = std::max(best, (1.0 - r * r) * -std::log1p(-r));
  }
  return best;
}

EquivalenceMatrix sweep_first;

void criterion10() {
  const std::set<std::string> ids{"Thm 1", "Cor 1", "Remark 1", "Thm 2", "Cor 2", "Prop 1"};
  bool ok = true;
  int checked = 0;
  std::string worst;
  double worst_ratio = 0.0;
  for (const auto& rep : sweep_first.reports) {
    for (const auto& row : rep.rows) {
      if (!ids.count(row.id) || !row.result || row.result->verdict != Verdict::Finite) continue;
      ++checked;
      const double value = row.result->value;
      const double ratio = value > 0.0 ? rep.norm.lower / value : (rep.norm.lower > 0.0 ? INFINITY : 0.0);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = rep.spec.label() + " " + row.id;
      }
      if (rep.norm.lower > value * 1.01 + 1e-12) {
        ok = false;
        std::printf("       criterion 10 violation: %s %s lower %.6f > %.6f * 1.01\n", rep.spec.label().c_str(),
                    row.id.c_str(), rep.norm.lower, value);
      }
    }
  }
  const SymbolSpec g = make_symbol("neglog1mz");
  const RadialWeight nu = RadialWeight::standard(1.0);
  const NormEstimate est = opnorm_lower(OpKind::Tg, g, nu, nu, SpaceKind::Hinf, SpaceKind::Hinf);
  const double f1 = oracle_witness_one();
  const bool case5 = est.lower >= 0.60 && est.lower <= case5_result.value * 1.01 && std::abs(f1 - 0.614) <= 0.01;
  ok = ok && checked > 0 && case5;
  report(10, ok, "norm domination",
         fmt("%d Finite IT/IS sup rows, max lower/value %.4f at %s (<= 1.01); case 5 lower %.4f "
             "(>= 0.60, <= %.4f * 1.01, witness f=1 oracle %.4f) %s",
             checked, worst_ratio, worst.c_str(), est.lower, case5_result.value, f1, case5 ? "ok" : "FAILED"));
}

void criterion11(const RunConfig& cfg) {
  const auto cases = standard_sweep();
  sweep_first = equivalence_matrix(cases, cfg);
  const std::string a = emit_matrix(sweep_first, "json");
  const std::string b = emit_matrix(equivalence_matrix(cases, cfg), "json");
  std::set<std::string> tuples;
  for (const auto& c : cases) tuples.insert(c.g + " " + c.nu + " " + c.mu);
  bool flagged = !sweep_first.flags.empty();
  for (const auto& r : sweep_first.reports) flagged = flagged || !r.ok();
  const bool ok = sweep_first.disagreement_count() == 0 && !flagged && a == b;
  report(11, ok, "equivalence matrix",
         fmt("%zu cases (%zu weight/symbol tuples x 2 operators x 2 questions), %d disagreements, %s flags, "
             "JSON %s across two runs (%zu bytes)",
             cases.size(), tuples.size(), sweep_first.disagreement_count(), flagged ? "some" : "no",
             a == b ? "byte-identical" : "DIFFERENT", a.size()));
}

void criterion12() {
  const RadialWeight nu = RadialWeight::standard(1.0);
  const RadialWeight omega = omega_of(nu);
  const GridSpec grid{};
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> deg(1, 32);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TruncatedSeries f = random_series(rng, deg(rng));
    const double lhs = weighted_sup_norm(differentiate(f), omega, grid).value;
    const double rhs = weighted_sup_norm(f, nu, grid).value;
    worst = std::max(worst, lhs / rhs);
  }
  report(12, worst <= 20.0, "derivative growth, nu=std:1",
         fmt("100 random polynomials, degree <= 32: max ratio %.4f (<= 20)", worst));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.jobs = 1;
  cfg.search.grid = cfg.grid;

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion11(cfg);
  criterion10();
  criterion12();

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 12 criteria failed, %d unexpectedly (%.1f s)\n", failures, unexpected, secs);
  return unexpected;
}
