// Randomized identities that hold for every input.

#include <doctest.h>

#include <cmath>
#include <random>

#include "volterra/criteria.hpp"
#include "volterra/norms.hpp"
#include "volterra/operators.hpp"
#include "volterra/verify.hpp"

using namespace volterra;

namespace {

TruncatedSeries random_poly(std::mt19937_64& rng, std::size_t degree) {
  std::normal_distribution<double> n;
  std::vector<cplx> c(degree + 1);
  for (auto& x : c) x = {n(rng), n(rng)};
  return TruncatedSeries(std::move(c));
}

cplx random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng)) * 0.999;
  return std::polar(r, 2.0 * M_PI * u(rng));
}

GridSpec grid() {
  GridSpec g;
  g.levels = 12;
  g.angles = 64;
  return g;
}

}  // namespace

TEST_CASE("T_g f + S_g f = f g - f(0) g(0)") {
  std::mt19937_64 rng(1);
  for (const char* s : {"identity", "expz", "neglog1mz", "poly:[1,2,-1]"}) {
    const SymbolSpec g = make_symbol(s, 64);
    for (int i = 0; i < 10; ++i) {
      const auto f = random_poly(rng, 20);
      const auto lhs = apply_Tg(f, g, 40) + apply_Sg(f, g, 40);
      auto rhs = cauchy_product(f, g.coeffs(), 40) - TruncatedSeries{f[0] * g.coeffs()[0]};
      CHECK(max_abs_difference(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("witness modulus is maximal on the positive radius") {
  std::mt19937_64 rng(2);
  for (const char* spec : {"std:0.5", "std:2", "omega:std:1"}) {
    const AnalyticWitness& f = *make_weight(spec).analytic_witness();
    for (int i = 0; i < 1000; ++i) {
      const cplx z = random_point(rng);
      CHECK(std::abs(f.evaluate(z)) <= std::abs(f.evaluate(std::abs(z))) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("K3 equals K1 with nu replaced by (1-r^2) nu") {
  const SymbolSpec g = make_symbol("neglog1mz");
  const RadialWeight nu = RadialWeight::standard(0.5);
  const RadialWeight mu = RadialWeight::standard(2.0);
  const CriterionResult k3 = pointwise_quantity(PointwiseKind::K3, g, nu, mu, Mode::Sup, grid());
  const CriterionResult k1 = pointwise_quantity(PointwiseKind::K1, g, omega_of(nu), mu, Mode::Sup, grid());
  CHECK(k3.value == doctest::Approx(k1.value).epsilon(1e-12));
  // Pointwise on 1000 points through the integrands the criteria share.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const cplx z = random_point(rng);
    const double r = std::abs(z);
    const double k3z = mu(r) * std::abs(g.value(z)) / ((1.0 - r * r) * nu(r));
    const double k1z = mu(r) * std::abs(g.value(z)) / omega_of(nu)(r);
    CHECK(k3z == doctest::Approx(k1z).epsilon(1e-13));
  }
}

TEST_CASE("radial integrals grow with the upper limit") {
  const SymbolSpec g = make_symbol("cayleypow:0.5");
  const RadialWeight nu = RadialWeight::standard(1.0);
  for (auto kind : {IntegralKind::IT, IntegralKind::IS, IntegralKind::IB}) {
    double prev = 0.0;
    for (int j = 1; j <= 40; ++j) {
      const double v = radial_integral(kind, g, nu, 0.7, 0.0, dyadic_radius(j / 4.0));
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("univalent symbols have log g' in the Bloch space") {
  for (const char* s : {"neglog1mz", "identity", "cayleypow:0.5", "cayleypow:1"}) {
    CAPTURE(s);
    CHECK(log_bloch_seminorm(LogKind::LogGPrime, make_symbol(s), grid()).verdict == Verdict::Finite);
  }
}

TEST_CASE("g = 0 gives zero quantities and a zero operator") {
  const SymbolSpec g = make_symbol("zero");
  const RadialWeight w = RadialWeight::standard(1.0);
  for (auto kind : {IntegralKind::IT, IntegralKind::IS, IntegralKind::IB})
    CHECK(boundedness_sup(kind, g, w, w, grid()).value == 0.0);
  CHECK(pointwise_quantity(PointwiseKind::K1, g, w, w, Mode::Sup, grid()).value == 0.0);
  std::mt19937_64 rng(4);
  const auto f = random_poly(rng, 10);
  CHECK(apply_Tg(f, g, 20).is_zero());
  CHECK(apply_Sg(f, g, 20).is_zero());
}

TEST_CASE("derivative growth on H^inf_{std:1}") {
  std::mt19937_64 rng(5);
  const RadialWeight nu = RadialWeight::standard(1.0);
  for (int i = 0; i < 20; ++i) {
    const auto f = random_poly(rng, 16);
    const double lhs = weighted_sup_norm(differentiate(f), omega_of(nu), grid()).value;
    CHECK(lhs <= 20.0 * weighted_sup_norm(f, nu, grid()).value);
  }
}

TEST_CASE("compact implies bounded across a small matrix") {
  RunConfig cfg;
  cfg.grid = grid();
  cfg.search.degree = 4;
  cfg.search.random_polys = 2;
  cfg.search.grid = cfg.grid;
  std::vector<CaseSpec> cases;
  for (const char* g : {"identity", "neglog1mz"}) {
    for (Question q : {Question::Bounded, Question::Compact}) {
      CaseSpec c;
      c.g = g;
      c.nu = "std:1";
      c.mu = "std:2";
      c.question = q;
      cases.push_back(c);
    }
  }
  const EquivalenceMatrix m = equivalence_matrix(cases, cfg);
  CHECK(m.flags.empty());
  for (std::size_t i = 0; i < m.reports.size(); i += 2) {
    if (m.reports[i + 1].verdict == "Compact") CHECK(m.reports[i].verdict == "Bounded");
  }
}
