#include <doctest.h>

#include <cmath>
#include <random>

#include "volterra/norms.hpp"
#include "volterra/operators.hpp"

using namespace volterra;

TEST_CASE("T_g and S_g on monomials") {
  // T_g z^m for g = z is z^{m+1}/(m+1); S_g z^m = m z^{m+1}/(m+1).
  const SymbolSpec g = make_symbol("identity");
  const auto t = apply_Tg(TruncatedSeries::monomial(3), g, 10);
  const auto s = apply_Sg(TruncatedSeries::monomial(3), g, 10);
  CHECK(t[4] == cplx(0.25));
  CHECK(s[4] == cplx(0.75));
  CHECK(max_abs_difference(t + s, TruncatedSeries::monomial(4)) < 1e-15);
}

TEST_CASE("apply_at matches the coefficient route") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::vector<cplx> c(9);
  for (auto& x : c) x = {n(rng), n(rng)};
  const TruncatedSeries f(c);
  const SymbolSpec g = make_symbol("expz");
  const cplx z(0.4, 0.5);
  CHECK(std::abs(apply_at(OpKind::Tg, f, g, z) - evaluate(apply_Tg(f, g, 64), z)) < 1e-12);
  CHECK(std::abs(apply_at(OpKind::Sg, f, g, z) - evaluate(apply_Sg(f, g, 64), z)) < 1e-12);
}

TEST_CASE("weighted norms of monomials") {
  GridSpec grid;
  grid.levels = 12;
  grid.angles = 32;
  // sup (1 - r^2) r = 2 / (3 sqrt 3).
  const SupEstimate s = weighted_sup_norm(TruncatedSeries::monomial(1), RadialWeight::standard(1.0), grid);
  CHECK(s.value == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-6));
  const SupEstimate b = weighted_bloch_norm(TruncatedSeries{2.0, 1.0}, RadialWeight::standard(1.0), grid);
  CHECK(b.value == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("log Bloch seminorms") {
  GridSpec grid;
  grid.levels = 12;
  grid.angles = 64;
  // log g' = -log(1-z): sup (1-|z|^2)/|1-z| = 2.
  const CriterionResult r = log_bloch_seminorm(LogKind::LogGPrime, make_symbol("neglog1mz"), grid);
  CHECK(r.verdict == Verdict::Finite);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(log_bloch_seminorm(LogKind::LogG, make_symbol("identity"), grid).verdict == Verdict::Divergent);
}

TEST_CASE("norm search finds the f = 1 witness and is deterministic") {
  const SymbolSpec g = make_symbol("neglog1mz");
  const RadialWeight w = RadialWeight::standard(1.0);
  SearchSpec spec;
  spec.degree = 6;
  spec.random_polys = 4;
  spec.grid.levels = 10;
  spec.grid.angles = 64;
  const NormEstimate a = opnorm_lower(OpKind::Tg, g, w, w, SpaceKind::Hinf, SpaceKind::Hinf, spec);
  const NormEstimate b = opnorm_lower(OpKind::Tg, g, w, w, SpaceKind::Hinf, SpaceKind::Hinf, spec);
  // ||T_g 1|| = sup (1-r^2) log(1/(1-r)), about 0.614.
  CHECK(a.lower >= 0.60);
  CHECK(a.lower <= 1.03);
  CHECK(a.lower == b.lower);
  CHECK(a.witness == b.witness);
}

TEST_CASE("space and operator names") {
  CHECK(parse_op_kind("tg") == OpKind::Tg);
  CHECK(parse_op_kind("Sg") == OpKind::Sg);
  CHECK(parse_space_kind("bloch") == SpaceKind::Bloch);
  CHECK_THROWS(parse_space_kind("hardy"));
}
