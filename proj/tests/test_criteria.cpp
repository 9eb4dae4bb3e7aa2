#include <doctest.h>

#include <cmath>
#include <numbers>

#include "volterra/criteria.hpp"
#include "volterra/verdict.hpp"

using namespace volterra;

namespace {

GridSpec small_grid() {
  GridSpec g;
  g.levels = 12;
  g.angles = 64;
  return g;
}

}  // namespace

TEST_CASE("IT integral along the real axis for nu = 1") {
  const SymbolSpec g = make_symbol("neglog1mz");
  const double v = radial_integral(IntegralKind::IT, g, RadialWeight::one(), 0.0, 0.0, dyadic_radius(10));
  CHECK(v == doctest::Approx(10 * std::numbers::ln2).epsilon(1e-9));
}

TEST_CASE("IS integral for identity against its primitive") {
  // int_0^t r / (1-r^2)^2 dr = t^2 / (2 (1 - t^2)) for nu = std:1.
  const SymbolSpec g = make_symbol("identity");
  const double t = 0.9;
  const double v = radial_integral(IntegralKind::IS, g, RadialWeight::standard(1.0), 0.0, 0.0, t);
  CHECK(v == doctest::Approx(t * t / (2.0 * (1.0 - t * t))).epsilon(1e-9));
}

TEST_CASE("boundedness sup of IT for the identity") {
  // mu(t) int_0^t dr / (1 - r^2) with mu = std:1 is (1-t^2) atanh(t); its
  // sup is about 0.6627.
  const SymbolSpec g = make_symbol("identity");
  const RadialWeight w = RadialWeight::standard(1.0);
  const CriterionResult r = boundedness_sup(IntegralKind::IT, g, w, w, small_grid());
  double best = 0.0;
  for (int i = 1; i < 100000; ++i) {
    const double t = i / 100000.0;
    best = std::max(best, (1.0 - t * t) * std::atanh(t));
  }
  CHECK(r.verdict == Verdict::Finite);
  CHECK(r.value == doctest::Approx(best).epsilon(1e-4));
}

TEST_CASE("pointwise K1 sup for the identity") {
  // mu |z| / nu with mu = std:1, nu = std:0.5: sup r sqrt(1 - r^2) = 1/2.
  const CriterionResult r = pointwise_quantity(PointwiseKind::K1, make_symbol("identity"), RadialWeight::standard(0.5),
                                               RadialWeight::standard(1.0), Mode::Sup, small_grid());
  CHECK(r.verdict == Verdict::Finite);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("boundary limits") {
  const SymbolSpec g = make_symbol("identity");
  const CriterionResult zero = pointwise_quantity(PointwiseKind::K1, g, RadialWeight::standard(0.5),
                                                  RadialWeight::standard(1.0), Mode::BoundaryLimit, small_grid());
  CHECK(zero.verdict == Verdict::ZeroLimit);
  const CriterionResult flat = pointwise_quantity(PointwiseKind::K1, g, RadialWeight::standard(1.0),
                                                  RadialWeight::standard(1.0), Mode::BoundaryLimit, small_grid());
  CHECK(flat.verdict == Verdict::NonzeroLimit);
}

TEST_CASE("verdict classifiers") {
  const std::vector<double> converging{0.0, 0.5, 0.9, 0.99, 0.999, 0.9999, 0.99999};
  CHECK(classify_sup(converging) == Verdict::Finite);
  std::vector<double> linear;
  for (int m = 0; m < 14; ++m) linear.push_back(m * std::numbers::ln2);
  CHECK(classify_sup(linear) == Verdict::Divergent);
  std::vector<double> decay, plateau;
  for (int m = 0; m < 12; ++m) {
    decay.push_back(std::exp2(-2.0 * m));
    plateau.push_back(1.0 - std::exp2(-m));
  }
  CHECK(classify_limit(decay) == Verdict::ZeroLimit);
  CHECK(classify_limit(plateau) == Verdict::NonzeroLimit);
  CHECK(classify_profile(decay) == ProfileVerdict::CompactConsistent);
  CHECK(classify_profile(plateau) == ProfileVerdict::NoncompactConsistent);
}

TEST_CASE("S_g into H^inf compact only for g = 0") {
  CHECK(sg_into_hinf_compact(make_symbol("zero")));
  CHECK_FALSE(sg_into_hinf_compact(make_symbol("identity")));
}

TEST_CASE("kind names round-trip") {
  for (auto k : {IntegralKind::IT, IntegralKind::IS, IntegralKind::IB}) CHECK(parse_integral_kind(to_string(k)) == k);
  for (auto k : {PointwiseKind::K1, PointwiseKind::K3, PointwiseKind::K5})
    CHECK(parse_pointwise_kind(to_string(k)) == k);
}
