#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "volterra/grid.hpp"
#include "volterra/series.hpp"

namespace volterra {

/// Certificate that nu(z) = 1/f(|z|) for an analytic f with nonnegative
/// Taylor coefficients, which forces |f(z)| <= f(|z|).
struct AnalyticWitness {
  std::vector<double> coeffs;
  /// Closed form of f on the open disk; preferred over the truncated
  /// coefficients wherever it is available.
  std::function<cplx(cplx)> closed_form;

  cplx evaluate(cplx z) const;
  double min_coefficient() const;
};

enum class WeightFamily { Standard, Log, One, Product, OmegaOf, Custom };

/// A radial, strictly positive, nonincreasing weight on [0, 1).
///
/// Instances are immutable handles to a shared node and are cheap to copy
/// and safe to share across threads.
class RadialWeight {
public:
  /// (1 - r^2)^alpha; alpha = 0 is the constant weight.
  static RadialWeight standard(double alpha);
  /// (1 + log(1/(1 - r^2)))^{-alpha}, alpha > 0.
  static RadialWeight logarithmic(double alpha);
  static RadialWeight one();
  static RadialWeight product(std::vector<RadialWeight> factors);
  /// (1 - r^2) mu(r).
  static RadialWeight omega_of(const RadialWeight& mu);
  static RadialWeight custom(std::string name, std::function<double(double)> eval,
                             bool typical = false,
                             std::optional<AnalyticWitness> witness = std::nullopt);

  double operator()(double r) const;

  WeightFamily family() const;
  double alpha() const;
  const std::vector<RadialWeight>& factors() const;
  std::string spec() const;

  bool typical() const;
  const std::optional<AnalyticWitness>& analytic_witness() const;
  bool is_analytic() const { return analytic_witness().has_value(); }
  bool quasi_normal_whitelisted() const;
  /// If this weight is identically (1 - r^2)^a, returns a.
  std::optional<double> standard_exponent() const;

private:
  struct Node;
  explicit RadialWeight(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Number of Taylor coefficients kept for analytic witnesses.
inline constexpr std::size_t kWitnessDegree = 2048;

/// Parses the weight grammar
///   std:<a> | log:<a> | one | product:<spec>,<spec> | omega:<spec>
/// Throws std::invalid_argument on malformed input or negative exponents.
RadialWeight make_weight(std::string_view spec);

RadialWeight omega_of(const RadialWeight& mu);

enum class PropertyVerdict { Holds, Fails, Inconclusive };
std::string to_string(PropertyVerdict v);

struct PropertyU {
  PropertyVerdict verdict = PropertyVerdict::Inconclusive;
  double inf_ratio = 0.0;
  /// ratios[n] = nu(1 - 2^{-(n+1)}) / nu(1 - 2^{-n}).
  std::vector<double> ratios;
  bool holds() const { return verdict == PropertyVerdict::Holds; }
};

struct PropertyL {
  PropertyVerdict verdict = PropertyVerdict::Inconclusive;
  std::optional<int> best_k;
  /// Extrapolated tail limit of nu(1 - 2^{-(n+k)}) / nu(1 - 2^{-n}) per k.
  std::vector<double> limit_estimates;
  bool holds() const { return verdict == PropertyVerdict::Holds; }
};

/// Dyadic form of property (U): inf_n nu(1-2^{-(n+1)})/nu(1-2^{-n}) > 0.
PropertyU check_property_U(const RadialWeight& nu, int n_max = 24);

/// Dyadic form of property (L): some k has
/// limsup_n nu(1-2^{-(n+k)})/nu(1-2^{-n}) < 1. The tail limit for each
/// k <= min(k_max, n_max / 5) is extrapolated with a + b/(n + c).
PropertyL check_property_L(const RadialWeight& nu, int n_max = 40, int k_max = 8);

/// (U) at n_max and (L) at max(n_max, 40).
bool is_normal(const RadialWeight& nu, int n_max = 24);

/// Monomial upper bounds for the associated weight. Each z^n / M_n, with
/// M_n = sup_s s^n nu(s), lies in the unit ball of H^inf_nu, hence
/// nu_tilde(r) <= M_n / r^n for every n.
class MonomialBounds {
public:
  MonomialBounds(const RadialWeight& nu, int n_max);

  double moment(int n) const { return moments_.at(n); }
  int n_max() const { return static_cast<int>(moments_.size()) - 1; }
  /// min over n of M_n / r^n, with the index attaining it.
  std::pair<double, int> upper(double r) const;

private:
  std::vector<double> moments_;
};

/// sup_{0 <= s < 1} s^n nu(s) by dyadic scan plus golden-section refinement.
double monomial_moment(const RadialWeight& nu, int n);

struct LPSpec {
  bool enabled = true;
  int degree = 32;
  int levels = 10;
  int substeps = 4;
  /// Angles on [0, pi]; 0 picks max(32, 2 * degree) + 1.
  int angles = 0;
  int phases = 8;
  int max_iterations = 20000;
  /// Rounds of adding the worst violated points of the fine grid and
  /// re-solving.
  int exchange_rounds = 40;
  /// The solve runs at degrees degree/2^k >= ladder_start, lowest first,
  /// and reports the smallest bound found along the way.
  int ladder_start = 16;
};

struct SandwichPoint {
  double r = 0.0;
  double lower = 0.0;
  double monomial_upper = 0.0;
  int monomial_n = 0;
  std::optional<double> lp_upper;
  /// (degree, best LP bound up to that degree) along the degree ladder.
  std::vector<std::pair<int, double>> lp_ladder;
  double upper() const;
  double width() const { return upper() - lower; }
};

struct AssociatedSandwich {
  std::vector<SandwichPoint> points;
  int n_max = 0;
  int lp_degree = 0;
  std::size_t lp_samples = 0;
};

/// Two-sided bounds nu(r) <= nu_tilde(r) <= upper(r). The optional LP
/// refinement maximizes f(r) over real polynomials of degree lp.degree
/// subject to sampled, polygon-linearized constraints nu|f| <= 1, then
/// divides by the finely recomputed weighted norm of the optimizer.
AssociatedSandwich associated_weight_bounds(const RadialWeight& nu, const std::vector<double>& radii,
                                            int n_max, const LPSpec& lp);

/// Extremal upper bound ||f|| / f(r) from the LP alone; nullopt when the
/// optimization is infeasible, degenerate or gives f(r) <= 0. The norm is
/// the fine-grid sampled norm, so the bound carries that sampling error.
std::optional<double> lp_associated_upper(
    const RadialWeight& nu, double r, const LPSpec& lp, std::size_t* samples = nullptr,
    std::vector<std::pair<int, double>>* ladder_bounds = nullptr);

/// max over radii of upper(r) / nu(r).
double essential_constant_estimate(const RadialWeight& nu, const std::vector<double>& radii,
                                   int n_max = 64, const LPSpec& lp = LPSpec{.enabled = false});

}  // namespace volterra
