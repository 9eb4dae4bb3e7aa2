#pragma once

#include <string>
#include <vector>

#include "volterra/grid.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/symbols.hpp"
#include "volterra/verdict.hpp"
#include "volterra/weights.hpp"

namespace volterra {

/// IT: |g'(re^{it})| / nu(r); IS: |g| / ((1 - r^2) nu(r)); IB: |g| / nu(r).
enum class IntegralKind { IT, IS, IB };
/// K1: mu|g|/nu, K2: mu|g|/nu~, K3: mu|g|/((1-|z|^2) nu),
/// K4: (1-|z|^2) mu|g|/nu~, K5: (1-|z|^2) mu|g'|/nu~.
enum class PointwiseKind { K1, K2, K3, K4, K5 };

std::string to_string(IntegralKind k);
std::string to_string(PointwiseKind k);
IntegralKind parse_integral_kind(const std::string& s);
PointwiseKind parse_pointwise_kind(const std::string& s);

/// The integrand of `kind` at r e^{i theta}.
double radial_integrand(IntegralKind kind, const SymbolSpec& g, const RadialWeight& nu, double r,
                        double theta);

/// Integral of the kind's integrand along the ray at angle theta over
/// [t_lo, t_hi]; throws std::domain_error when the integrand fails.
double radial_integral(IntegralKind kind, const SymbolSpec& g, const RadialWeight& nu,
                       double theta, double t_lo, double t_hi, const QuadSpec& quad = {});

/// sup over t and theta of mu(t) * int_0^t integrand dr. The mode is
/// BoundaryOne when mu is identically 1 (the quantity is then
/// sup_theta int_0^1).
CriterionResult boundedness_sup(IntegralKind kind, const SymbolSpec& g, const RadialWeight& nu,
                                const RadialWeight& mu, const GridSpec& grid,
                                const QuadSpec& quad = {}, int jobs = 1);

/// How nu~ is obtained for K2, K4 and K5.
///   analytic witness -> nu~ = nu exactly;
///   property (U)     -> nu, noted as equal up to the essential constant;
///   otherwise        -> both nu and the monomial upper bound of nu~ are
///                       used and the result is an interval.
struct AssocPolicy {
  int monomial_n_max = 64;
  int u_levels = 24;
};

CriterionResult pointwise_quantity(PointwiseKind kind, const SymbolSpec& g, const RadialWeight& nu,
                                   const RadialWeight& mu, Mode mode, const GridSpec& grid,
                                   const AssocPolicy& assoc = {}, int jobs = 1);

struct DoubleLimitSpec {
  int m_lo = 4;
  int m_hi = 12;
  /// t1 runs over 1 - 2^{-(m + i/substeps)}, i = 1..depth*substeps.
  int depth = 10;
};

enum class ProfileVerdict { CompactConsistent, NoncompactConsistent, Inconclusive };
std::string to_string(ProfileVerdict v);

struct CompactnessProfile {
  IntegralKind kind = IntegralKind::IT;
  std::vector<int> levels;
  /// C(m) = sup over t1 in (t2, 1) and theta of mu(t1) int_{t2}^{t1}.
  std::vector<double> values;
  std::vector<double> witness_t1;
  std::vector<double> witness_theta;
  /// Intercept of a linear fit of C(m) against 2^{-m} on the last 4 levels.
  double extrapolated = 0.0;
  ProfileVerdict verdict = ProfileVerdict::Inconclusive;

  CriterionResult as_result() const;
};

CompactnessProfile compactness_double_limit(IntegralKind kind, const SymbolSpec& g,
                                            const RadialWeight& nu, const RadialWeight& mu,
                                            const GridSpec& grid, const QuadSpec& quad = {},
                                            const DoubleLimitSpec& spec = {}, int jobs = 1);

ProfileVerdict classify_profile(const std::vector<double>& values, double tol_abs = 1e-12);

/// S_g : H^inf_nu -> H^inf is compact iff g = 0.
bool sg_into_hinf_compact(const SymbolSpec& g, double tol = 1e-14);

}  // namespace volterra
