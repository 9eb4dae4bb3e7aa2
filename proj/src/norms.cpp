#include "volterra/norms.hpp"

#include <cmath>
#include <complex>

namespace volterra {

SupEstimate weighted_sup_norm(const TruncatedSeries& a, const RadialWeight& nu,
                              const GridSpec& grid, int jobs) {
  auto f = [&](double r, double theta) {
    return nu(r) * std::abs(evaluate(a, std::polar(r, theta)));
  };
  return sup_over_disk(f, grid, a.has_real_coeffs(), jobs);
}

SupEstimate weighted_bloch_norm(const TruncatedSeries& a, const RadialWeight& nu,
                                const GridSpec& grid, int jobs) {
  SupEstimate est = weighted_sup_norm(differentiate(a), nu, grid, jobs);
  const double c0 = std::abs(a[0]);
  est.value += c0;
  est.sampled_value += c0;
  for (auto& h : est.level_history) h += c0;
  for (auto& h : est.refinement_history) h += c0;
  return est;
}

}  // namespace volterra
