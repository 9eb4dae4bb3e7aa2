#include "volterra/verdict.hpp"

#include <algorithm>
#include <cmath>

namespace volterra {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite: return "Finite";
    case Verdict::Divergent: return "Divergent";
    case Verdict::ZeroLimit: return "ZeroLimit";
    case Verdict::NonzeroLimit: return "NonzeroLimit";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Sup: return "Sup";
    case Mode::BoundaryOne: return "BoundaryOne";
    case Mode::BoundaryLimit: return "BoundaryLimit";
    case Mode::DoubleLimit: return "DoubleLimit";
  }
  return "Sup";
}

Verdict classify_sup(std::span<const double> h, const VerdictRules& rules) {
  if (h.empty()) return Verdict::Inconclusive;
  const double last = h.back();
  if (!std::isfinite(last)) return Verdict::Divergent;
  if (last <= 0.0) return Verdict::Finite;
  const std::size_t n = h.size();
  if (n >= 4 && last > rules.divergence_cap && h[n - 4] > 0.0 &&
      last / h[n - 4] >= rules.growth_factor) {
    return Verdict::Divergent;
  }
  const std::size_t k = static_cast<std::size_t>(rules.increment_levels);
  if (n > k) {
    bool steady = true;
    double prev = 0.0;
    for (std::size_t i = n - k; i < n && steady; ++i) {
      const double d = h[i] - h[i - 1];
      if (!(d >= rules.increment_fraction * last)) steady = false;
      if (i > n - k && d < rules.increment_decay * prev) steady = false;
      prev = d;
    }
    if (steady) return Verdict::Divergent;
  }
  if (n >= 2 && h[n - 1] - h[n - 2] <= rules.stable_fraction * last) return Verdict::Finite;
  return Verdict::Inconclusive;
}

Verdict classify_limit(std::span<const double> p, const VerdictRules& rules) {
  if (p.empty()) return Verdict::Inconclusive;
  for (double x : p) {
    if (!std::isfinite(x)) return Verdict::NonzeroLimit;
  }
  const double peak = *std::max_element(p.begin(), p.end());
  if (peak <= 0.0) return Verdict::ZeroLimit;
  const std::size_t n = p.size();
  if (n < 4) return Verdict::Inconclusive;
  const auto tail = p.subspan(n - 4);
  const double last = tail.back();

  bool decreasing = true;
  bool decaying = true;
  bool nondecreasing = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (!(tail[i] < tail[i - 1])) decreasing = false;
    if (!(tail[i] <= rules.decay_ratio * tail[i - 1])) decaying = false;
    if (tail[i] < tail[i - 1] * (1.0 - 1e-9)) nondecreasing = false;
  }
  if (decreasing && (last <= rules.zero_fraction * peak || decaying)) return Verdict::ZeroLimit;
  if (last <= 0.0) return Verdict::ZeroLimit;

  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  if (last > rules.zero_fraction * peak && (nondecreasing || *lo >= rules.plateau_ratio * *hi)) {
    return Verdict::NonzeroLimit;
  }
  return Verdict::Inconclusive;
}

}  // namespace volterra
