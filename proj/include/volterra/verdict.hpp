#pragma once

#include <span>
#include <string>
#include <vector>

namespace volterra {

enum class Verdict { Finite, Divergent, ZeroLimit, NonzeroLimit, Inconclusive };
enum class Mode { Sup, BoundaryOne, BoundaryLimit, DoubleLimit };

std::string to_string(Verdict v);
std::string to_string(Mode m);

/// Estimate of a criterion quantity.
struct CriterionResult {
  std::string kind;
  Mode mode = Mode::Sup;
  double value = 0.0;
  /// Argmax witness in polar form (t*, theta*) or z* = r e^{i theta}.
  double r = 0.0;
  double theta = 0.0;
  /// Sup modes: running sup per dyadic level. BoundaryLimit: per-level max
  /// over angles. DoubleLimit: C(m) per level m.
  std::vector<double> history;
  Verdict verdict = Verdict::Inconclusive;
  /// Free-form remarks, e.g. how the associated weight was resolved.
  std::string note;
  /// Set when the quantity is only known to lie in [value, value_upper].
  double value_upper = 0.0;
  bool interval = false;
};

struct VerdictRules {
  double divergence_cap = 1e6;
  /// Growth factor across the last 3 levels needed together with the cap.
  double growth_factor = 1.2;
  /// Additive test: the last `increment_levels` increments are each at least
  /// this fraction of the current value and do not shrink by more than
  /// `increment_decay` from one level to the next.
  double increment_fraction = 1e-2;
  double increment_decay = 0.8;
  int increment_levels = 4;
  /// Sup is Finite when the last increment is below this fraction.
  double stable_fraction = 1e-2;
  /// Boundary limits: relative size below which the tail counts as zero,
  /// and the per-level ratio that counts as genuine decay.
  double zero_fraction = 1e-3;
  double decay_ratio = 0.95;
  /// Spread of the last levels that counts as a positive plateau.
  double plateau_ratio = 0.8;
};

/// Finite / Divergent / Inconclusive from a running-sup level history.
Verdict classify_sup(std::span<const double> history, const VerdictRules& rules = {});

/// ZeroLimit / NonzeroLimit / Inconclusive from per-level boundary values.
Verdict classify_limit(std::span<const double> profile, const VerdictRules& rules = {});

}  // namespace volterra
