#pragma once

#include <string>

#include <json.hpp>

#include "volterra/criteria.hpp"
#include "volterra/grid.hpp"
#include "volterra/operators.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/weights.hpp"

namespace volterra {

struct RunConfig {
  GridSpec grid{};
  QuadSpec quad{};
  DoubleLimitSpec double_limit{};
  LPSpec lp{};
  SearchSpec search{};
  AssocPolicy assoc{};
  int jobs = 1;
  std::string output;
  std::string format = "json";

  /// Tolerances must be positive and the grid needs at least 6 levels.
  void validate() const;
};

/// Overlays the keys present in `j` on `base`; unknown keys are rejected so
/// that typos do not silently fall back to defaults.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json to_json(const RunConfig& c);

/// The search seed, overridden by the VOLTERRA_SEED environment variable.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace volterra
