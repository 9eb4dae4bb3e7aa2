#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "volterra/config.hpp"
#include "volterra/criteria.hpp"
#include "volterra/operators.hpp"

namespace volterra {

inline constexpr const char* kReportSchema = "volterra-report/1";

enum class Question { Bounded, Compact };
std::string to_string(Question q);
Question parse_question(const std::string& s);

struct CaseSpec {
  OpKind op = OpKind::Tg;
  std::string g = "zero";
  std::string nu = "std:1";
  std::string mu = "std:1";
  SpaceKind domain = SpaceKind::Hinf;
  SpaceKind codomain = SpaceKind::Hinf;
  Question question = Question::Bounded;
  /// Expected overall verdict; a mismatch raises a flag.
  std::optional<std::string> expect;

  /// Parses the symbol and weights; throws std::invalid_argument.
  void validate() const;
  std::string label() const;
  /// Same operator, symbol, weights and spaces.
  bool same_tuple(const CaseSpec& other) const;
};

CaseSpec case_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CaseSpec& c);

/// What a criterion outcome says about the question.
enum class Implication { Yes, No, Unknown };
std::string to_string(Implication i);

struct HypothesisFlags {
  CriterionResult log_gprime;
  CriterionResult log_g;
  bool g_univalent = false;
  /// log(g') in B: univalent symbols qualify without measurement.
  bool log_gprime_in_B = false;
  bool log_g_in_B = false;
  bool nu_analytic = false;
  bool nu_property_U = false;
  bool nu_quasi_normal = false;
  bool mu_quasi_normal = false;
  bool nu_typical = false;
  bool mu_typical = false;
  bool mu_identically_one = false;
};

struct CriterionRow {
  std::string id;
  /// e.g. "IT Sup", "K1 BoundaryLimit", "g = 0".
  std::string quantity;
  /// "iff" or "sufficient-only".
  std::string role;
  bool applicable = false;
  std::vector<std::string> failed_hypotheses;
  std::optional<CriterionResult> result;
  std::optional<CompactnessProfile> profile;
  Implication implies = Implication::Unknown;
};

struct CaseReport {
  CaseSpec spec;
  HypothesisFlags hypotheses;
  std::vector<CriterionRow> rows;
  NormEstimate norm;
  /// lower <= criterion_upper * 1.01 when an upper bound applies.
  bool norm_consistent = true;
  bool disagreement = false;
  std::vector<std::string> flags;
  /// Bounded / Unbounded / Compact / NotCompact / Inconclusive.
  std::string verdict = "Inconclusive";
  std::string governing = "none";
  std::vector<std::string> notes;

  bool ok() const { return flags.empty(); }
  int evaluated_criteria() const;
};

/// Evaluates every applicable criterion and, unless with_norm is false, the
/// operator-norm lower estimate.
CaseReport run_case(const CaseSpec& spec, const RunConfig& config, bool with_norm = true);

struct EquivalenceMatrix {
  std::vector<CaseReport> reports;
  /// Cross-case flags, e.g. a tuple reported Compact but Unbounded.
  std::vector<std::string> flags;
  int disagreement_count() const;
};

/// Runs every case (in parallel over config.jobs) and checks agreement
/// within and across cases.
EquivalenceMatrix equivalence_matrix(const std::vector<CaseSpec>& cases, const RunConfig& config);

/// g in {identity, neglog1mz, zero}, alpha, beta in {0.5, 1}, both
/// operators and both questions on H^inf_alpha -> H^inf_beta.
std::vector<CaseSpec> standard_sweep();

nlohmann::json to_json(const CriterionResult& r, const nlohmann::json& inputs = nullptr);
nlohmann::json to_json(const CompactnessProfile& p);
nlohmann::json to_json(const CaseReport& r);
nlohmann::json to_json(const EquivalenceMatrix& m);

/// Property table of a weight: (U), (L), normality, typicality, witness,
/// associated-weight sandwich at the radii and the essential constant over
/// them.
nlohmann::json weight_report(const RadialWeight& nu, const std::vector<double>& radii,
                             const RunConfig& config);
std::string emit_weight_report(const nlohmann::json& report, const std::string& format);

/// Deterministic serialization: "json", "csv" or "markdown".
std::string emit_report(const CaseReport& report, const std::string& format);
std::string emit_matrix(const EquivalenceMatrix& matrix, const std::string& format);

}  // namespace volterra
