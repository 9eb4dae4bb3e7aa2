#include "volterra/verify.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "volterra/parallel.hpp"
#include "volterra/util.hpp"

namespace volterra {

using nlohmann::json;

std::string to_string(Question q) { return q == Question::Bounded ? "Bounded" : "Compact"; }

Question parse_question(const std::string& s) {
  if (s == "bounded" || s == "Bounded") return Question::Bounded;
  if (s == "compact" || s == "Compact") return Question::Compact;
  throw std::invalid_argument("unknown question '" + s + "' (expected bounded or compact)");
}

std::string to_string(Implication i) {
  switch (i) {
    case Implication::Yes: return "yes";
    case Implication::No: return "no";
    case Implication::Unknown: return "unknown";
  }
  return "unknown";
}

void CaseSpec::validate() const {
  make_symbol(g);
  make_weight(nu);
  make_weight(mu);
}

std::string CaseSpec::label() const {
  return to_string(op) + " g=" + g + " nu=" + nu + " mu=" + mu + " " + to_string(domain) + "->" +
         to_string(codomain) + " " + to_string(question);
}

bool CaseSpec::same_tuple(const CaseSpec& o) const {
  return op == o.op && g == o.g && nu == o.nu && mu == o.mu && domain == o.domain &&
         codomain == o.codomain;
}

CaseSpec case_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("case: expected an object");
  static const std::set<std::string> allowed{"op", "g", "nu", "mu", "domain", "codomain",
                                             "question", "expect"};
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw std::invalid_argument("case: unknown key '" + key + "'");
  }
  CaseSpec c;
  c.op = parse_op_kind(j.at("op").get<std::string>());
  c.g = j.at("g").get<std::string>();
  c.nu = j.at("nu").get<std::string>();
  c.mu = j.at("mu").get<std::string>();
  if (j.contains("domain")) c.domain = parse_space_kind(j.at("domain").get<std::string>());
  if (j.contains("codomain")) c.codomain = parse_space_kind(j.at("codomain").get<std::string>());
  c.question = parse_question(j.at("question").get<std::string>());
  if (j.contains("expect")) c.expect = j.at("expect").get<std::string>();
  c.validate();
  return c;
}

json to_json(const CaseSpec& c) {
  json j{{"op", to_string(c.op)},         {"g", c.g},
         {"nu", c.nu},                    {"mu", c.mu},
         {"domain", to_string(c.domain)}, {"codomain", to_string(c.codomain)},
         {"question", to_string(c.question)}};
  if (c.expect) j["expect"] = *c.expect;
  return j;
}

int CaseReport::evaluated_criteria() const {
  int n = 0;
  for (const auto& row : rows) n += row.result.has_value();
  return n;
}

namespace {

struct Context {
  const CaseSpec& spec;
  const RunConfig& config;
  SymbolSpec g;
  RadialWeight nu;
  RadialWeight mu;
  HypothesisFlags hyp;
};

Implication implication_of(const CriterionRow& row) {
  if (!row.result) return Implication::Unknown;
  Implication i = Implication::Unknown;
  switch (row.result->verdict) {
    case Verdict::Finite:
    case Verdict::ZeroLimit: i = Implication::Yes; break;
    case Verdict::Divergent:
    case Verdict::NonzeroLimit: i = Implication::No; break;
    case Verdict::Inconclusive: break;
  }
  // A sufficient condition that fails says nothing.
  if (row.role != "iff" && i == Implication::No) i = Implication::Unknown;
  return i;
}

CriterionRow make_row(std::string id, std::string quantity, bool iff,
                      std::vector<std::pair<bool, std::string>> hypotheses) {
  CriterionRow row;
  row.id = std::move(id);
  row.quantity = std::move(quantity);
  row.role = iff ? "iff" : "sufficient-only";
  for (auto& [ok, name] : hypotheses) {
    if (!ok) row.failed_hypotheses.push_back(std::move(name));
  }
  row.applicable = row.failed_hypotheses.empty();
  return row;
}

void evaluate_sup(Context& cx, CriterionRow& row, IntegralKind kind) {
  row.result = boundedness_sup(kind, cx.g, cx.nu, cx.mu, cx.config.grid, cx.config.quad,
                               cx.config.jobs);
}

void evaluate_profile(Context& cx, CriterionRow& row, IntegralKind kind) {
  row.profile = compactness_double_limit(kind, cx.g, cx.nu, cx.mu, cx.config.grid, cx.config.quad,
                                         cx.config.double_limit, cx.config.jobs);
  row.result = row.profile->as_result();
}

void evaluate_pointwise(Context& cx, CriterionRow& row, PointwiseKind kind, Mode mode) {
  row.result = pointwise_quantity(kind, cx.g, cx.nu, cx.mu, mode, cx.config.grid,
                                  cx.config.assoc, cx.config.jobs);
}

// The (operator, domain, codomain, question) dispatch table.
std::vector<CriterionRow> build_rows(Context& cx) {
  const auto& s = cx.spec;
  const auto& h = cx.hyp;
  const std::pair<bool, std::string> log_gp{h.log_gprime_in_B, "log(g') in B"};
  const std::pair<bool, std::string> log_g{h.log_g_in_B, "log(g) in B"};
  const std::pair<bool, std::string> nu_an{h.nu_analytic, "nu analytic"};
  const std::pair<bool, std::string> nu_qn{h.nu_quasi_normal, "nu quasi-normal"};
  const std::pair<bool, std::string> nu_u{h.nu_property_U, "nu has property (U)"};
  const std::pair<bool, std::string> mu_qn{h.mu_quasi_normal, "mu quasi-normal"};
  const bool bounded = s.question == Question::Bounded;
  std::vector<CriterionRow> rows;

  auto add = [&](CriterionRow row, auto&& eval) {
    if (row.applicable) eval(row);
    rows.push_back(std::move(row));
  };

  if (s.op == OpKind::Tg && s.domain == SpaceKind::Hinf && s.codomain == SpaceKind::Hinf) {
    const bool full = h.log_gprime_in_B && h.nu_analytic;
    if (bounded) {
      add(make_row(full ? (h.mu_identically_one ? "Cor 1" : "Thm 1") : "Remark 1", "IT Sup", full, {}),
          [&](CriterionRow& r) { evaluate_sup(cx, r, IntegralKind::IT); });
      add(make_row("Remark 3", "K5 Sup", true, {mu_qn}),
          [&](CriterionRow& r) { evaluate_pointwise(cx, r, PointwiseKind::K5, Mode::Sup); });
    } else {
      add(make_row(full ? "Thm 7" : "Remark 5", "IT DoubleLimit", full, {}),
          [&](CriterionRow& r) { evaluate_profile(cx, r, IntegralKind::IT); });
      add(make_row("Remark 6", "K5 BoundaryLimit", true, {mu_qn}), [&](CriterionRow& r) {
        evaluate_pointwise(cx, r, PointwiseKind::K5, Mode::BoundaryLimit);
      });
    }
    return rows;
  }
  if (s.op == OpKind::Tg) return rows;

  const bool is_full = h.log_g_in_B && h.nu_analytic && h.nu_quasi_normal;
  if (s.domain == SpaceKind::Hinf && s.codomain == SpaceKind::Hinf) {
    if (bounded) {
      if (is_full) {
        add(make_row(h.mu_identically_one ? "Cor 2" : "Thm 2", "IS Sup", true, {}),
            [&](CriterionRow& r) { evaluate_sup(cx, r, IntegralKind::IS); });
      } else {
        add(make_row("Prop 1", "IS Sup", false, {nu_u}),
            [&](CriterionRow& r) { evaluate_sup(cx, r, IntegralKind::IS); });
      }
      add(make_row("Thm 3", "K1 Sup", true, {nu_u, mu_qn}),
          [&](CriterionRow& r) { evaluate_pointwise(cx, r, PointwiseKind::K1, Mode::Sup); });
    } else {
      add(make_row("Thm 9(1)", "g = 0", true, {{h.mu_identically_one, "mu identically 1"}}),
          [&](CriterionRow& r) {
            CriterionResult res;
            res.kind = "g = 0";
            res.mode = Mode::Sup;
            res.value = 0.0;
            for (const auto& c : cx.g.coeffs().coeffs()) res.value = std::max(res.value, std::abs(c));
            res.history = {res.value};
            const bool compact = sg_into_hinf_compact(cx.g);
            res.verdict = compact ? Verdict::ZeroLimit : Verdict::NonzeroLimit;
            res.note = "max |coefficient| of g; compact iff it is below 1e-14";
            r.result = res;
          });
      if (is_full) {
        add(make_row("Thm 8", "IS DoubleLimit", true, {}),
            [&](CriterionRow& r) { evaluate_profile(cx, r, IntegralKind::IS); });
      } else {
        add(make_row("Prop 3", "IS DoubleLimit", false, {nu_u}),
            [&](CriterionRow& r) { evaluate_profile(cx, r, IntegralKind::IS); });
      }
      add(make_row("Thm 9(2)", "K1 BoundaryLimit", true, {nu_u, mu_qn}), [&](CriterionRow& r) {
        evaluate_pointwise(cx, r, PointwiseKind::K1, Mode::BoundaryLimit);
      });
    }
  } else if (s.domain == SpaceKind::Bloch && s.codomain == SpaceKind::Bloch) {
    if (bounded) {
      add(make_row("Thm 4", "K2 Sup", true, {}),
          [&](CriterionRow& r) { evaluate_pointwise(cx, r, PointwiseKind::K2, Mode::Sup); });
    } else {
      add(make_row("Thm 10", "K2 BoundaryLimit", true, {}), [&](CriterionRow& r) {
        evaluate_pointwise(cx, r, PointwiseKind::K2, Mode::BoundaryLimit);
      });
    }
  } else if (s.domain == SpaceKind::Hinf && s.codomain == SpaceKind::Bloch) {
    if (bounded) {
      add(make_row("Thm 5", "K3 Sup", true, {nu_u}),
          [&](CriterionRow& r) { evaluate_pointwise(cx, r, PointwiseKind::K3, Mode::Sup); });
    } else {
      add(make_row("Thm 11", "K3 BoundaryLimit", true, {nu_u}), [&](CriterionRow& r) {
        evaluate_pointwise(cx, r, PointwiseKind::K3, Mode::BoundaryLimit);
      });
    }
  } else {
    if (bounded) {
      add(make_row("Prop 2", "IB Sup", true, {log_g, nu_an}),
          [&](CriterionRow& r) { evaluate_sup(cx, r, IntegralKind::IB); });
      add(make_row("Thm 6", "K4 Sup", true, {mu_qn}),
          [&](CriterionRow& r) { evaluate_pointwise(cx, r, PointwiseKind::K4, Mode::Sup); });
    } else {
      add(make_row("Prop 4", "IB DoubleLimit", true, {log_g, nu_an}),
          [&](CriterionRow& r) { evaluate_profile(cx, r, IntegralKind::IB); });
      add(make_row("Thm 12", "K4 BoundaryLimit", true, {mu_qn}), [&](CriterionRow& r) {
        evaluate_pointwise(cx, r, PointwiseKind::K4, Mode::BoundaryLimit);
      });
    }
  }
  return rows;
}

// Criteria whose value dominates the operator norm with constant 1.
std::optional<double> norm_upper(const Context& cx, const std::vector<CriterionRow>& rows) {
  const auto& s = cx.spec;
  for (const auto& row : rows) {
    if (!row.result || row.result->verdict != Verdict::Finite) continue;
    if (s.op == OpKind::Tg && row.quantity == "IT Sup") return row.result->value;
    if (s.op == OpKind::Sg && row.quantity == "IB Sup") return row.result->value;
    if (s.op == OpKind::Sg && row.quantity == "K2 Sup" && cx.hyp.nu_analytic) {
      return row.result->value;
    }
  }
  return std::nullopt;
}

}  // namespace

CaseReport run_case(const CaseSpec& spec, const RunConfig& config, bool with_norm) {
  config.validate();
  Context cx{spec, config, make_symbol(spec.g), make_weight(spec.nu), make_weight(spec.mu), {}};
  auto& h = cx.hyp;
  h.log_gprime = log_bloch_seminorm(LogKind::LogGPrime, cx.g, config.grid, config.jobs);
  h.log_g = log_bloch_seminorm(LogKind::LogG, cx.g, config.grid, config.jobs);
  h.g_univalent = cx.g.univalent();
  h.log_gprime_in_B = h.g_univalent || h.log_gprime.verdict == Verdict::Finite;
  h.log_g_in_B = h.log_g.verdict == Verdict::Finite;
  h.nu_analytic = cx.nu.is_analytic();
  h.nu_property_U = check_property_U(cx.nu, config.assoc.u_levels).holds();
  h.nu_quasi_normal = cx.nu.quasi_normal_whitelisted();
  h.mu_quasi_normal = cx.mu.quasi_normal_whitelisted();
  h.nu_typical = cx.nu.typical();
  h.mu_typical = cx.mu.typical();
  const auto mu_exp = cx.mu.standard_exponent();
  h.mu_identically_one = mu_exp && *mu_exp == 0.0;

  CaseReport rep;
  rep.spec = spec;
  rep.rows = build_rows(cx);
  rep.hypotheses = h;
  if (h.g_univalent && h.log_gprime.verdict != Verdict::Finite) {
    rep.notes.push_back("log(g') in B taken from univalence of g (Remark 2)");
  }

  bool any_yes = false;
  bool any_no = false;
  const CriterionRow* governing = nullptr;
  for (auto& row : rep.rows) {
    row.implies = implication_of(row);
    any_yes |= row.implies == Implication::Yes;
    any_no |= row.implies == Implication::No;
    if (!governing && row.role == "iff" && row.implies != Implication::Unknown) governing = &row;
  }
  if (!governing) {
    for (const auto& row : rep.rows) {
      if (row.implies == Implication::Yes) {
        governing = &row;
        break;
      }
    }
  }
  const bool bounded_q = spec.question == Question::Bounded;
  if (governing) {
    const bool yes = governing->implies == Implication::Yes;
    rep.verdict = bounded_q ? (yes ? "Bounded" : "Unbounded") : (yes ? "Compact" : "NotCompact");
    rep.governing = governing->id;
  } else {
    rep.verdict = "Inconclusive";
    if (rep.rows.empty()) {
      rep.notes.push_back("no criterion covers this operator on this pair of spaces");
    }
    for (const auto& row : rep.rows) {
      for (const auto& f : row.failed_hypotheses) {
        rep.notes.push_back(row.id + " not applicable: " + f + " not satisfied");
      }
      if (row.applicable && row.implies == Implication::Unknown) {
        rep.notes.push_back(row.id + " (" + row.role + ") gave no decisive verdict");
      }
    }
    if (spec.op == OpKind::Sg && spec.domain == SpaceKind::Hinf &&
        spec.codomain == SpaceKind::Hinf && bounded_q && !h.mu_quasi_normal && !h.log_g_in_B) {
      rep.notes.push_back(
          "only a sufficient condition is available here; unboundedness cannot be decided");
    }
  }
  if (any_yes && any_no) {
    rep.disagreement = true;
    std::string msg = "criteria disagree:";
    for (const auto& row : rep.rows) {
      if (row.implies != Implication::Unknown) msg += " " + row.id + "=" + to_string(row.implies);
    }
    rep.flags.push_back(msg);
  }

  if (with_norm) {
    SearchSpec search = config.search;
    search.grid = config.grid;
    rep.norm = opnorm_lower(spec.op, cx.g, cx.nu, cx.mu, spec.domain, spec.codomain, search,
                            config.jobs);
  } else {
    rep.norm.witness = "not computed";
  }
  rep.norm.criterion_upper = norm_upper(cx, rep.rows);
  if (with_norm && rep.norm.criterion_upper && rep.norm.lower > *rep.norm.criterion_upper * 1.01) {
    rep.norm_consistent = false;
    rep.flags.push_back("norm lower estimate " + format_number(rep.norm.lower) +
                        " exceeds the criterion bound " +
                        format_number(*rep.norm.criterion_upper) + " by more than 1%");
  }
  if (spec.expect && *spec.expect != rep.verdict) {
    rep.flags.push_back("expected " + *spec.expect + ", got " + rep.verdict);
  }
  return rep;
}

int EquivalenceMatrix::disagreement_count() const {
  int n = static_cast<int>(flags.size());
  for (const auto& r : reports) n += static_cast<int>(r.flags.size());
  return n;
}

EquivalenceMatrix equivalence_matrix(const std::vector<CaseSpec>& cases, const RunConfig& config) {
  if (cases.empty()) throw std::invalid_argument("equivalence_matrix: no cases");
  config.validate();
  EquivalenceMatrix m;
  m.reports.resize(cases.size());
  RunConfig inner = config;
  inner.jobs = 1;
  parallel_for(cases.size(), config.jobs,
               [&](std::size_t i) { m.reports[i] = run_case(cases[i], inner); });
  // A compact operator is bounded.
  for (const auto& a : m.reports) {
    if (a.verdict != "Compact") continue;
    for (const auto& b : m.reports) {
      if (b.spec.question == Question::Bounded && b.spec.same_tuple(a.spec) &&
          b.verdict == "Unbounded") {
        m.flags.push_back("incoherent: " + a.spec.label() + " is Compact but " +
                          b.spec.label() + " is Unbounded");
      }
    }
  }
  return m;
}

std::vector<CaseSpec> standard_sweep() {
  std::vector<CaseSpec> out;
  for (const char* g : {"identity", "neglog1mz", "zero"}) {
    for (const char* a : {"0.5", "1"}) {
      for (const char* b : {"0.5", "1"}) {
        for (OpKind op : {OpKind::Tg, OpKind::Sg}) {
          for (Question q : {Question::Bounded, Question::Compact}) {
            CaseSpec c;
            c.op = op;
            c.g = g;
            c.nu = std::string("std:") + a;
            c.mu = std::string("std:") + b;
            c.question = q;
            out.push_back(c);
          }
        }
      }
    }
  }
  return out;
}

json to_json(const CriterionResult& r, const json& inputs) {
  json j{{"kind", r.kind},
         {"mode", to_string(r.mode)},
         {"value", r.value},
         {"witness", {{"r", r.r}, {"theta", r.theta}}},
         {"history", r.history},
         {"verdict", to_string(r.verdict)}};
  if (!inputs.is_null()) j["inputs"] = inputs;
  if (r.interval) j["value_upper"] = r.value_upper;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const CompactnessProfile& p) {
  return json{{"kind", to_string(p.kind)},
              {"levels", p.levels},
              {"values", p.values},
              {"witness_t1", p.witness_t1},
              {"witness_theta", p.witness_theta},
              {"extrapolated", p.extrapolated},
              {"verdict", to_string(p.verdict)}};
}

namespace {

json hypothesis_json(const CriterionResult& r) {
  json j{{"value", r.value}, {"verdict", to_string(r.verdict)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace

json to_json(const CaseReport& r) {
  const auto& h = r.hypotheses;
  json rows = json::array();
  const json inputs{{"g", r.spec.g}, {"nu", r.spec.nu}, {"mu", r.spec.mu}};
  for (const auto& row : r.rows) {
    json j{{"id", row.id},
           {"quantity", row.quantity},
           {"role", row.role},
           {"applicable", row.applicable},
           {"failed_hypotheses", row.failed_hypotheses},
           {"implies", to_string(row.implies)}};
    if (row.result) j["result"] = to_json(*row.result, inputs);
    if (row.profile) j["profile"] = to_json(*row.profile);
    rows.push_back(std::move(j));
  }
  json norm{{"lower", r.norm.lower},
            {"witness", r.norm.witness},
            {"consistent", r.norm_consistent}};
  norm["criterion_upper"] = r.norm.criterion_upper ? json(*r.norm.criterion_upper) : json(nullptr);
  return json{{"schema", kReportSchema},
              {"case", to_json(r.spec)},
              {"hypotheses",
               {{"log_gprime", hypothesis_json(h.log_gprime)},
                {"log_g", hypothesis_json(h.log_g)},
                {"g_univalent", h.g_univalent},
                {"log_gprime_in_B", h.log_gprime_in_B},
                {"log_g_in_B", h.log_g_in_B},
                {"nu_analytic", h.nu_analytic},
                {"nu_property_U", h.nu_property_U},
                {"nu_quasi_normal", h.nu_quasi_normal},
                {"mu_quasi_normal", h.mu_quasi_normal},
                {"nu_typical", h.nu_typical},
                {"mu_typical", h.mu_typical},
                {"mu_identically_one", h.mu_identically_one}}},
              {"criteria", rows},
              {"norm", norm},
              {"flags", r.flags},
              {"notes", r.notes},
              {"verdict", r.verdict},
              {"governing", r.governing}};
}

json to_json(const EquivalenceMatrix& m) {
  json cases = json::array();
  for (const auto& r : m.reports) cases.push_back(to_json(r));
  return json{{"schema", kReportSchema},
              {"kind", "equivalence-matrix"},
              {"cases", cases},
              {"flags", m.flags},
              {"disagreements", m.disagreement_count()}};
}

json weight_report(const RadialWeight& nu, const std::vector<double>& radii,
                   const RunConfig& config) {
  const PropertyU u = check_property_U(nu);
  const PropertyL l = check_property_L(nu);
  const AssociatedSandwich sw = associated_weight_bounds(nu, radii, config.assoc.monomial_n_max,
                                                         config.lp);
  json points = json::array();
  double essential = 1.0;
  for (const auto& p : sw.points) {
    json j{{"r", p.r},
           {"lower", p.lower},
           {"monomial_upper", p.monomial_upper},
           {"monomial_n", p.monomial_n},
           {"upper", p.upper()},
           {"width", p.width()}};
    j["lp_upper"] = p.lp_upper ? json(*p.lp_upper) : json(nullptr);
    if (!p.lp_ladder.empty()) {
      json ladder = json::array();
      for (const auto& [deg, b] : p.lp_ladder) ladder.push_back({{"degree", deg}, {"bound", b}});
      j["lp_ladder"] = ladder;
    }
    points.push_back(std::move(j));
    essential = std::max(essential, p.upper() / p.lower);
  }
  json limits = json::array();
  for (double x : l.limit_estimates) limits.push_back(x);
  return json{{"schema", kReportSchema},
              {"kind", "weight"},
              {"weight", nu.spec()},
              {"U", {{"verdict", to_string(u.verdict)}, {"inf_ratio", u.inf_ratio}}},
              {"L",
               {{"verdict", to_string(l.verdict)},
                {"best_k", l.best_k ? json(*l.best_k) : json(nullptr)},
                {"limit_estimates", limits}}},
              {"normal", u.holds() && l.holds()},
              {"typical", nu.typical()},
              {"analytic_witness", nu.is_analytic()},
              {"quasi_normal_whitelisted", nu.quasi_normal_whitelisted()},
              {"sandwich", points},
              {"essential_constant", essential}};
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

constexpr const char* kCsvHeader =
    "case,id,quantity,role,kind,mode,value,verdict,implies,witness_r,witness_theta\n";

void csv_rows(const CaseReport& r, std::ostringstream& os) {
  for (const auto& row : r.rows) {
    if (!row.result) continue;
    const auto& res = *row.result;
    os << csv_field(r.spec.label()) << ',' << csv_field(row.id) << ',' << csv_field(row.quantity)
       << ',' << row.role << ',' << csv_field(res.kind) << ',' << to_string(res.mode) << ','
       << format_number(res.value) << ',' << to_string(res.verdict) << ','
       << to_string(row.implies) << ',' << format_number(res.r) << ','
       << format_number(res.theta) << '\n';
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void markdown_case(const CaseReport& r, std::ostringstream& os) {
  const auto& h = r.hypotheses;
  os << "## " << r.spec.label() << "\n\n";
  os << "**Verdict:** " << r.verdict << " (governing: " << r.governing << ")\n\n";
  os << "| hypothesis | value |\n|---|---|\n";
  os << "| log(g') in B | " << yes_no(h.log_gprime_in_B) << " (seminorm "
     << format_number(h.log_gprime.value) << ", " << to_string(h.log_gprime.verdict) << ") |\n";
  os << "| log(g) in B | " << yes_no(h.log_g_in_B) << " (seminorm "
     << format_number(h.log_g.value) << ", " << to_string(h.log_g.verdict) << ") |\n";
  os << "| g univalent | " << yes_no(h.g_univalent) << " |\n";
  os << "| nu analytic | " << yes_no(h.nu_analytic) << " |\n";
  os << "| nu property (U) | " << yes_no(h.nu_property_U) << " |\n";
  os << "| nu quasi-normal | " << yes_no(h.nu_quasi_normal) << " |\n";
  os << "| mu quasi-normal | " << yes_no(h.mu_quasi_normal) << " |\n\n";
  os << "| criterion | quantity | role | applicable | value | verdict | implies |\n"
        "|---|---|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    os << "| " << row.id << " | " << row.quantity << " | " << row.role << " | "
       << yes_no(row.applicable) << " | "
       << (row.result ? format_number(row.result->value) : std::string("-")) << " | "
       << (row.result ? to_string(row.result->verdict) : std::string("-")) << " | "
       << to_string(row.implies) << " |\n";
  }
  os << "\nNorm lower estimate: " << format_number(r.norm.lower) << " (" << r.norm.witness << ")";
  if (r.norm.criterion_upper) os << ", criterion bound " << format_number(*r.norm.criterion_upper);
  os << "\n";
  for (const auto& f : r.flags) os << "\n- FLAG: " << f;
  for (const auto& n : r.notes) os << "\n- note: " << n;
  os << "\n\n";
}

}  // namespace

std::string emit_weight_report(const json& w, const std::string& format) {
  std::ostringstream os;
  auto num = [](const json& v) { return v.is_number() ? format_number(v.get<double>()) : std::string("-"); };
  if (format == "json") {
    os << w.dump(2) << '\n';
  } else if (format == "csv") {
    os << "weight,r,lower,monomial_upper,lp_upper,upper\n";
    for (const auto& p : w.at("sandwich")) {
      os << csv_field(w.at("weight").get<std::string>()) << ',' << num(p.at("r")) << ','
         << num(p.at("lower")) << ',' << num(p.at("monomial_upper")) << ',' << num(p.at("lp_upper"))
         << ',' << num(p.at("upper")) << '\n';
    }
  } else if (format == "markdown") {
    os << "## Weight " << w.at("weight").get<std::string>() << "\n\n| property | value |\n|---|---|\n";
    os << "| U | " << w.at("U").at("verdict").get<std::string>() << " (inf ratio "
       << num(w.at("U").at("inf_ratio")) << ") |\n";
    os << "| L | " << w.at("L").at("verdict").get<std::string>() << " |\n";
    os << "| normal | " << yes_no(w.at("normal")) << " |\n";
    os << "| typical | " << yes_no(w.at("typical")) << " |\n";
    os << "| analytic witness | " << yes_no(w.at("analytic_witness")) << " |\n";
    os << "| quasi-normal (whitelist) | " << yes_no(w.at("quasi_normal_whitelisted")) << " |\n";
    os << "| essential constant (probed radii) | " << num(w.at("essential_constant")) << " |\n\n";
    os << "| r | lower | monomial upper | LP upper | upper |\n|---|---|---|---|---|\n";
    for (const auto& p : w.at("sandwich")) {
      os << "| " << num(p.at("r")) << " | " << num(p.at("lower")) << " | "
         << num(p.at("monomial_upper")) << " | " << num(p.at("lp_upper")) << " | "
         << num(p.at("upper")) << " |\n";
    }
  } else {
    throw std::invalid_argument("unknown format '" + format + "' (expected json, csv or markdown)");
  }
  return os.str();
}

std::string emit_report(const CaseReport& report, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << to_json(report).dump(2) << '\n';
  } else if (format == "csv") {
    os << kCsvHeader;
    csv_rows(report, os);
  } else if (format == "markdown") {
    markdown_case(report, os);
  } else {
    throw std::invalid_argument("unknown format '" + format + "' (expected json, csv or markdown)");
  }
  return os.str();
}

std::string emit_matrix(const EquivalenceMatrix& matrix, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << to_json(matrix).dump(2) << '\n';
  } else if (format == "csv") {
    os << kCsvHeader;
    for (const auto& r : matrix.reports) csv_rows(r, os);
  } else if (format == "markdown") {
    os << "# Equivalence matrix\n\n| case | verdict | governing | criteria | flags |\n"
          "|---|---|---|---|---|\n";
    for (const auto& r : matrix.reports) {
      std::string crit;
      for (const auto& row : r.rows) {
        if (!row.result) continue;
        if (!crit.empty()) crit += "; ";
        crit += row.id + ": " + to_string(row.result->verdict);
      }
      os << "| " << r.spec.label() << " | " << r.verdict << " | " << r.governing << " | " << crit
         << " | " << r.flags.size() << " |\n";
    }
    os << "\nDisagreements: " << matrix.disagreement_count() << "\n";
    for (const auto& f : matrix.flags) os << "- FLAG: " << f << "\n";
  } else {
    throw std::invalid_argument("unknown format '" + format + "' (expected json, csv or markdown)");
  }
  return os.str();
}

}  // namespace volterra
