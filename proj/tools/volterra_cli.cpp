// volterra: command-line front end for the criteria, weight and norm checks.
//
// Exit codes: 0 success, 1 the run raised flags (or no criterion applied),
// 2 usage or input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "volterra/config.hpp"
#include "volterra/parallel.hpp"
#include "volterra/symbols.hpp"
#include "volterra/util.hpp"
#include "volterra/verify.hpp"
#include "volterra/weights.hpp"

namespace {

using nlohmann::json;
using namespace volterra;

constexpr int kExitFlags = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Settings shared by every subcommand. Optionals stay empty unless given on
// the command line so that a config file can fill them in.
struct Common {
  std::string config_path;
  std::optional<int> jobs;
  std::optional<std::string> format;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<int> levels;
  std::optional<int> angles;
  std::optional<double> quad_tol;
  std::optional<int> lp_degree;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON config file (flags take precedence)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--jobs", c.jobs, "Worker threads (default: available parallelism)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "json, csv or markdown")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));
  cmd->add_option("--output,-o", c.output, "Write the report here instead of stdout");
  cmd->add_option("--seed", c.seed, "Search seed (overrides VOLTERRA_SEED)");
  cmd->add_option("--levels", c.levels, "Dyadic grid levels (>= 6)");
  cmd->add_option("--angles", c.angles, "Angular samples on [0, 2pi)");
  cmd->add_option("--quad-tol", c.quad_tol, "Relative quadrature tolerance");
  cmd->add_option("--lp-degree", c.lp_degree, "Top degree of the extremal LP");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "': " + e.what());
  }
}

// default < file < VOLTERRA_SEED < flag.
RunConfig resolve(const Common& c, const json& file) {
  RunConfig base;
  base.jobs = default_jobs();
  RunConfig cfg = file.is_null() ? base : config_from_json(file, base);
  cfg.search.seed = seed_from_env(cfg.search.seed);
  if (c.jobs) cfg.jobs = *c.jobs;
  if (c.format) cfg.format = *c.format;
  if (c.output) cfg.output = *c.output;
  if (c.seed) cfg.search.seed = *c.seed;
  if (c.levels) cfg.grid.levels = *c.levels;
  if (c.angles) cfg.grid.angles = *c.angles;
  if (c.quad_tol) cfg.quad.tol = *c.quad_tol;
  if (c.lp_degree) cfg.lp.degree = *c.lp_degree;
  cfg.search.grid = cfg.grid;
  cfg.validate();
  return cfg;
}

void write_out(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + cfg.output + "'");
  out << text;
}

struct CaseFlags {
  std::string op = "tg";
  std::string g = "neglog1mz";
  std::string nu = "std:1";
  std::string mu = "std:1";
  std::string domain = "hinf";
  std::string codomain = "hinf";
  std::string question = "bounded";
};

void add_case_flags(CLI::App* cmd, CaseFlags& f, bool with_question) {
  cmd->add_option("--op", f.op, "tg or sg")->capture_default_str();
  cmd->add_option("--g", f.g, "Symbol: neglog1mz, identity, cayleypow:<gamma>, expz, zero, poly:[c0,c1,...]")
      ->capture_default_str();
  cmd->add_option("--nu", f.nu, "Domain weight")->capture_default_str();
  cmd->add_option("--mu", f.mu, "Codomain weight")->capture_default_str();
  cmd->add_option("--domain", f.domain, "hinf or bloch")->capture_default_str();
  cmd->add_option("--codomain", f.codomain, "hinf or bloch")->capture_default_str();
  if (with_question) cmd->add_option("--question", f.question, "bounded or compact")->capture_default_str();
}

CaseSpec to_case(const CaseFlags& f) {
  CaseSpec c;
  try {
    c.op = parse_op_kind(f.op);
    c.g = f.g;
    c.nu = f.nu;
    c.mu = f.mu;
    c.domain = parse_space_kind(f.domain);
    c.codomain = parse_space_kind(f.codomain);
    c.question = parse_question(f.question);
    c.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return c;
}

const char* kValidCombinations =
    "valid combinations:\n"
    "  --op tg --domain hinf  --codomain hinf   (bounded, compact)\n"
    "  --op sg --domain hinf  --codomain hinf   (bounded, compact)\n"
    "  --op sg --domain bloch --codomain bloch  (bounded, compact)\n"
    "  --op sg --domain hinf  --codomain bloch  (bounded, compact)\n"
    "  --op sg --domain bloch --codomain hinf   (bounded, compact)\n";

int cmd_weights(const std::string& spec, const std::vector<double>& radii, bool no_lp,
                const Common& common) {
  const json file = common.config_path.empty() ? json() : read_json_file(common.config_path);
  RunConfig cfg = resolve(common, file);
  if (no_lp) cfg.lp.enabled = false;
  for (double r : radii) {
    if (!(r >= 0.0 && r < 1.0)) throw UsageError("--radii entries must lie in [0, 1)");
  }
  RadialWeight nu = [&] {
    try {
      return make_weight(spec);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  write_out(cfg, emit_weight_report(weight_report(nu, radii, cfg), cfg.format));
  return 0;
}

int cmd_criteria(const CaseFlags& flags, const std::string& only_id, const Common& common) {
  const json file = common.config_path.empty() ? json() : read_json_file(common.config_path);
  const RunConfig cfg = resolve(common, file);
  const CaseSpec spec = to_case(flags);
  const CaseReport rep = run_case(spec, cfg, /*with_norm=*/false);
  if (rep.rows.empty()) {
    std::cerr << "volterra: no criterion covers " << spec.label() << "\n" << kValidCombinations;
    return kExitUsage;
  }
  const CriterionRow* chosen = nullptr;
  for (const auto& row : rep.rows) {
    if (!row.applicable) continue;
    if (!only_id.empty() ? row.id == only_id : (rep.governing == "none" || row.id == rep.governing)) {
      chosen = &row;
      break;
    }
  }
  if (!chosen) {
    std::cerr << "volterra: no applicable criterion for " << spec.label() << "\n";
    for (const auto& row : rep.rows) {
      std::cerr << "  " << row.id << " (" << row.quantity << ")";
      if (!row.applicable) {
        std::cerr << ": fails";
        for (const auto& h : row.failed_hypotheses) std::cerr << ' ' << h;
      }
      std::cerr << '\n';
    }
    return kExitFlags;
  }
  if (cfg.format != "json") {
    write_out(cfg, emit_report(rep, cfg.format));
    return 0;
  }
  json j = chosen->profile ? volterra::to_json(*chosen->profile)
                            : volterra::to_json(*chosen->result, volterra::to_json(spec));
  j["id"] = chosen->id;
  j["quantity"] = chosen->quantity;
  j["role"] = chosen->role;
  j["implies"] = to_string(chosen->implies);
  j["case_verdict"] = rep.verdict;
  write_out(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_opnorm(const CaseFlags& flags, const std::optional<int>& degree,
               const std::optional<int>& random_polys, const Common& common) {
  const json file = common.config_path.empty() ? json() : read_json_file(common.config_path);
  RunConfig cfg = resolve(common, file);
  if (degree) cfg.search.degree = *degree;
  if (random_polys) cfg.search.random_polys = *random_polys;
  cfg.validate();
  const CaseSpec spec = to_case(flags);
  const SymbolSpec g = make_symbol(spec.g);
  const NormEstimate est = opnorm_lower(spec.op, g, make_weight(spec.nu), make_weight(spec.mu),
                                        spec.domain, spec.codomain, cfg.search, cfg.jobs);
  json coeffs = json::array();
  for (const auto& c : est.witness_coeffs) coeffs.push_back({c.real(), c.imag()});
  json j{{"schema", kReportSchema},
         {"kind", "opnorm"},
         {"case", to_json(spec)},
         {"lower", est.lower},
         {"witness", est.witness},
         {"witness_coeffs", coeffs},
         {"seed", cfg.search.seed}};
  if (cfg.format == "json") {
    write_out(cfg, j.dump(2) + "\n");
  } else if (cfg.format == "csv") {
    write_out(cfg, "case,lower,witness\n\"" + spec.label() + "\"," + format_number(est.lower) + ",\"" +
                       est.witness + "\"\n");
  } else {
    write_out(cfg, "| case | lower | witness |\n|---|---|---|\n| " + spec.label() + " | " +
                       format_number(est.lower) + " | " + est.witness + " |\n");
  }
  return 0;
}

int cmd_verify(const std::string& path, const Common& common) {
  const json file = read_json_file(path);
  if (!file.is_object()) throw UsageError("'" + path + "' must hold a JSON object");
  const RunConfig cfg = resolve(common, file);
  std::vector<CaseSpec> cases;
  if (file.contains("sweep")) {
    const json& s = file.at("sweep");
    if (!s.is_string() || s.get<std::string>() != "standard") {
      throw UsageError("'sweep' must be \"standard\"");
    }
    cases = standard_sweep();
  }
  if (file.contains("cases")) {
    if (!file.at("cases").is_array()) throw UsageError("'cases' must be an array");
    for (const auto& c : file.at("cases")) {
      try {
        cases.push_back(case_from_json(c));
      } catch (const std::exception& e) {
        throw UsageError(std::string("case ") + std::to_string(cases.size()) + ": " + e.what());
      }
    }
  }
  if (cases.empty()) throw UsageError("'" + path + "' lists no cases");
  const EquivalenceMatrix m = equivalence_matrix(cases, cfg);
  write_out(cfg, emit_matrix(m, cfg.format));
  bool flagged = !m.flags.empty();
  for (const auto& r : m.reports) flagged = flagged || !r.ok();
  if (flagged) {
    for (const auto& r : m.reports) {
      for (const auto& f : r.flags) std::cerr << "flag: " << r.spec.label() << ": " << f << '\n';
    }
    for (const auto& f : m.flags) std::cerr << "flag: " << f << '\n';
  }
  return flagged ? kExitFlags : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of boundedness and compactness criteria for Volterra-type "
               "operators between weighted sup-norm and Bloch-type spaces"};
  app.require_subcommand(1);

  Common common;
  CaseFlags case_flags;

  auto* weights = app.add_subcommand("weights", "Weight properties");
  weights->require_subcommand(1);
  auto* check = weights->add_subcommand("check", "Property table and associated-weight sandwich");
  std::string weight_spec;
  std::vector<double> radii{0.5, 0.9};
  bool no_lp = false;
  check->add_option("spec", weight_spec, "std:<a>, log:<a>, one, omega:<spec>, product:<spec>,<spec>")
      ->required();
  check->add_option("--radii", radii, "Radii for the sandwich")->delimiter(',')->capture_default_str();
  check->add_flag("--no-lp", no_lp, "Skip the extremal LP upper bounds");
  add_common(check, common);

  auto* criteria = app.add_subcommand("criteria", "Evaluate the criterion governing one case");
  std::string only_id;
  add_case_flags(criteria, case_flags, true);
  criteria->add_option("--id", only_id, "Evaluate this criterion id instead of the governing one");
  add_common(criteria, common);

  auto* opnorm = app.add_subcommand("opnorm", "Lower estimate of the operator norm");
  std::optional<int> degree, random_polys;
  add_case_flags(opnorm, case_flags, false);
  opnorm->add_option("--degree", degree, "Degree of the test polynomials");
  opnorm->add_option("--random", random_polys, "Number of random test polynomials");
  add_common(opnorm, common);

  auto* verify = app.add_subcommand("verify", "Run a case list and check agreement");
  std::string verify_path;
  verify->add_option("cases", verify_path, "JSON with 'cases' and/or \"sweep\": \"standard\"")
      ->required();
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_weights(weight_spec, radii, no_lp, common);
    if (criteria->parsed()) return cmd_criteria(case_flags, only_id, common);
    if (opnorm->parsed()) return cmd_opnorm(case_flags, degree, random_polys, common);
    if (verify->parsed()) return cmd_verify(verify_path, common);
  } catch (const UsageError& e) {
    std::cerr << "volterra: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "volterra: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "volterra: " << e.what() << '\n';
    return kExitFlags + 2;
  }
  return kExitUsage;
}
