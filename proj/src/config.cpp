#include "volterra/config.hpp"

#include <charconv>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string_view>
#include <system_error>


namespace volterra {

using nlohmann::json;

void RunConfig::validate() const {
  grid.validate();
  quad.validate();
  if (grid.levels < 6) throw std::invalid_argument("config: grid.levels must be at least 6");
  if (search.degree < 0 || search.random_polys < 0 || search.restarts < 0 || search.sweeps < 0) {
    throw std::invalid_argument("config: search budget must be nonnegative");
  }
  if (lp.degree < 1 || lp.levels < 1 || lp.phases < 3) {
    throw std::invalid_argument("config: lp.degree, lp.levels must be positive and lp.phases >= 3");
  }
  if (double_limit.m_lo < 1 || double_limit.m_hi < double_limit.m_lo + 3 || double_limit.depth < 1) {
    throw std::invalid_argument("config: double_limit needs m_lo >= 1, m_hi >= m_lo + 3, depth >= 1");
  }
  if (jobs < 1) throw std::invalid_argument("config: jobs must be at least 1");
  if (format != "json" && format != "csv" && format != "markdown") {
    throw std::invalid_argument("config: format must be json, csv or markdown");
  }
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw std::invalid_argument("config: unknown key '" + where + "." + key + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
  check_keys(j, {"grid", "quad", "double_limit", "lp", "search", "assoc", "jobs", "output", "format",
                 "cases", "sweep"},
             "config");
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    check_keys(g, {"levels", "substeps", "angles", "refine_tol", "refine_candidates"}, "grid");
    read(g, "levels", c.grid.levels);
    read(g, "substeps", c.grid.substeps);
    read(g, "angles", c.grid.angles);
    read(g, "refine_tol", c.grid.refine_tol);
    read(g, "refine_candidates", c.grid.refine_candidates);
  }
  if (j.contains("quad")) {
    const auto& q = j.at("quad");
    check_keys(q, {"order", "tol", "max_panels", "substeps"}, "quad");
    read(q, "order", c.quad.order);
    read(q, "tol", c.quad.tol);
    read(q, "max_panels", c.quad.max_panels);
    read(q, "substeps", c.quad.substeps);
  }
  if (j.contains("double_limit")) {
    const auto& d = j.at("double_limit");
    check_keys(d, {"m_lo", "m_hi", "depth"}, "double_limit");
    read(d, "m_lo", c.double_limit.m_lo);
    read(d, "m_hi", c.double_limit.m_hi);
    read(d, "depth", c.double_limit.depth);
  }
  if (j.contains("lp")) {
    const auto& l = j.at("lp");
    check_keys(l, {"enabled", "degree", "levels", "substeps", "angles", "phases", "max_iterations",
                   "exchange_rounds", "ladder_start"},
               "lp");
    read(l, "enabled", c.lp.enabled);
    read(l, "degree", c.lp.degree);
    read(l, "levels", c.lp.levels);
    read(l, "substeps", c.lp.substeps);
    read(l, "angles", c.lp.angles);
    read(l, "phases", c.lp.phases);
    read(l, "max_iterations", c.lp.max_iterations);
    read(l, "exchange_rounds", c.lp.exchange_rounds);
    read(l, "ladder_start", c.lp.ladder_start);
  }
  if (j.contains("search")) {
    const auto& s = j.at("search");
    check_keys(s, {"degree", "random_polys", "restarts", "sweeps", "seed"}, "search");
    read(s, "degree", c.search.degree);
    read(s, "random_polys", c.search.random_polys);
    read(s, "restarts", c.search.restarts);
    read(s, "sweeps", c.search.sweeps);
    read(s, "seed", c.search.seed);
  }
  if (j.contains("assoc")) {
    const auto& a = j.at("assoc");
    check_keys(a, {"monomial_n_max", "u_levels"}, "assoc");
    read(a, "monomial_n_max", c.assoc.monomial_n_max);
    read(a, "u_levels", c.assoc.u_levels);
  }
  read(j, "jobs", c.jobs);
  read(j, "output", c.output);
  read(j, "format", c.format);
  c.search.grid = c.grid;
  return c;
}

json to_json(const RunConfig& c) {
  return json{
      {"grid",
       {{"levels", c.grid.levels},
        {"substeps", c.grid.substeps},
        {"angles", c.grid.angles},
        {"refine_tol", c.grid.refine_tol},
        {"refine_candidates", c.grid.refine_candidates}}},
      {"quad",
       {{"order", c.quad.order},
        {"tol", c.quad.tol},
        {"max_panels", c.quad.max_panels},
        {"substeps", c.quad.substeps}}},
      {"double_limit",
       {{"m_lo", c.double_limit.m_lo}, {"m_hi", c.double_limit.m_hi}, {"depth", c.double_limit.depth}}},
      {"lp",
       {{"enabled", c.lp.enabled},
        {"degree", c.lp.degree},
        {"levels", c.lp.levels},
        {"substeps", c.lp.substeps},
        {"angles", c.lp.angles},
        {"phases", c.lp.phases},
        {"max_iterations", c.lp.max_iterations},
        {"exchange_rounds", c.lp.exchange_rounds},
        {"ladder_start", c.lp.ladder_start}}},
      {"search",
       {{"degree", c.search.degree},
        {"random_polys", c.search.random_polys},
        {"restarts", c.search.restarts},
        {"sweeps", c.search.sweeps},
        {"seed", c.search.seed}}},
      {"assoc", {{"monomial_n_max", c.assoc.monomial_n_max}, {"u_levels", c.assoc.u_levels}}},
      {"jobs", c.jobs},
      {"output", c.output},
      {"format", c.format}};
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("VOLTERRA_SEED");
  if (!s || !*s) return fallback;
  const std::string_view text(s);
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("VOLTERRA_SEED must be a nonnegative integer");
  }
  return v;
}

}  // namespace volterra
