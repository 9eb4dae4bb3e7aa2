#include "volterra/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "volterra/simplex.hpp"
#include "volterra/util.hpp"

namespace volterra {

struct RadialWeight::Node {
  WeightFamily family = WeightFamily::One;
  double alpha = 0.0;
  std::vector<RadialWeight> factors;
  std::string name;
  std::function<double(double)> eval;
  bool typical = false;
  std::optional<AnalyticWitness> witness;
};

cplx AnalyticWitness::evaluate(cplx z) const {
  if (closed_form) return closed_form(z);
  cplx acc{};
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

double AnalyticWitness::min_coefficient() const {
  return coeffs.empty() ? 0.0 : *std::min_element(coeffs.begin(), coeffs.end());
}

namespace {

// 1 - r^2 without cancellation near r = 1.
double one_minus_r2(double r) { return (1.0 - r) * (1.0 + r); }

// Spreads coefficients of a series in w = z^2 onto even powers of z.
std::vector<double> even_powers(const std::vector<double>& in_w) {
  std::vector<double> out(kWitnessDegree, 0.0);
  for (std::size_t k = 0; 2 * k < out.size() && k < in_w.size(); ++k) out[2 * k] = in_w[k];
  return out;
}

std::optional<AnalyticWitness> checked(AnalyticWitness w) {
  // Only nonnegative coefficients certify |f(z)| <= f(|z|).
  if (w.min_coefficient() < 0.0) return std::nullopt;
  return w;
}

AnalyticWitness constant_witness() {
  AnalyticWitness w;
  w.coeffs = {1.0};
  w.closed_form = [](cplx) { return cplx{1.0}; };
  return w;
}

std::optional<AnalyticWitness> standard_witness(double alpha) {
  if (alpha == 0.0) return constant_witness();
  std::vector<double> c(kWitnessDegree / 2 + 1);
  c[0] = 1.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    c[k] = c[k - 1] * (alpha + static_cast<double>(k) - 1.0) / static_cast<double>(k);
  }
  AnalyticWitness w;
  w.coeffs = even_powers(c);
  w.closed_form = [alpha](cplx z) { return std::pow(1.0 - z * z, -alpha); };
  return checked(std::move(w));
}

std::optional<AnalyticWitness> log_witness(double alpha) {
  // f(z) = (1 - log(1 - z^2))^alpha; in w = z^2 the base is 1 + sum w^k / k.
  const std::size_t n = kWitnessDegree / 2 + 1;
  std::vector<double> h(n);
  h[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) h[k] = 1.0 / static_cast<double>(k);
  AnalyticWitness w;
  w.coeffs = even_powers(real_series_pow(h, alpha, n));
  w.closed_form = [alpha](cplx z) { return std::pow(1.0 - std::log(1.0 - z * z), alpha); };
  return checked(std::move(w));
}

std::optional<AnalyticWitness> product_witness(const std::vector<RadialWeight>& factors) {
  std::vector<double> coeffs{1.0};
  std::vector<std::function<cplx(cplx)>> forms;
  for (const auto& f : factors) {
    const auto& w = f.analytic_witness();
    if (!w) return std::nullopt;
    coeffs = real_series_mul(coeffs, w->coeffs, kWitnessDegree);
    forms.push_back(w->closed_form);
  }
  AnalyticWitness w;
  w.coeffs = std::move(coeffs);
  w.closed_form = [forms](cplx z) {
    cplx acc{1.0};
    for (const auto& f : forms) acc *= f(z);
    return acc;
  };
  return checked(std::move(w));
}

std::optional<AnalyticWitness> omega_witness(const RadialWeight& mu) {
  const auto& wm = mu.analytic_witness();
  if (!wm) return std::nullopt;
  std::vector<double> geometric(kWitnessDegree, 0.0);
  for (std::size_t k = 0; k < geometric.size(); k += 2) geometric[k] = 1.0;
  AnalyticWitness w;
  w.coeffs = real_series_mul(wm->coeffs, geometric, kWitnessDegree);
  auto inner = wm->closed_form;
  w.closed_form = [inner](cplx z) { return inner(z) / (1.0 - z * z); };
  return checked(std::move(w));
}

void require_exponent(double alpha, const char* family, bool strict) {
  if (!std::isfinite(alpha) || alpha < 0.0 || (strict && alpha == 0.0)) {
    throw std::invalid_argument(std::string(family) + " weight exponent must be " +
                                (strict ? "positive" : "nonnegative") + ", got " +
                                format_number(alpha));
  }
}

}  // namespace

RadialWeight::RadialWeight(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

RadialWeight RadialWeight::standard(double alpha) {
  require_exponent(alpha, "std", false);
  auto n = std::make_shared<Node>();
  n->family = WeightFamily::Standard;
  n->alpha = alpha;
  n->typical = alpha > 0.0;
  n->witness = standard_witness(alpha);
  return RadialWeight(std::move(n));
}

RadialWeight RadialWeight::logarithmic(double alpha) {
  require_exponent(alpha, "log", true);
  auto n = std::make_shared<Node>();
  n->family = WeightFamily::Log;
  n->alpha = alpha;
  n->typical = true;
  n->witness = log_witness(alpha);
  return RadialWeight(std::move(n));
}

RadialWeight RadialWeight::one() {
  auto n = std::make_shared<Node>();
  n->family = WeightFamily::One;
  n->witness = constant_witness();
  return RadialWeight(std::move(n));
}

RadialWeight RadialWeight::product(std::vector<RadialWeight> factors) {
  if (factors.empty()) throw std::invalid_argument("product weight needs at least one factor");
  if (factors.size() == 1) return factors.front();
  auto n = std::make_shared<Node>();
  n->family = WeightFamily::Product;
  n->typical = std::any_of(factors.begin(), factors.end(),
                           [](const RadialWeight& w) { return w.typical(); });
  n->witness = product_witness(factors);
  n->factors = std::move(factors);
  return RadialWeight(std::move(n));
}

RadialWeight RadialWeight::omega_of(const RadialWeight& mu) {
  auto n = std::make_shared<Node>();
  n->family = WeightFamily::OmegaOf;
  n->typical = true;
  n->witness = omega_witness(mu);
  n->factors = {mu};
  return RadialWeight(std::move(n));
}

RadialWeight RadialWeight::custom(std::string name, std::function<double(double)> eval,
                                  bool typical, std::optional<AnalyticWitness> witness) {
  if (!eval) throw std::invalid_argument("custom weight needs an evaluator");
  if (witness && witness->min_coefficient() < 0.0) {
    throw std::invalid_argument("custom weight witness has a negative coefficient");
  }
  auto n = std::make_shared<Node>();
  n->family = WeightFamily::Custom;
  n->name = std::move(name);
  n->eval = std::move(eval);
  n->typical = typical;
  n->witness = std::move(witness);
  return RadialWeight(std::move(n));
}

double RadialWeight::operator()(double r) const {
  const Node& n = *node_;
  switch (n.family) {
    case WeightFamily::Standard:
      return n.alpha == 0.0 ? 1.0 : std::pow(one_minus_r2(r), n.alpha);
    case WeightFamily::Log:
      return std::pow(1.0 - std::log(one_minus_r2(r)), -n.alpha);
    case WeightFamily::One:
      return 1.0;
    case WeightFamily::Product: {
      double acc = 1.0;
      for (const auto& f : n.factors) acc *= f(r);
      return acc;
    }
    case WeightFamily::OmegaOf:
      return one_minus_r2(r) * n.factors.front()(r);
    case WeightFamily::Custom:
      return n.eval(r);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

WeightFamily RadialWeight::family() const { return node_->family; }
double RadialWeight::alpha() const { return node_->alpha; }
const std::vector<RadialWeight>& RadialWeight::factors() const { return node_->factors; }
bool RadialWeight::typical() const { return node_->typical; }
const std::optional<AnalyticWitness>& RadialWeight::analytic_witness() const {
  return node_->witness;
}

std::string RadialWeight::spec() const {
  const Node& n = *node_;
  switch (n.family) {
    case WeightFamily::Standard: return "std:" + format_number(n.alpha);
    case WeightFamily::Log: return "log:" + format_number(n.alpha);
    case WeightFamily::One: return "one";
    case WeightFamily::OmegaOf: return "omega:" + n.factors.front().spec();
    case WeightFamily::Custom: return n.name;
    case WeightFamily::Product: {
      // product:<a>,<b> is binary; longer products nest to the right.
      std::string out = n.factors.back().spec();
      for (std::size_t i = n.factors.size() - 1; i-- > 0;) {
        out = "product:" + n.factors[i].spec() + "," + out;
      }
      return out;
    }
  }
  return {};
}

std::optional<double> RadialWeight::standard_exponent() const {
  const Node& n = *node_;
  switch (n.family) {
    case WeightFamily::Standard: return n.alpha;
    case WeightFamily::One: return 0.0;
    case WeightFamily::OmegaOf: {
      auto inner = n.factors.front().standard_exponent();
      if (!inner) return std::nullopt;
      return *inner + 1.0;
    }
    case WeightFamily::Product: {
      double total = 0.0;
      for (const auto& f : n.factors) {
        auto e = f.standard_exponent();
        if (!e) return std::nullopt;
        total += *e;
      }
      return total;
    }
    default: return std::nullopt;
  }
}

bool RadialWeight::quasi_normal_whitelisted() const {
  auto e = standard_exponent();
  return e && *e > 0.0;
}

namespace {

class WeightParser {
public:
  explicit WeightParser(std::string_view text) : text_(text) {}

  RadialWeight parse_all() {
    RadialWeight w = parse();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return w;
  }

private:
  RadialWeight parse() {
    if (accept("std:")) return RadialWeight::standard(number("std exponent"));
    if (accept("log:")) return RadialWeight::logarithmic(number("log exponent"));
    if (accept("one")) return RadialWeight::one();
    if (accept("omega:")) return RadialWeight::omega_of(parse());
    if (accept("product:")) {
      RadialWeight a = parse();
      if (!accept(",")) fail("expected ',' between product factors");
      RadialWeight b = parse();
      std::vector<RadialWeight> fs;
      for (const auto& w : {a, b}) {
        if (w.family() == WeightFamily::Product) {
          fs.insert(fs.end(), w.factors().begin(), w.factors().end());
        } else {
          fs.push_back(w);
        }
      }
      return RadialWeight::product(std::move(fs));
    }
    fail("expected std:<a>, log:<a>, one, product:<spec>,<spec> or omega:<spec>");
  }

  double number(std::string_view what) {
    const std::size_t end = std::min(text_.find(',', pos_), text_.size());
    const auto token = text_.substr(pos_, end - pos_);
    pos_ = end;
    return parse_number(token, what);
  }

  bool accept(std::string_view prefix) {
    if (text_.substr(pos_).starts_with(prefix)) {
      pos_ += prefix.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("weight spec '" + std::string(text_) + "' at offset " +
                                std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RadialWeight make_weight(std::string_view spec) { return WeightParser(spec).parse_all(); }

RadialWeight omega_of(const RadialWeight& mu) { return RadialWeight::omega_of(mu); }

std::string to_string(PropertyVerdict v) {
  switch (v) {
    case PropertyVerdict::Holds: return "holds";
    case PropertyVerdict::Fails: return "fails";
    case PropertyVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

constexpr double kPropertyTol = 1e-3;

double checked_value(const RadialWeight& nu, double r) {
  const double v = nu(r);
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw std::domain_error("weight " + nu.spec() + " is not positive and finite at r = " +
                            format_number(r));
  }
  return v;
}

// Limit of rho(n) = a + b/(n + c) through three equally spaced samples.
double rational_limit(double r0, double r1, double r2, double h) {
  const double d1 = r1 - r0;
  const double d2 = r2 - r1;
  const double scale = std::max({std::abs(r0), std::abs(r1), std::abs(r2), 1e-300});
  if (std::abs(d1) <= 1e-14 * scale || std::abs(d2) <= 1e-14 * scale) return r2;
  const double q = d1 / d2;
  if (!(q > 1.0)) return r2;
  const double u = 2.0 * h / (q - 1.0);
  const double b = -d1 * u * (u + h) / h;
  const double a = r0 - b / u;
  return std::isfinite(a) ? a : r2;
}

}  // namespace

PropertyU check_property_U(const RadialWeight& nu, int n_max) {
  if (n_max < 8) throw std::invalid_argument("check_property_U: n_max must be at least 8");
  PropertyU out;
  std::vector<double> running;
  double prev = checked_value(nu, 0.0);
  double inf = std::numeric_limits<double>::infinity();
  for (int n = 0; n < n_max; ++n) {
    const double next = checked_value(nu, dyadic_radius(n + 1));
    out.ratios.push_back(next / prev);
    inf = std::min(inf, next / prev);
    running.push_back(inf);
    prev = next;
  }
  out.inf_ratio = inf;
  const std::size_t quarter = running.size() - running.size() / 4 - 1;
  const double change = (running[quarter] - running.back()) / std::max(running[quarter], 1e-300);
  if (inf <= kPropertyTol) {
    out.verdict = PropertyVerdict::Fails;
  } else if (change <= kPropertyTol) {
    out.verdict = PropertyVerdict::Holds;
  }
  return out;
}

PropertyL check_property_L(const RadialWeight& nu, int n_max, int k_max) {
  if (n_max < 8) throw std::invalid_argument("check_property_L: n_max must be at least 8");
  if (k_max < 1) throw std::invalid_argument("check_property_L: k_max must be at least 1");
  std::vector<double> values(n_max + 1);
  for (int n = 0; n <= n_max; ++n) values[n] = checked_value(nu, dyadic_radius(n));

  PropertyL out;
  bool all_monotone = true;
  // Larger shifts shorten the usable tail and make the extrapolation
  // unreliable for slowly varying weights, so k stays within n_max / 5.
  const int k_top = std::min(k_max, std::max(1, n_max / 5));
  for (int k = 1; k <= k_top; ++k) {
    const int n_hi = n_max - k;
    const int n_lo = n_max / 2;
    std::vector<double> tail;
    for (int n = n_lo; n <= n_hi; ++n) tail.push_back(values[n + k] / values[n]);
    int ups = 0;
    int downs = 0;
    for (std::size_t i = 1; i < tail.size(); ++i) {
      const double d = tail[i] - tail[i - 1];
      if (d > kPropertyTol) ++ups;
      if (d < -kPropertyTol) ++downs;
    }
    const std::size_t t = tail.size();
    const double limit = rational_limit(tail[t - 5], tail[t - 3], tail[t - 1], 2.0);
    out.limit_estimates.push_back(limit);
    if (limit < 1.0 - kPropertyTol && !(ups > 0 && downs > 0)) {
      out.verdict = PropertyVerdict::Holds;
      out.best_k = k;
      return out;
    }
    if (ups > 0 && downs > 0) all_monotone = false;
  }
  out.verdict = all_monotone ? PropertyVerdict::Fails : PropertyVerdict::Inconclusive;
  return out;
}

bool is_normal(const RadialWeight& nu, int n_max) {
  return check_property_U(nu, n_max).holds() && check_property_L(nu, std::max(n_max, 40)).holds();
}

double monomial_moment(const RadialWeight& nu, int n) {
  if (n < 0) throw std::invalid_argument("monomial_moment: n must be nonnegative");
  if (n == 0) return checked_value(nu, 0.0);
  auto log_value = [&](double s) {
    if (s <= 0.0) return -std::numeric_limits<double>::infinity();
    const double v = nu(s);
    return v > 0.0 ? n * std::log(s) + std::log(v) : -std::numeric_limits<double>::infinity();
  };
  constexpr int kSub = 8;
  constexpr int kLevels = 48;
  int best_j = 1;
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= kLevels * kSub; ++j) {
    const double v = log_value(dyadic_radius(static_cast<double>(j) / kSub));
    if (v > best) {
      best = v;
      best_j = j;
    }
  }
  const double lo = dyadic_radius(static_cast<double>(best_j - 1) / kSub);
  const double hi = dyadic_radius(static_cast<double>(std::min(best_j + 1, kLevels * kSub)) / kSub);
  if (hi > lo) {
    auto g = golden_section_max(log_value, lo, hi, (hi - lo) * 1e-10);
    best = std::max(best, g.value);
  }
  return std::exp(best);
}

MonomialBounds::MonomialBounds(const RadialWeight& nu, int n_max) {
  if (n_max < 0) throw std::invalid_argument("MonomialBounds: n_max must be nonnegative");
  moments_.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) moments_[n] = monomial_moment(nu, n);
}

std::pair<double, int> MonomialBounds::upper(double r) const {
  if (r <= 0.0) return {moments_.front(), 0};
  double best = std::log(moments_.front());
  int arg = 0;
  const double lr = std::log(r);
  for (int n = 1; n <= n_max(); ++n) {
    const double v = std::log(moments_[n]) - n * lr;
    if (v < best) {
      best = v;
      arg = n;
    }
  }
  return {std::exp(best), arg};
}

double SandwichPoint::upper() const {
  return lp_upper ? std::min(monomial_upper, *lp_upper) : monomial_upper;
}

namespace {

// Constraints nu(s)|f(s e^{i theta})| <= 1 on real polynomials of the given
// degree, linearized per sample point through a set of phases as
// nu(s) Re(e^{-i phi} f(z)) <= 1. Column j holds the coefficients of that
// linear form in a_0..a_D with unit cost, so the simplex multipliers of the
// optimal basis are the coefficients of the extremal polynomial.
class ExtremalOracle final : public ColumnOracle {
public:
  explicit ExtremalOracle(int degree) : degree_(degree) {}

  void add_point(double s, double theta, double weight, const std::vector<double>& phases) {
    const std::size_t idx = points_.size();
    points_.push_back(std::polar(s, theta));
    weights_.push_back(weight);
    for (double phi : phases) {
      col_point_.push_back(idx);
      col_phase_.push_back(std::polar(1.0, -phi));
    }
  }

  std::size_t points() const { return points_.size(); }
  std::size_t rows() const override { return static_cast<std::size_t>(degree_) + 1; }
  std::size_t columns() const override { return col_point_.size(); }
  double cost(std::size_t) const override { return 1.0; }

  void column(std::size_t j, std::span<double> out) const override {
    const std::size_t i = col_point_[j];
    cplx w = weights_[i] * col_phase_[j];
    for (int n = 0; n <= degree_; ++n) {
      out[n] = w.real();
      w *= points_[i];
    }
  }

  void reduced_costs(std::span<const double> pi, bool with_cost,
                     std::span<double> out) const override {
    std::vector<cplx> values(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      cplx f{};
      for (int n = degree_; n >= 0; --n) f = f * points_[i] + pi[n];
      values[i] = weights_[i] * f;
    }
    const double c = with_cost ? 1.0 : 0.0;
    for (std::size_t j = 0; j < col_point_.size(); ++j) {
      out[j] = c - (col_phase_[j] * values[col_point_[j]]).real();
    }
  }

private:
  int degree_;
  std::vector<cplx> points_;
  std::vector<double> weights_;
  std::vector<std::size_t> col_point_;
  std::vector<cplx> col_phase_;
};

std::vector<double> shifted_phases(const std::vector<double>& base, double shift) {
  std::vector<double> out(base);
  for (auto& p : out) p += shift;
  return out;
}

struct Cut {
  double s;
  double theta;
};

struct FineScan {
  double norm = 0.0;
  Cut argmax{0.0, 0.0};
  std::vector<Cut> violators;
};

// Weighted sup of f on the fine grid. The strongest local maxima are moved
// to their local maximum by alternating golden-section searches; those above
// 1 become cuts.
FineScan scan_fine(const TruncatedSeries& f, const RadialWeight& nu, const GridSpec& fine,
                   std::size_t limit, double r_focus) {
  const int nr = fine.radial_points();
  const int na = fine.sampled_angles(true);
  std::vector<double> radii = fine.radii();
  std::vector<double> weight(nr);
  for (int j = 0; j < nr; ++j) weight[j] = nu(radii[j]);
  std::vector<double> g(static_cast<std::size_t>(nr) * na);
  auto at = [&](int j, int k) -> double& { return g[static_cast<std::size_t>(j) * na + k]; };
  for (int j = 0; j < nr; ++j) {
    for (int k = 0; k < na; ++k) {
      at(j, k) = weight[j] * std::abs(evaluate(f, std::polar(radii[j], fine.angle(k))));
    }
  }
  struct Hit {
    double value;
    int j;
    int k;
  };
  std::vector<Hit> hits;
  for (int j = 0; j < nr; ++j) {
    for (int k = 0; k < na; ++k) {
      const double v = at(j, k);
      bool is_max = std::isfinite(v);
      for (int dj = -1; dj <= 1 && is_max; ++dj) {
        for (int dk = -1; dk <= 1; ++dk) {
          const int jj = j + dj;
          const int kk = k + dk;
          if ((dj || dk) && jj >= 0 && jj < nr && kk >= 0 && kk < na && at(jj, kk) > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) hits.push_back({v, j, k});
    }
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const Hit& a, const Hit& b) { return a.value > b.value; });
  // Refine every near-active maximum: between grid angles |f| of degree D
  // can rise by a factor of order 1 + (D * dtheta)^2 / 2.
  std::size_t keep = 1;
  while (keep < hits.size() && keep < 4 * limit && hits[keep].value > 0.8) ++keep;
  if (hits.size() > keep) hits.resize(keep);
  // The optimizer pushes |f| up at the evaluation point itself, so the ray
  // near r_focus is always searched.
  const int j_focus = static_cast<int>(std::lower_bound(radii.begin(), radii.end(), r_focus) -
                                       radii.begin());
  for (int j : {j_focus - 1, j_focus}) {
    if (j >= 0 && j < nr) hits.push_back({at(j, 0), j, 0});
  }

  const double dtheta = fine.angle_step();
  auto value_at = [&](double s, double theta) {
    return nu(s) * std::abs(evaluate(f, std::polar(s, theta)));
  };
  FineScan scan;
  std::vector<double> values;
  if (!hits.empty()) {
    scan.norm = hits.front().value;
    scan.argmax = {radii[hits.front().j], fine.angle(hits.front().k)};
  }
  for (const auto& h : hits) {
    double s = radii[h.j];
    double theta = fine.angle(h.k);
    double best = h.value;
    const double s_lo = radii[std::max(h.j - 1, 0)];
    const double s_hi = radii[std::min(h.j + 1, nr - 1)];
    for (int round = 0; round < 3; ++round) {
      // The bracket may cross 0 or pi; |f| is symmetric there.
      auto gt = golden_section_max([&](double t) { return value_at(s, t); }, theta - dtheta,
                                   theta + dtheta, dtheta * 1e-6);
      if (gt.value > best) {
        best = gt.value;
        theta = gt.x;
      }
      if (s_hi > s_lo) {
        auto gr = golden_section_max([&](double x) { return value_at(x, theta); }, s_lo, s_hi,
                                     (s_hi - s_lo) * 1e-6);
        if (gr.value > best) {
          best = gr.value;
          s = gr.x;
        }
      }
    }
    if (best > scan.norm) {
      scan.norm = best;
      scan.argmax = {s, theta};
    }
    if (best > 1.0 + 1e-9) {
      scan.violators.push_back({s, std::abs(theta)});
      values.push_back(best);
    }
  }
  // Strongest violators first, at most `limit` of them.
  std::vector<std::size_t> order(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (order.size() > limit) order.resize(limit);
  std::vector<Cut> strongest;
  for (std::size_t i : order) strongest.push_back(scan.violators[i]);
  scan.violators = std::move(strongest);
  return scan;
}

void add_cut(ExtremalOracle& oracle, const RadialWeight& nu, const TruncatedSeries& f,
             const Cut& c, const std::vector<double>& phases) {
  const cplx value = evaluate(f, std::polar(c.s, c.theta));
  oracle.add_point(c.s, c.theta, checked_value(nu, c.s), shifted_phases(phases, std::arg(value)));
}

// One exchange run at a fixed degree. `cuts` carries points found at lower
// degrees in and the points found here out.
std::optional<double> extremal_bound(const RadialWeight& nu, double r, int degree,
                                     const LPSpec& lp, std::vector<Cut>& cuts,
                                     std::size_t* samples) {
  std::vector<double> phases(lp.phases);
  for (int p = 0; p < lp.phases; ++p) phases[p] = 2.0 * std::numbers::pi * p / lp.phases;
  ExtremalOracle oracle(degree);
  const int n_angles = lp.angles > 0 ? lp.angles : std::max(32, 2 * degree) + 1;
  for (int i = 0; i <= lp.levels * lp.substeps; ++i) {
    const double s = dyadic_radius(static_cast<double>(i) / lp.substeps);
    const double w = checked_value(nu, s);
    for (int t = 0; t < n_angles; ++t) {
      oracle.add_point(s, std::numbers::pi * t / std::max(n_angles - 1, 1), w, phases);
    }
  }
  for (const auto& c : cuts) oracle.add_point(c.s, c.theta, checked_value(nu, c.s), phases);

  // A small deterministic relative perturbation of the right-hand side breaks
  // the primal degeneracy that otherwise stalls the simplex; the bound below
  // only uses the returned polynomial, so it stays valid.
  std::vector<double> rhs(degree + 1);
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> jitter(-1e-6, 1e-6);
  for (int n = 0; n <= degree; ++n) rhs[n] = std::pow(r, n) * (1.0 + jitter(rng));

  GridSpec fine;
  fine.levels = std::max(16, lp.levels + 6);
  fine.substeps = 8;
  fine.angles = std::max(1024, 16 * degree);

  SimplexOptions opt;
  opt.max_iterations = lp.max_iterations;
  std::optional<double> best;
  std::vector<std::size_t> basis;
  for (int round = 0; round <= lp.exchange_rounds; ++round) {
    const SimplexResult res = solve_column_lp(oracle, rhs, opt, basis);
    if (res.status != SimplexStatus::Optimal) break;
    basis = res.basis;
    const auto f = TruncatedSeries::from_real(res.duals);
    const double fr = evaluate(f, r).real();
    if (!(fr > 0.0) || !std::isfinite(fr)) break;
    FineScan scan = scan_fine(f, nu, fine, 2 * static_cast<std::size_t>(degree + 1), r);
    if (!(scan.norm > 0.0) || !std::isfinite(scan.norm)) break;
    // The fine norm is itself sampled; the weight is a hard floor for the
    // associated weight, so never report less.
    const double bound = std::max(scan.norm / fr, nu(r));
    best = best ? std::min(*best, bound) : bound;
    if (scan.norm <= 1.0 + 1e-7 || scan.violators.empty() || round == lp.exchange_rounds) break;
    for (const auto& c : scan.violators) {
      add_cut(oracle, nu, f, c, phases);
      cuts.push_back(c);
    }
  }
  if (samples) *samples = oracle.points();
  return best;
}

}  // namespace

std::optional<double> lp_associated_upper(const RadialWeight& nu, double r, const LPSpec& lp,
                                          std::size_t* samples,
                                          std::vector<std::pair<int, double>>* ladder_bounds) {
  if (lp.degree < 1 || lp.levels < 1 || lp.substeps < 1 || lp.phases < 3 ||
      lp.exchange_rounds < 0) {
    throw std::invalid_argument(
        "LPSpec: degree, levels, substeps must be >= 1, phases >= 3, exchange_rounds >= 0");
  }
  if (!(r > 0.0) || !(r < 1.0)) return std::nullopt;

  // Coefficients with r^n below 1e-10 cannot move f(r) measurably but make
  // the basis matrices badly conditioned, so the degree is capped there.
  const int degree = static_cast<int>(
      std::clamp(std::floor(std::log(1e-10) / std::log(r)), 1.0, static_cast<double>(lp.degree)));

  // Degree ladder ending at `degree`: a polynomial of degree d is admissible
  // at degree 2d, so the running minimum is a valid bound, and the cuts found
  // at low degree seed the next solve.
  std::vector<int> ladder;
  for (int d = lp.degree; d >= 1; d /= 2) {
    ladder.push_back(std::min(d, degree));
    if (d / 2 < lp.ladder_start) break;
  }
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());

  std::vector<Cut> cuts;
  std::optional<double> best;
  if (ladder_bounds) ladder_bounds->clear();
  for (int d : ladder) {
    auto b = extremal_bound(nu, r, d, lp, cuts, samples);
    if (b) best = best ? std::min(*best, *b) : *b;
    if (ladder_bounds && best) ladder_bounds->emplace_back(d, *best);
  }
  return best;
}

AssociatedSandwich associated_weight_bounds(const RadialWeight& nu, const std::vector<double>& radii,
                                            int n_max, const LPSpec& lp) {
  if (n_max < 1) throw std::invalid_argument("associated_weight_bounds: n_max must be >= 1");
  AssociatedSandwich out;
  out.n_max = n_max;
  out.lp_degree = lp.enabled ? lp.degree : 0;
  const MonomialBounds bounds(nu, n_max);
  for (double r : radii) {
    if (!(r >= 0.0 && r < 1.0)) {
      throw std::invalid_argument("associated_weight_bounds: radius " + format_number(r) +
                                  " outside [0, 1)");
    }
    SandwichPoint p;
    p.r = r;
    p.lower = checked_value(nu, r);
    auto [u, n] = bounds.upper(r);
    p.monomial_upper = std::max(u, p.lower);
    p.monomial_n = n;
    if (lp.enabled && r > 0.0) {
      std::size_t samples = 0;
      p.lp_upper = lp_associated_upper(nu, r, lp, &samples, &p.lp_ladder);
      out.lp_samples = samples;
    }
    out.points.push_back(p);
  }
  return out;
}

double essential_constant_estimate(const RadialWeight& nu, const std::vector<double>& radii,
                                   int n_max, const LPSpec& lp) {
  if (radii.empty()) throw std::invalid_argument("essential_constant_estimate: no radii");
  const auto sandwich = associated_weight_bounds(nu, radii, n_max, lp);
  double worst = 1.0;
  for (const auto& p : sandwich.points) worst = std::max(worst, p.upper() / p.lower);
  return worst;
}

}  // namespace volterra
