#include "volterra/operators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "volterra/norms.hpp"
#include "volterra/parallel.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/util.hpp"

namespace volterra {

std::string to_string(OpKind k) { return k == OpKind::Tg ? "Tg" : "Sg"; }
std::string to_string(SpaceKind k) { return k == SpaceKind::Hinf ? "Hinf" : "Bloch"; }
std::string to_string(LogKind k) { return k == LogKind::LogGPrime ? "log_gprime" : "log_g"; }

OpKind parse_op_kind(const std::string& s) {
  if (s == "Tg" || s == "tg") return OpKind::Tg;
  if (s == "Sg" || s == "sg") return OpKind::Sg;
  throw std::invalid_argument("unknown operator '" + s + "' (expected tg or sg)");
}

SpaceKind parse_space_kind(const std::string& s) {
  if (s == "Hinf" || s == "hinf" || s == "H") return SpaceKind::Hinf;
  if (s == "Bloch" || s == "bloch" || s == "B") return SpaceKind::Bloch;
  throw std::invalid_argument("unknown space '" + s + "' (expected hinf or bloch)");
}

TruncatedSeries apply_Tg(const TruncatedSeries& f, const SymbolSpec& g, std::size_t out_degree) {
  if (out_degree < 1) throw std::invalid_argument("apply_Tg: out_degree must be at least 1");
  return volterra_antiderivative(cauchy_product(f, differentiate(g.coeffs()), out_degree - 1));
}

TruncatedSeries apply_Sg(const TruncatedSeries& f, const SymbolSpec& g, std::size_t out_degree) {
  if (out_degree < 1) throw std::invalid_argument("apply_Sg: out_degree must be at least 1");
  return volterra_antiderivative(cauchy_product(differentiate(f), g.coeffs(), out_degree - 1));
}

namespace {

constexpr int kRaySubstepsPerLevel = 4;

// Gauss-Legendre nodes on [a, b], two subpanels.
void append_nodes(double a, double b, std::vector<double>& s, std::vector<double>& w) {
  const GaussRule& rule = gauss_legendre(16);
  const double h = 0.5 * (b - a);
  for (int half = 0; half < 2; ++half) {
    const double lo = a + half * h;
    const double mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      s.push_back(mid + 0.5 * h * rule.nodes[i]);
      w.push_back(0.5 * h * rule.weights[i]);
    }
  }
}

// (op z^m)' at w, i.e. the integrand of op z^m.
cplx integrand_of(OpKind op, const TruncatedSeries& f, const TruncatedSeries& df,
                  const SymbolSpec& g, cplx w) {
  return op == OpKind::Tg ? evaluate(f, w) * g.derivative(w) : evaluate(df, w) * g.value(w);
}

}  // namespace

cplx apply_at(OpKind op, const TruncatedSeries& f, const SymbolSpec& g, cplx z) {
  const double r = std::abs(z);
  if (r == 0.0) return 0.0;
  const cplx e = z / r;
  const TruncatedSeries df = differentiate(f);
  const auto pts = radial_breakpoints(0.0, r, kRaySubstepsPerLevel);
  std::vector<double> s, w;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) append_nodes(pts[i], pts[i + 1], s, w);
  cplx sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += w[i] * integrand_of(op, f, df, g, s[i] * e);
  return sum * e;
}

CriterionResult log_bloch_seminorm(LogKind kind, const SymbolSpec& g, const GridSpec& grid,
                                   int jobs) {
  auto f = [&](double r, double theta) {
    const cplx z = std::polar(r, theta);
    const cplx num = kind == LogKind::LogGPrime ? g.second_derivative(z) : g.derivative(z);
    const cplx den = kind == LogKind::LogGPrime ? g.derivative(z) : g.value(z);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return (1.0 - r) * (1.0 + r) * std::abs(num / den);
  };
  const SupEstimate est = sup_over_disk(f, grid, g.real_coefficients(), jobs);
  CriterionResult res;
  res.kind = to_string(kind);
  res.mode = Mode::Sup;
  res.value = est.value;
  res.r = est.r;
  res.theta = est.theta;
  res.history = est.level_history;
  if (!std::isfinite(est.value)) {
    res.verdict = Verdict::Divergent;
    res.note = "denominator vanishes at r = " + format_number(est.r) +
               ", theta = " + format_number(est.theta);
  } else {
    res.verdict = classify_sup(res.history);
  }
  return res;
}

namespace {

// Weighted values of the domain quantity and of op(z^m) at every grid point,
// so that norms of linear combinations are matrix-vector products.
class BasisImages {
public:
  BasisImages(OpKind op, const SymbolSpec& g, const RadialWeight& nu, const RadialWeight& mu,
              SpaceKind domain, SpaceKind codomain, int degree, const GridSpec& grid, int jobs)
      : domain_(domain), nr_(grid.radial_points()) {
    const int cols = degree + 1;
    const int na = grid.angles;
    const auto radii = grid.radii();
    dom_.resize(static_cast<Eigen::Index>(nr_) * na, cols);
    cod_.resize(static_cast<Eigen::Index>(nr_) * na, cols);
    parallel_for(static_cast<std::size_t>(na), jobs, [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      const cplx e = std::polar(1.0, grid.angle(k));
      // acc[m] = int_0^r (op z^m)'(s e) e ds along the ray
      std::vector<cplx> acc(cols, 0.0);
      std::vector<double> s, w;
      for (int j = 0; j < nr_; ++j) {
        const double r = radii[j];
        if (j > 0 && codomain == SpaceKind::Hinf) {
          s.clear();
          w.clear();
          const auto pts = radial_breakpoints(radii[j - 1], r, kRaySubstepsPerLevel);
          for (std::size_t i = 0; i + 1 < pts.size(); ++i) append_nodes(pts[i], pts[i + 1], s, w);
          for (std::size_t i = 0; i < s.size(); ++i) {
            const cplx x = s[i] * e;
            const cplx factor = w[i] * e * (op == OpKind::Tg ? g.derivative(x) : g.value(x));
            cplx p = 1.0;  // x^m
            for (int m = 0; m < cols; ++m) {
              if (op == OpKind::Tg) {
                acc[m] += factor * p;
              } else if (m + 1 < cols) {
                acc[m + 1] += factor * static_cast<double>(m + 1) * p;
              }
              p *= x;
            }
          }
        }
        const cplx z = r * e;
        const Eigen::Index row = static_cast<Eigen::Index>(k) * nr_ + j;
        const double nu_r = nu(r);
        const double mu_r = mu(r);
        const cplx gz = codomain == SpaceKind::Bloch
                            ? (op == OpKind::Tg ? g.derivative(z) : g.value(z))
                            : cplx(0.0);
        cplx p = 1.0;       // z^m
        cplx p_prev = 0.0;  // z^{m-1}
        for (int m = 0; m < cols; ++m) {
          const cplx dz = static_cast<double>(m) * p_prev;
          dom_(row, m) = nu_r * (domain == SpaceKind::Hinf ? p : dz);
          if (codomain == SpaceKind::Hinf) {
            cod_(row, m) = mu_r * acc[m];
          } else {
            cod_(row, m) = mu_r * (op == OpKind::Tg ? p : dz) * gz;
          }
          p_prev = p;
          p *= z;
        }
      }
    });
  }

  double domain_norm(const Eigen::VectorXcd& c) const {
    const double sup = (dom_ * c).cwiseAbs().maxCoeff();
    return domain_ == SpaceKind::Bloch ? std::abs(c(0)) + sup : sup;
  }
  double codomain_norm(const Eigen::VectorXcd& c) const { return (cod_ * c).cwiseAbs().maxCoeff(); }
  double ratio(const Eigen::VectorXcd& c) const {
    const double d = domain_norm(c);
    return d > 0.0 ? codomain_norm(c) / d : 0.0;
  }
  /// Weighted |codomain quantity| at grid point (j, k).
  double codomain_at(const Eigen::VectorXcd& c, int j, int k) const {
    return std::abs((cod_.row(static_cast<Eigen::Index>(k) * nr_ + j) * c).value());
  }

private:
  SpaceKind domain_;
  int nr_;
  Eigen::MatrixXcd dom_;
  Eigen::MatrixXcd cod_;
};

struct Candidate {
  double value;
  int index;
  Eigen::VectorXcd c;
  std::string label;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

Candidate ascend(const BasisImages& basis, Candidate start, int sweeps) {
  Candidate cur = std::move(start);
  double step = 0.5 * cur.c.cwiseAbs().maxCoeff();
  const cplx dirs[2] = {1.0, cplx(0.0, 1.0)};
  for (int pass = 0; pass < sweeps && step > 0.0; ++pass) {
    for (Eigen::Index m = 0; m < cur.c.size(); ++m) {
      for (const cplx d : dirs) {
        for (const double sgn : {1.0, -1.0}) {
          Eigen::VectorXcd trial = cur.c;
          trial(m) += sgn * step * d;
          const double v = basis.ratio(trial);
          if (v > cur.value) {
            cur.value = v;
            cur.c = std::move(trial);
            break;
          }
        }
      }
    }
    step *= 0.5;
  }
  return cur;
}

}  // namespace

NormEstimate opnorm_lower(OpKind op, const SymbolSpec& g, const RadialWeight& nu,
                          const RadialWeight& mu, SpaceKind domain, SpaceKind codomain,
                          const SearchSpec& search, int jobs) {
  if (search.degree < 0 || search.random_polys < 0 || search.restarts < 0 || search.sweeps < 0) {
    throw std::invalid_argument("opnorm_lower: search budget must be nonnegative");
  }
  const GridSpec& grid = search.grid;
  grid.validate();
  NormEstimate out;
  if (g.is_zero(0.0)) {
    out.witness = "zero operator";
    return out;
  }
  const int d = search.degree;
  const BasisImages basis(op, g, nu, mu, domain, codomain, d, grid, jobs);

  std::vector<Candidate> pool;
  int index = 0;
  for (int n = 0; n <= d; ++n) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d + 1);
    c(n) = 1.0;
    pool.push_back({basis.ratio(c), index++, std::move(c), "monomial z^" + std::to_string(n)});
  }
  std::mt19937_64 rng(search.seed);
  std::normal_distribution<double> normal;
  for (int i = 0; i < search.random_polys; ++i) {
    Eigen::VectorXcd c(d + 1);
    for (int n = 0; n <= d; ++n) c(n) = cplx(normal(rng), normal(rng));
    const double dn = basis.domain_norm(c);
    if (dn > 0.0) c /= dn;
    pool.push_back({basis.ratio(c), index++, std::move(c), "random polynomial #" + std::to_string(i)});
  }
  std::stable_sort(pool.begin(), pool.end(), better);

  const std::size_t starts = std::min<std::size_t>(pool.size(), search.restarts);
  std::vector<Candidate> refined(starts);
  parallel_for(starts, jobs, [&](std::size_t i) {
    refined[i] = ascend(basis, pool[i], search.sweeps);
    refined[i].index = static_cast<int>(i);
  });
  Candidate best = pool.front();
  for (const auto& c : refined) {
    if (c.value > best.value) {
      best = c;
      best.label = c.label + " + coordinate ascent";
    }
  }

  // Refine both norms of the winner around their sampled maxima.
  std::vector<cplx> coeffs(best.c.data(), best.c.data() + best.c.size());
  const TruncatedSeries f(coeffs);
  const SupEstimate dom = domain == SpaceKind::Hinf ? weighted_sup_norm(f, nu, grid, jobs)
                                                    : weighted_bloch_norm(f, nu, grid, jobs);
  const auto radii = grid.radii();
  const TruncatedSeries df = differentiate(f);
  auto cod_fn = [&](double r, double theta) -> double {
    const double step = grid.angle_step();
    const long k = std::lround(theta / step);
    if (k >= 0 && k < grid.angles && grid.angle(static_cast<int>(k)) == theta) {
      const long j = r <= 0.0 ? 0 : std::lround(-std::log2(1.0 - r) * grid.substeps);
      if (j >= 0 && j < grid.radial_points() && radii[j] == r) {
        return basis.codomain_at(best.c, static_cast<int>(j), static_cast<int>(k));
      }
    }
    const cplx z = std::polar(r, theta);
    if (codomain == SpaceKind::Hinf) return mu(r) * std::abs(apply_at(op, f, g, z));
    return mu(r) * std::abs(op == OpKind::Tg ? evaluate(f, z) * g.derivative(z)
                                             : evaluate(df, z) * g.value(z));
  };
  const SupEstimate cod = sup_over_disk(cod_fn, grid, false, 1);
  out.lower = dom.value > 0.0 ? cod.value / dom.value : 0.0;
  out.witness = best.label;
  out.witness_coeffs = std::move(coeffs);
  return out;
}

}  // namespace volterra
