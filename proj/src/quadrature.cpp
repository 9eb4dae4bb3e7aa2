#include "volterra/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "volterra/util.hpp"

namespace volterra {

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 256) throw std::invalid_argument("gauss_legendre: order must be in [1, 256]");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  // Legendre recurrence: beta_k = k / sqrt(4k^2 - 1), zero diagonal.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = eig.eigenvalues()(i);
    const double v = eig.eigenvectors()(0, i);
    rule.weights[i] = 2.0 * v * v;
  }
  // Symmetrize to remove the eigen-solver's last-bit asymmetry.
  for (int i = 0; i < order / 2; ++i) {
    const int j = order - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return cache.emplace(order, std::move(rule)).first->second;
}

void QuadSpec::validate() const {
  if (order < 2) throw std::invalid_argument("QuadSpec: order must be at least 2");
  if (!(tol > 0.0)) throw std::invalid_argument("QuadSpec: tol must be positive");
  if (max_panels < 1) throw std::invalid_argument("QuadSpec: max_panels must be positive");
  if (substeps < 1) throw std::invalid_argument("QuadSpec: substeps must be positive");
}

std::vector<double> radial_breakpoints(double a, double b, int substeps) {
  std::vector<double> pts{a};
  // first j with 1 - 2^{-j/s} > a
  int j = a <= 0.0 ? 1 : static_cast<int>(std::floor(-std::log2(1.0 - a) * substeps)) + 1;
  for (;; ++j) {
    const double r = 1.0 - std::exp2(-static_cast<double>(j) / substeps);
    if (r >= b) break;
    if (r > pts.back()) pts.push_back(r);
  }
  pts.push_back(b);
  return pts;
}

namespace {

double panel(const RealFunction& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = mid + half * rule.nodes[i];
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw std::domain_error("integrand is not finite at r = " + format_number(x));
    }
    sum += rule.weights[i] * y;
  }
  return half * sum;
}

struct Adaptive {
  const RealFunction& f;
  const QuadSpec& spec;
  const GaussRule& rule;
  int panels = 0;
  bool converged = true;

  double run(double a, double b) {
    struct Item {
      double a, b, whole;
      int depth;
    };
    double total = 0.0;
    std::vector<Item> stack{{a, b, panel(f, a, b, rule), 0}};
    ++panels;
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      const double m = 0.5 * (it.a + it.b);
      const double left = panel(f, it.a, m, rule);
      const double right = panel(f, m, it.b, rule);
      const double halves = left + right;
      const double change = std::abs(halves - it.whole);
      if (change <= spec.tol * std::abs(halves) || change <= 1e-300 || m <= it.a || m >= it.b) {
        total += halves;
        continue;
      }
      if (panels + 1 > spec.max_panels) {
        converged = false;
        total += halves;
        continue;
      }
      ++panels;
      stack.push_back({m, it.b, right, it.depth + 1});
      stack.push_back({it.a, m, left, it.depth + 1});
    }
    return total;
  }
};

}  // namespace

QuadResult integrate_radial(const RealFunction& f, double a, double b, const QuadSpec& spec) {
  spec.validate();
  if (!(a >= 0.0 && a < b && b < 1.0)) {
    throw std::invalid_argument("integrate_radial: need 0 <= a < b < 1");
  }
  Adaptive ad{f, spec, gauss_legendre(spec.order)};
  const auto pts = radial_breakpoints(a, b, spec.substeps);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += ad.run(pts[i], pts[i + 1]);
  return {total, ad.panels, ad.converged};
}

std::vector<double> cumulative_integral(const RealFunction& f, std::span<const double> knots,
                                        const QuadSpec& spec, bool* converged) {
  spec.validate();
  std::vector<double> out(knots.size(), 0.0);
  if (knots.empty()) return out;
  Adaptive ad{f, spec, gauss_legendre(spec.order)};
  double running = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) throw std::invalid_argument("cumulative_integral: knots must increase");
    const auto pts = radial_breakpoints(knots[i - 1], knots[i], spec.substeps);
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) running += ad.run(pts[p], pts[p + 1]);
    out[i] = running;
  }
  if (converged) *converged = ad.converged;
  return out;
}

}  // namespace volterra
