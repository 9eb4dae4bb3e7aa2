#pragma once

#include <functional>
#include <span>
#include <vector>

namespace volterra {

/// Fixed-order Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes are the eigenvalues of the Jacobi matrix (Golub-Welsch); weights
/// come from the first eigenvector components. Rules are cached per order.
const GaussRule& gauss_legendre(int order);

struct QuadSpec {
  int order = 16;
  /// Panels are bisected until the two-half sum changes by less than
  /// tol relative to the panel value.
  double tol = 1e-6;
  int max_panels = 1 << 16;
  /// Initial breakpoints 1 - 2^{-j/substeps} between the limits.
  int substeps = 4;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  int panels = 0;
  bool converged = true;
};

using RealFunction = std::function<double(double)>;

/// Adaptive integral of f over [a, b] with 0 <= a < b < 1. The initial
/// panels follow the dyadic radii toward 1, so integrands that blow up at
/// r = 1 stay resolved. A non-finite integrand value throws
/// std::domain_error naming the radius.
QuadResult integrate_radial(const RealFunction& f, double a, double b, const QuadSpec& spec = {});

/// Integrals of f from knots[0] to each knot; knots must be increasing.
/// Each gap is integrated adaptively, so result[i] is accurate to the same
/// relative tolerance as a single call.
std::vector<double> cumulative_integral(const RealFunction& f, std::span<const double> knots,
                                        const QuadSpec& spec = {}, bool* converged = nullptr);

/// The dyadic breakpoints used by integrate_radial on [a, b], endpoints
/// included.
std::vector<double> radial_breakpoints(double a, double b, int substeps);

}  // namespace volterra
