#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace volterra {

/// Column source for a standard-form LP
///
///   minimize  cost^T y   subject to  A y = rhs,  y >= 0
///
/// with few rows and many (implicitly generated) columns. The dual of this
/// problem is  maximize rhs^T x  subject to  A^T x <= cost, x free, and the
/// simplex multipliers at the optimum solve it.
class ColumnOracle {
public:
  virtual ~ColumnOracle() = default;
  virtual std::size_t rows() const = 0;
  virtual std::size_t columns() const = 0;
  virtual void column(std::size_t j, std::span<double> out) const = 0;
  virtual double cost(std::size_t j) const = 0;
  /// out[j] = (with_cost ? cost(j) : 0) - a_j . pi for every column. The
  /// default loops over column(); oracles with structure should override.
  virtual void reduced_costs(std::span<const double> pi, bool with_cost,
                             std::span<double> out) const;
};

struct SimplexOptions {
  int max_iterations = 20000;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-8;
  /// Switch from Dantzig pricing to Bland's rule after this many
  /// consecutive degenerate pivots.
  int degenerate_streak = 50;
  /// Partial pricing: after each full pass the most negative columns (at
  /// most this many) are cached and priced first. 0 disables it.
  int candidate_list = 256;
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationLimit, Singular };
std::string to_string(SimplexStatus s);

struct SimplexResult {
  SimplexStatus status = SimplexStatus::Singular;
  double objective = 0.0;
  /// Simplex multipliers; at optimality, a maximizer of the dual problem.
  std::vector<double> duals;
  std::vector<std::size_t> basis;
  std::vector<double> basic_values;
  int iterations = 0;
};

/// Two-phase revised simplex with a dense refactorized basis. A warm basis
/// (one real column per row) skips phase one when it is still feasible.
SimplexResult solve_column_lp(const ColumnOracle& oracle, std::span<const double> rhs,
                              const SimplexOptions& options = {},
                              std::span<const std::size_t> warm_basis = {});

/// Explicit-matrix oracle, mostly for tests and small problems. The matrix
/// is stored column-major: column j occupies data[j*rows .. (j+1)*rows).
class DenseColumnOracle final : public ColumnOracle {
public:
  DenseColumnOracle(std::size_t rows, std::vector<double> column_major, std::vector<double> costs);
  std::size_t rows() const override { return rows_; }
  std::size_t columns() const override { return costs_.size(); }
  void column(std::size_t j, std::span<double> out) const override;
  double cost(std::size_t j) const override { return costs_[j]; }

private:
  std::size_t rows_;
  std::vector<double> data_;
  std::vector<double> costs_;
};

}  // namespace volterra
