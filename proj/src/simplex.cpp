#include "volterra/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace volterra {

std::string to_string(SimplexStatus s) {
  switch (s) {
    case SimplexStatus::Optimal: return "optimal";
    case SimplexStatus::Infeasible: return "infeasible";
    case SimplexStatus::Unbounded: return "unbounded";
    case SimplexStatus::IterationLimit: return "iteration-limit";
    case SimplexStatus::Singular: return "singular";
  }
  return "unknown";
}

void ColumnOracle::reduced_costs(std::span<const double> pi, bool with_cost,
                                 std::span<double> out) const {
  std::vector<double> a(rows());
  for (std::size_t j = 0; j < columns(); ++j) {
    column(j, a);
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * pi[i];
    out[j] = (with_cost ? cost(j) : 0.0) - dot;
  }
}

DenseColumnOracle::DenseColumnOracle(std::size_t rows, std::vector<double> column_major,
                                     std::vector<double> costs)
    : rows_(rows), data_(std::move(column_major)), costs_(std::move(costs)) {
  if (data_.size() != rows_ * costs_.size()) {
    throw std::invalid_argument("DenseColumnOracle: matrix size does not match rows * columns");
  }
}

void DenseColumnOracle::column(std::size_t j, std::span<double> out) const {
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(j * rows_), rows_, out.begin());
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

class RevisedSimplex {
public:
  RevisedSimplex(const ColumnOracle& oracle, std::span<const double> rhs, const SimplexOptions& opt)
      : oracle_(oracle),
        opt_(opt),
        n_(oracle.rows()),
        m_(oracle.columns()),
        rhs_(Eigen::Map<const VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()))),
        sign_(n_),
        basis_(n_),
        reduced_(m_),
        in_basis_(m_, 0) {
    if (rhs.size() != n_) throw std::invalid_argument("solve_column_lp: rhs size != rows");
    for (std::size_t i = 0; i < n_; ++i) {
      sign_[i] = rhs[i] >= 0.0 ? 1.0 : -1.0;
      basis_[i] = m_ + i;
    }
  }

  SimplexResult run(std::span<const std::size_t> warm_basis) {
    if (try_warm_start(warm_basis)) return finish(iterate(true));
    for (std::size_t i = 0; i < n_; ++i) set_basic(i, m_ + i);
    if (auto st = iterate(false); st != SimplexStatus::Optimal) return finish(st);
    const double scale = std::max(1.0, rhs_.cwiseAbs().maxCoeff());
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (is_artificial(basis_[i])) infeasibility += std::max(0.0, x_(static_cast<Eigen::Index>(i)));
    }
    if (infeasibility > opt_.feasibility_tol * scale) return finish(SimplexStatus::Infeasible);
    if (!drive_out_artificials()) return finish(SimplexStatus::Singular);
    return finish(iterate(true));
  }

private:
  // Accepts a previous basis of real columns when it is still primal
  // feasible, which holds after columns are appended to the problem.
  bool try_warm_start(std::span<const std::size_t> warm) {
    if (warm.size() != n_) return false;
    for (std::size_t idx : warm) {
      if (idx >= m_) return false;
    }
    for (std::size_t i = 0; i < n_; ++i) set_basic(i, warm[i]);
    if (!factorize()) return false;
    const double scale = std::max(1.0, rhs_.cwiseAbs().maxCoeff());
    return x_.minCoeff() >= -opt_.feasibility_tol * scale;
  }

  bool is_artificial(std::size_t idx) const { return idx >= m_; }
  bool basic(std::size_t j) const { return in_basis_[j] != 0; }

  void set_basic(std::size_t i, std::size_t idx) {
    if (!is_artificial(basis_[i])) in_basis_[basis_[i]] = 0;
    basis_[i] = idx;
    if (!is_artificial(idx)) in_basis_[idx] = 1;
  }

  void column(std::size_t idx, VectorXd& out) const {
    out.setZero(static_cast<Eigen::Index>(n_));
    if (is_artificial(idx)) {
      out(static_cast<Eigen::Index>(idx - m_)) = sign_[idx - m_];
    } else {
      oracle_.column(idx, std::span<double>(out.data(), n_));
    }
  }

  bool factorize() {
    MatrixXd b(n_, n_);
    VectorXd col;
    for (std::size_t i = 0; i < n_; ++i) {
      column(basis_[i], col);
      b.col(static_cast<Eigen::Index>(i)) = col;
    }
    lu_.compute(b);
    lu_t_.compute(b.transpose());
    // Refactorizing every iteration keeps round-off from accumulating, so
    // only numerically singular bases are rejected; callers validate the
    // returned multipliers independently.
    if (!(lu_.rcond() > 1e-300)) return false;
    x_ = lu_.solve(rhs_);
    return x_.allFinite();
  }

  VectorXd multipliers(bool phase_two) const {
    VectorXd cb(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t idx = basis_[i];
      if (phase_two) {
        cb(static_cast<Eigen::Index>(i)) = is_artificial(idx) ? 0.0 : oracle_.cost(idx);
      } else {
        cb(static_cast<Eigen::Index>(i)) = is_artificial(idx) ? 1.0 : 0.0;
      }
    }
    return lu_t_.solve(cb);
  }

  // Reduced costs of the cached candidate columns; returns the most negative
  // one or m_ when none prices out.
  std::size_t price_candidates(bool phase_two) const {
    std::size_t entering = m_;
    double best = -opt_.optimality_tol;
    for (std::size_t c = 0; c < candidates_.size(); ++c) {
      if (basic(candidates_[c])) continue;
      const double d = (phase_two ? candidate_costs_[c] : 0.0) -
                       candidate_columns_.col(static_cast<Eigen::Index>(c)).dot(pi_);
      if (d < best) {
        best = d;
        entering = candidates_[c];
      }
    }
    return entering;
  }

  void rebuild_candidates() {
    candidates_.clear();
    for (std::size_t j = 0; j < m_; ++j) {
      if (reduced_[j] < -opt_.optimality_tol && !basic(j)) candidates_.push_back(j);
    }
    const std::size_t keep = static_cast<std::size_t>(std::max(opt_.candidate_list, 0));
    if (candidates_.size() > keep) {
      std::partial_sort(candidates_.begin(), candidates_.begin() + static_cast<std::ptrdiff_t>(keep),
                        candidates_.end(), [&](std::size_t a, std::size_t b) {
                          return reduced_[a] < reduced_[b] || (reduced_[a] == reduced_[b] && a < b);
                        });
      candidates_.resize(keep);
    }
    candidate_columns_.resize(static_cast<Eigen::Index>(n_),
                              static_cast<Eigen::Index>(candidates_.size()));
    candidate_costs_.resize(candidates_.size());
    VectorXd a;
    for (std::size_t c = 0; c < candidates_.size(); ++c) {
      column(candidates_[c], a);
      candidate_columns_.col(static_cast<Eigen::Index>(c)) = a;
      candidate_costs_[c] = oracle_.cost(candidates_[c]);
    }
  }

  SimplexStatus iterate(bool phase_two) {
    int degenerate = 0;
    VectorXd a;
    candidates_.clear();
    while (true) {
      if (!factorize()) return SimplexStatus::Singular;
      pi_ = multipliers(phase_two);
      const bool bland = degenerate >= opt_.degenerate_streak;

      // Partial pricing over a cached candidate list; a full pass over all
      // columns only when the list is exhausted or Bland's rule is active.
      std::size_t entering = bland ? m_ : price_candidates(phase_two);
      if (entering == m_) {
        oracle_.reduced_costs(std::span<const double>(pi_.data(), n_), phase_two, reduced_);
        double best = -opt_.optimality_tol;
        for (std::size_t j = 0; j < m_; ++j) {
          // Basic columns price out at round-off level only.
          if (reduced_[j] < best && !basic(j)) {
            entering = j;
            if (bland) break;
            best = reduced_[j];
          }
        }
        if (entering == m_) return SimplexStatus::Optimal;
        if (!bland && opt_.candidate_list > 0) rebuild_candidates();
      }
      if (iterations_ >= opt_.max_iterations) return SimplexStatus::IterationLimit;

      column(entering, a);
      const VectorXd u = lu_.solve(a);
      std::size_t leave = n_;
      double ratio = std::numeric_limits<double>::infinity();
      double pivot = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double ui = u(static_cast<Eigen::Index>(i));
        double r;
        if (phase_two && is_artificial(basis_[i])) {
          if (std::abs(ui) <= opt_.pivot_tol) continue;
          r = 0.0;
        } else {
          if (ui <= opt_.pivot_tol) continue;
          r = std::max(0.0, x_(static_cast<Eigen::Index>(i))) / ui;
        }
        bool better = leave == n_;
        if (!better) {
          const double slack = 1e-12 * std::max(1.0, ratio);
          better = r < ratio - slack ||
                   (r <= ratio + slack &&
                    (bland ? basis_[i] < basis_[leave] : std::abs(ui) > pivot));
        }
        if (better) {
          leave = i;
          ratio = r;
          pivot = std::abs(ui);
        }
      }
      if (leave == n_) return SimplexStatus::Unbounded;
      degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;
      set_basic(leave, entering);
      ++iterations_;
    }
  }

  // Replaces basic artificials (all at level zero after phase one) by real
  // columns with a nonzero entry in the artificial's row of B^{-1} A.
  bool drive_out_artificials() {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      if (!factorize()) return false;
      VectorXd e = VectorXd::Zero(static_cast<Eigen::Index>(n_));
      e(static_cast<Eigen::Index>(i)) = 1.0;
      const VectorXd row = lu_t_.solve(e);
      oracle_.reduced_costs(std::span<const double>(row.data(), n_), false, reduced_);
      std::size_t best = m_;
      double magnitude = opt_.pivot_tol * 1e3;
      for (std::size_t j = 0; j < m_; ++j) {
        if (std::abs(reduced_[j]) > magnitude && !basic(j)) {
          magnitude = std::abs(reduced_[j]);
          best = j;
        }
      }
      // A row with no usable column is redundant; its artificial stays at zero.
      if (best != m_) set_basic(i, best);
    }
    return factorize();
  }

  SimplexResult finish(SimplexStatus status) {
    SimplexResult r;
    r.status = status;
    r.iterations = iterations_;
    r.basis = basis_;
    if (status == SimplexStatus::Optimal) {
      r.duals.assign(pi_.data(), pi_.data() + n_);
      r.basic_values.assign(x_.data(), x_.data() + n_);
      r.objective = rhs_.dot(pi_);
    }
    return r;
  }

  const ColumnOracle& oracle_;
  SimplexOptions opt_;
  std::size_t n_;
  std::size_t m_;
  VectorXd rhs_;
  std::vector<double> sign_;
  std::vector<std::size_t> basis_;
  std::vector<double> reduced_;
  std::vector<char> in_basis_;
  Eigen::PartialPivLU<MatrixXd> lu_;
  Eigen::PartialPivLU<MatrixXd> lu_t_;
  VectorXd x_;
  VectorXd pi_;
  int iterations_ = 0;
  std::vector<std::size_t> candidates_;
  MatrixXd candidate_columns_;
  std::vector<double> candidate_costs_;
};

}  // namespace

SimplexResult solve_column_lp(const ColumnOracle& oracle, std::span<const double> rhs,
                              const SimplexOptions& options,
                              std::span<const std::size_t> warm_basis) {
  RevisedSimplex solver(oracle, rhs, options);
  return solver.run(warm_basis);
}

}  // namespace volterra
