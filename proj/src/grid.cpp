#include "volterra/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "volterra/parallel.hpp"

namespace volterra {

double dyadic_radius(double level) { return 1.0 - std::exp2(-level); }

double GridSpec::radius(int j) const {
  return dyadic_radius(static_cast<double>(j) / static_cast<double>(substeps));
}

std::vector<double> GridSpec::radii() const {
  std::vector<double> r(radial_points());
  for (int j = 0; j < radial_points(); ++j) r[j] = radius(j);
  return r;
}

double GridSpec::angle_step() const { return 2.0 * std::numbers::pi / angles; }

double GridSpec::angle(int k) const { return angle_step() * k; }

int GridSpec::sampled_angles(bool conj_symmetric) const {
  return conj_symmetric ? angles / 2 + 1 : angles;
}

void GridSpec::validate() const {
  if (levels < 1 || substeps < 1 || angles < 1) {
    throw std::invalid_argument("GridSpec: needs at least one radius level and one angle");
  }
  if (levels > 52) throw std::invalid_argument("GridSpec: levels beyond 52 are not representable");
  if (!(refine_tol > 0.0)) throw std::invalid_argument("GridSpec: refine_tol must be positive");
}

GoldenResult golden_section_max(const std::function<double(double)>& f, double a, double b,
                                double x_tol, int max_iter) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (a > b) std::swap(a, b);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  for (int it = 0; it < max_iter && (b - a) > x_tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc >= fd ? GoldenResult{c, fc, evals} : GoldenResult{d, fd, evals};
}

namespace {

struct Candidate {
  double value;
  int j;
  int k;
};

// Picks the best samples that are local maxima over their 8-neighbourhood.
std::vector<Candidate> local_maxima(const std::vector<std::vector<double>>& v, bool wrap,
                                    int wanted) {
  const int nr = static_cast<int>(v.size());
  const int na = static_cast<int>(v.front().size());
  std::vector<Candidate> out;
  for (int j = 0; j < nr; ++j) {
    for (int k = 0; k < na; ++k) {
      const double x = v[j][k];
      if (!std::isfinite(x)) continue;
      bool is_max = true;
      for (int dj = -1; dj <= 1 && is_max; ++dj) {
        for (int dk = -1; dk <= 1; ++dk) {
          if (dj == 0 && dk == 0) continue;
          const int jj = j + dj;
          int kk = k + dk;
          if (jj < 0 || jj >= nr) continue;
          if (wrap) {
            kk = (kk + na) % na;
          } else if (kk < 0 || kk >= na) {
            continue;
          }
          if (v[jj][kk] > x) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) out.push_back({x, j, k});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  if (static_cast<int>(out.size()) > wanted) out.resize(wanted);
  return out;
}

}  // namespace

SupEstimate sup_over_disk(const DiskFunction& f, const GridSpec& grid, bool conj_symmetric,
                          int jobs) {
  grid.validate();
  const int nr = grid.radial_points();
  const int na = grid.sampled_angles(conj_symmetric);
  const auto radii = grid.radii();

  std::vector<std::vector<double>> values(nr, std::vector<double>(na));
  parallel_for(static_cast<std::size_t>(nr), jobs, [&](std::size_t j) {
    for (int k = 0; k < na; ++k) values[j][k] = f(radii[j], grid.angle(k));
  });

  SupEstimate est;
  est.level_history.assign(grid.levels + 1, 0.0);
  double running = -std::numeric_limits<double>::infinity();
  int best_j = 0;
  int best_k = 0;
  for (int j = 0; j < nr; ++j) {
    for (int k = 0; k < na; ++k) {
      double& x = values[j][k];
      if (std::isnan(x)) x = std::numeric_limits<double>::infinity();
      if (x > running) {
        running = x;
        best_j = j;
        best_k = k;
      }
    }
    if (j % grid.substeps == 0) est.level_history[j / grid.substeps] = running;
  }
  est.sampled_value = running;
  est.value = running;
  est.r = radii[best_j];
  est.theta = grid.angle(best_k);
  est.refinement_history.push_back(running);
  if (!std::isfinite(running)) return est;

  const double dtheta = grid.angle_step();
  const double r_max = grid.max_radius();
  for (const auto& cand : local_maxima(values, !conj_symmetric, grid.refine_candidates)) {
    double r = radii[cand.j];
    double theta = grid.angle(cand.k);
    double best = cand.value;
    const double r_lo = radii[std::max(cand.j - 1, 0)];
    const double r_hi = std::min(radii[std::min(cand.j + 1, nr - 1)], r_max);
    for (int round = 0; round < 4; ++round) {
      const double before = best;
      auto gt = golden_section_max([&](double t) { return f(r, t); }, theta - dtheta,
                                   theta + dtheta, dtheta * grid.refine_tol);
      if (gt.value > best) {
        best = gt.value;
        theta = gt.x;
      }
      if (r_hi > r_lo) {
        auto gr = golden_section_max([&](double s) { return f(s, theta); }, r_lo, r_hi,
                                     (r_hi - r_lo) * grid.refine_tol);
        if (gr.value > best) {
          best = gr.value;
          r = gr.x;
        }
      }
      if (best - before <= grid.refine_tol * std::abs(best)) break;
    }
    if (best > est.value) {
      est.value = best;
      est.r = r;
      est.theta = theta;
    }
    est.refinement_history.push_back(est.value);
  }
  return est;
}

std::vector<double> boundary_profile(const DiskFunction& f, const GridSpec& grid,
                                     bool conj_symmetric, std::vector<double>* argmax_theta) {
  grid.validate();
  const int na = grid.sampled_angles(conj_symmetric);
  const double dtheta = grid.angle_step();
  std::vector<double> profile(grid.levels + 1);
  if (argmax_theta) argmax_theta->assign(grid.levels + 1, 0.0);
  for (int m = 0; m <= grid.levels; ++m) {
    const double r = dyadic_radius(m);
    double best = -std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int k = 0; k < na; ++k) {
      const double x = f(r, grid.angle(k));
      if (x > best) {
        best = x;
        best_theta = grid.angle(k);
      }
    }
    if (std::isfinite(best)) {
      auto g = golden_section_max([&](double t) { return f(r, t); }, best_theta - dtheta,
                                  best_theta + dtheta, dtheta * grid.refine_tol);
      if (g.value > best) {
        best = g.value;
        best_theta = g.x;
      }
    }
    profile[m] = best;
    if (argmax_theta) (*argmax_theta)[m] = best_theta;
  }
  return profile;
}

}  // namespace volterra
