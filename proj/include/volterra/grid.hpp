#pragma once

#include <functional>
#include <vector>

namespace volterra {

/// Sampling grid on the disk.
///
/// Radii are geometric toward the boundary: r_j = 1 - 2^{-j/substeps} for
/// j = 0..levels*substeps, so integer level m sits at index m*substeps and
/// r = 0 is always sampled. Angles are equispaced on [0, 2pi).
struct GridSpec {
  int levels = 14;
  int substeps = 4;
  int angles = 256;
  double refine_tol = 1e-4;
  int refine_candidates = 4;

  int radial_points() const { return levels * substeps + 1; }
  double radius(int j) const;
  double max_radius() const { return radius(levels * substeps); }
  std::vector<double> radii() const;
  double angle(int k) const;
  double angle_step() const;
  /// Number of angles actually sampled; conjugation symmetry keeps [0, pi].
  int sampled_angles(bool conj_symmetric) const;

  void validate() const;
};

/// Radius at dyadic level m (may be fractional), 1 - 2^{-m}.
double dyadic_radius(double level);

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
/// Stops when the bracket is shorter than x_tol. The endpoints are not
/// evaluated; callers that care compare against their own samples.
GoldenResult golden_section_max(const std::function<double(double)>& f, double a, double b,
                                double x_tol, int max_iter = 200);

/// Sampled supremum over the disk with local refinement.
struct SupEstimate {
  double value = 0.0;
  double sampled_value = 0.0;
  double r = 0.0;
  double theta = 0.0;
  /// level_history[m] = max of the samples with r <= 1 - 2^{-m}.
  std::vector<double> level_history;
  /// Value after the grid pass followed by each refinement round.
  std::vector<double> refinement_history;
};

using DiskFunction = std::function<double(double r, double theta)>;

/// Samples f on the grid and refines the best local maxima by alternating
/// golden-section searches in theta and r. The returned value never falls
/// below the sampled maximum.
SupEstimate sup_over_disk(const DiskFunction& f, const GridSpec& grid, bool conj_symmetric,
                          int jobs = 1);

/// Per-level max over angles of f at the integer-level radii 1 - 2^{-m},
/// m = 0..grid.levels. Used for boundary-limit profiles.
std::vector<double> boundary_profile(const DiskFunction& f, const GridSpec& grid,
                                     bool conj_symmetric, std::vector<double>* argmax_theta = nullptr);

}  // namespace volterra
