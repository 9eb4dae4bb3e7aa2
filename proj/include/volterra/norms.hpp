#pragma once

#include "volterra/grid.hpp"
#include "volterra/series.hpp"
#include "volterra/weights.hpp"

namespace volterra {

/// Sampled sup of nu(|z|)|a(z)| over the grid with local refinement around
/// the best samples. This is a lower estimate of the true norm.
SupEstimate weighted_sup_norm(const TruncatedSeries& a, const RadialWeight& nu,
                              const GridSpec& grid, int jobs = 1);

/// |a(0)| + weighted_sup_norm(a', nu). The history and witness are those
/// of the derivative term.
SupEstimate weighted_bloch_norm(const TruncatedSeries& a, const RadialWeight& nu,
                                const GridSpec& grid, int jobs = 1);

}  // namespace volterra
