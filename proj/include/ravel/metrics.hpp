#pragma once

#include "ravel/types.hpp"

namespace ravel {

// Per-frame presence-or-position view of a trajectory: nullopt where the
// target is reported outside the FOV.
using SparseTrajectory = std::vector<std::optional<Point2>>;

struct OverlapResult {
  double overlap = 0.0;  // fp_ratio + fn_ratio
  double fp_ratio = 0.0;
  double fn_ratio = 0.0;
};

// Mean Euclidean distance over frames where both report the target in the
// FOV; nullopt if there is no such frame.
std::optional<double> offline_location_error(const SparseTrajectory& est,
                                             const SparseTrajectory& truth);

OverlapResult overlap_error(const SparseTrajectory& est,
                            const SparseTrajectory& truth);

// Distance at the final frame; nullopt if either side is absent there.
std::optional<double> online_location_error(const SparseTrajectory& est,
                                            const SparseTrajectory& truth);

struct CdfPoint {
  double value = 0.0;
  double cumulative_fraction = 0.0;
};

struct CdfSeries {
  std::vector<CdfPoint> points;  // sorted values, fractions k/N
  double median = 0.0;           // nearest-rank
  double p90 = 0.0;              // nearest-rank
};

CdfSeries cdf_series(std::vector<double> values);

// Nearest-rank percentile: the ceil(q*N)-th smallest value.
double nearest_rank_percentile(std::vector<double> values, double q);

}  // namespace ravel
