#include "ravel/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ravel {

namespace {
void check_lengths(const SparseTrajectory& est, const SparseTrajectory& truth) {
  if (est.size() != truth.size())
    throw std::invalid_argument("trajectory length mismatch");
}
}  // namespace

std::optional<double> offline_location_error(const SparseTrajectory& est,
                                             const SparseTrajectory& truth) {
  check_lengths(est, truth);
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (est[i] && truth[i]) {
      sum += (*est[i] - *truth[i]).norm();
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

OverlapResult overlap_error(const SparseTrajectory& est,
                            const SparseTrajectory& truth) {
  check_lengths(est, truth);
  const double W = static_cast<double>(est.size());
  OverlapResult r;
  for (std::size_t i = 0; i < est.size(); ++i) {
    if (est[i] && !truth[i]) r.fp_ratio += 1.0;
    if (!est[i] && truth[i]) r.fn_ratio += 1.0;
  }
  r.fp_ratio /= W;
  r.fn_ratio /= W;
  r.overlap = r.fp_ratio + r.fn_ratio;
  return r;
}

std::optional<double> online_location_error(const SparseTrajectory& est,
                                            const SparseTrajectory& truth) {
  check_lengths(est, truth);
  if (est.empty() || !est.back() || !truth.back()) return std::nullopt;
  return (*est.back() - *truth.back()).norm();
}

double nearest_rank_percentile(std::vector<double> values, double q) {
  if (values.empty())
    throw std::invalid_argument("percentile of empty list");
  std::sort(values.begin(), values.end());
  const int n = static_cast<int>(values.size());
  int rank = static_cast<int>(std::ceil(q * n));
  rank = std::clamp(rank, 1, n);
  return values[rank - 1];
}

CdfSeries cdf_series(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("cdf of empty list");
  CdfSeries out;
  out.median = nearest_rank_percentile(values, 0.5);
  out.p90 = nearest_rank_percentile(values, 0.9);
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (std::size_t k = 0; k < values.size(); ++k)
    out.points.push_back({values[k], (k + 1) / n});
  return out;
}

}  // namespace ravel
