#include "ravel/radio.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ravel {

namespace {
constexpr double kLogFloor = -690.77552789821368;  // log(1e-300)
}

double expected_rss(const RadioModel& model, double distance_m) {
  const double d = std::max(distance_m, 0.1);
  return model.p0 - 10.0 * model.n * std::log10(d);
}

double raised_cosine_log_prior(double value, double mode, double halfwidth) {
  if (halfwidth <= 0.0)
    throw std::invalid_argument("raised cosine: halfwidth must be > 0");
  const double u = (value - mode) / halfwidth;
  if (std::abs(u) >= 1.0) return kLogFloor;
  const double density =
      (1.0 + std::cos(std::numbers::pi * u)) / (2.0 * halfwidth);
  return density <= 1e-300 ? kLogFloor : std::log(density);
}

double log_prior(const RadioModel& model, const PriorConfig& prior) {
  return raised_cosine_log_prior(model.p0, prior.p0_mode, prior.p0_halfwidth) +
         raised_cosine_log_prior(model.n, prior.n_mode, prior.n_halfwidth);
}

double radio_score(const std::vector<std::optional<Point2>>& trajectory,
                   const std::vector<RadioMeasurement>& radio,
                   const std::vector<Basestation>& basestations,
                   const RadioModel& model, const PriorConfig& prior,
                   int nonempty_count) {
  if (nonempty_count < 1)
    throw std::invalid_argument("radio_score: |H| must be >= 1");

  std::map<std::string, Point2> bs_pos;
  for (const Basestation& b : basestations) bs_pos[b.id] = b.position;

  const double log_norm =
      -std::log(model.sigma * std::sqrt(2.0 * std::numbers::pi));
  const double inv_2var = 1.0 / (2.0 * model.sigma * model.sigma);

  double sum = 0.0;
  for (const RadioMeasurement& m : radio) {
    const int idx = m.frame - 1;
    if (idx < 0 || idx >= static_cast<int>(trajectory.size())) continue;
    if (!trajectory[idx]) continue;  // empty frame: no contribution
    const auto it = bs_pos.find(m.basestation_id);
    if (it == bs_pos.end())
      throw std::runtime_error("unknown basestation: " + m.basestation_id);
    const double dist = (*trajectory[idx] - it->second).norm();
    const double residual = m.rssi - expected_rss(model, dist);
    sum += log_norm - residual * residual * inv_2var;
  }
  return sum / nonempty_count + log_prior(model, prior);
}

std::vector<RadioModel> model_grid(const PriorConfig& prior, double sigma) {
  std::vector<RadioModel> grid;
  const auto axis = [](double mode, double halfwidth, double step) {
    std::vector<double> values;
    const int n_steps = static_cast<int>(std::floor(halfwidth / step + 1e-9));
    for (int k = -n_steps; k <= n_steps; ++k) values.push_back(mode + k * step);
    return values;
  };
  for (double p0 : axis(prior.p0_mode, prior.p0_halfwidth, prior.grid_step_p0))
    for (double n : axis(prior.n_mode, prior.n_halfwidth, prior.grid_step_n))
      grid.push_back({p0, n, sigma});
  return grid;
}

RadioModel fit_reference_model(
    const std::vector<std::pair<double, double>>& distance_rssi) {
  if (distance_rssi.size() < 2)
    throw std::invalid_argument("degenerate fit: need at least 2 samples");

  // Regress rssi on g = -10 log10(d): intercept = P0, slope = n.
  double sg = 0, sy = 0, sgg = 0, sgy = 0;
  const double N = static_cast<double>(distance_rssi.size());
  for (const auto& [d, rssi] : distance_rssi) {
    const double g = -10.0 * std::log10(std::max(d, 0.1));
    sg += g;
    sy += rssi;
    sgg += g * g;
    sgy += g * rssi;
  }
  const double denom = N * sgg - sg * sg;
  if (std::abs(denom) < 1e-12)
    throw std::invalid_argument("degenerate fit: all distances equal");
  const double slope = (N * sgy - sg * sy) / denom;
  const double intercept = (sy - slope * sg) / N;

  double ss = 0.0;
  for (const auto& [d, rssi] : distance_rssi) {
    const double g = -10.0 * std::log10(std::max(d, 0.1));
    const double r = rssi - (intercept + slope * g);
    ss += r * r;
  }
  const double dof = std::max(N - 2.0, 1.0);
  RadioModel model;
  model.p0 = intercept;
  model.n = slope;
  model.sigma = std::max(std::sqrt(ss / dof), 0.1);
  return model;
}

}  // namespace ravel
