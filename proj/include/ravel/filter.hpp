#pragma once

#include "ravel/tree.hpp"

namespace ravel {

struct FilterConfig {
  double process_noise_accel = 0.5;   // m/s^2 white-noise acceleration
  double meas_noise_camera = 0.3;     // meters
  double meas_noise_synthetic = 0.9;  // meters (inflated; see update docs)
  double init_pos_std = 0.5;          // meters
  double init_vel_std = 1.0;          // m/s
  double p_v = 0.9;  // probability of a camera detection while in the FOV
};

// Constant-velocity state [x, y, vx, vy].
struct FilterState {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Identity();

  Point2 position() const { return mean.head<2>(); }
};

FilterState make_initial_state(const Point2& position, const FilterConfig& cfg);

FilterState predict(const FilterState& state, double dt,
                    const FilterConfig& cfg);

struct UpdateResult {
  FilterState state;
  double innovation_likelihood = 0.0;  // Gaussian density of z, pre-update
};

UpdateResult update(const FilterState& state, const Point2& z,
                    double meas_std);

struct FilterRun {
  std::vector<std::optional<Point2>> trajectory;  // x_i^+, absent on Empty
  double visual_score = 0.0;                      // L^v
  int nonempty_count = 0;                         // |H|
};

// Runs the per-hypothesis filter over all W frames. Empty frames are
// skipped entirely; the filter (re)initializes at the first non-empty
// detection after any empty run. Densities are floored at 1e-300.
FilterRun run_hypothesis_filter(const Hypothesis& hyp,
                                const WindowConfig& window,
                                const FilterConfig& cfg);

}  // namespace ravel
