#include "ravel/filter.hpp"

#include <cmath>
#include <numbers>

namespace ravel {

namespace {

constexpr double kDensityFloor = 1e-300;

Eigen::Matrix4d transition(double dt) {
  Eigen::Matrix4d F = Eigen::Matrix4d::Identity();
  F(0, 2) = dt;
  F(1, 3) = dt;
  return F;
}

// Discrete white-noise acceleration model, per axis.
Eigen::Matrix4d process_noise(double dt, double accel_std) {
  const double q = accel_std * accel_std;
  const double dt2 = dt * dt, dt3 = dt2 * dt, dt4 = dt3 * dt;
  Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
  for (int axis = 0; axis < 2; ++axis) {
    Q(axis, axis) = q * dt4 / 4.0;
    Q(axis, axis + 2) = Q(axis + 2, axis) = q * dt3 / 2.0;
    Q(axis + 2, axis + 2) = q * dt2;
  }
  return Q;
}

double meas_std_for(DetectionKind kind, const FilterConfig& cfg) {
  return kind == DetectionKind::Camera ? cfg.meas_noise_camera
                                       : cfg.meas_noise_synthetic;
}

}  // namespace

FilterState make_initial_state(const Point2& position,
                               const FilterConfig& cfg) {
  FilterState s;
  s.mean.head<2>() = position;
  s.covariance = Eigen::Matrix4d::Zero();
  s.covariance(0, 0) = s.covariance(1, 1) = cfg.init_pos_std * cfg.init_pos_std;
  s.covariance(2, 2) = s.covariance(3, 3) = cfg.init_vel_std * cfg.init_vel_std;
  return s;
}

FilterState predict(const FilterState& state, double dt,
                    const FilterConfig& cfg) {
  if (dt <= 0.0) throw std::invalid_argument("predict: dt must be > 0");
  const Eigen::Matrix4d F = transition(dt);
  FilterState out;
  out.mean = F * state.mean;
  out.covariance = F * state.covariance * F.transpose() +
                   process_noise(dt, cfg.process_noise_accel);
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose().eval());
  return out;
}

UpdateResult update(const FilterState& state, const Point2& z,
                    double meas_std) {
  if (!std::isfinite(z.x()) || !std::isfinite(z.y()))
    throw std::invalid_argument("update: non-finite measurement");
  if (meas_std <= 0.0) throw std::invalid_argument("update: meas_std must be > 0");

  Eigen::Matrix<double, 2, 4> H = Eigen::Matrix<double, 2, 4>::Zero();
  H(0, 0) = H(1, 1) = 1.0;
  const Eigen::Matrix2d R = meas_std * meas_std * Eigen::Matrix2d::Identity();

  const Eigen::Vector2d innovation = z - H * state.mean;
  const Eigen::Matrix2d S = H * state.covariance * H.transpose() + R;
  const Eigen::Matrix2d S_inv = S.inverse();
  const Eigen::Matrix<double, 4, 2> K = state.covariance * H.transpose() * S_inv;

  UpdateResult out;
  out.state.mean = state.mean + K * innovation;
  const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();
  // Joseph form keeps the covariance symmetric positive-definite.
  const Eigen::Matrix4d A = I - K * H;
  out.state.covariance =
      A * state.covariance * A.transpose() + K * R * K.transpose();

  const double mahal2 = innovation.dot(S_inv * innovation);
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(S.determinant()));
  out.innovation_likelihood = std::max(norm * std::exp(-0.5 * mahal2), kDensityFloor);
  return out;
}

FilterRun run_hypothesis_filter(const Hypothesis& hyp,
                                const WindowConfig& window,
                                const FilterConfig& cfg) {
  const double dt = window.frame_period_s();
  FilterRun run;
  run.trajectory.resize(hyp.detections.size());

  bool initialized = false;
  FilterState state;
  double score_sum = 0.0;

  for (std::size_t i = 0; i < hyp.detections.size(); ++i) {
    const Detection& d = hyp.detections[i];
    if (d.kind == DetectionKind::Empty) {
      initialized = false;  // re-init after any out-of-FOV span
      continue;
    }
    ++run.nonempty_count;
    const double meas_std = meas_std_for(d.kind, cfg);

    if (!initialized) {
      state = make_initial_state(*d.position, cfg);
      initialized = true;
    } else {
      state = predict(state, dt, cfg);
    }
    const UpdateResult upd = update(state, *d.position, meas_std);
    state = upd.state;
    run.trajectory[i] = state.position();

    const double pv = d.kind == DetectionKind::Camera ? cfg.p_v : 1.0 - cfg.p_v;
    score_sum +=
        std::log(std::max(pv * upd.innovation_likelihood, kDensityFloor));
  }

  if (run.nonempty_count == 0)
    throw std::runtime_error("empty hypothesis");
  run.visual_score = score_sum / run.nonempty_count;
  return run;
}

}  // namespace ravel
