#include "ravel/experiments.hpp"

namespace ravel {

TrackerConfig tracker_for_scene(const SceneConfig& scene) {
  TrackerConfig cfg;
  cfg.window.window_size_frames = scene.duration_frames;
  cfg.window.fps = scene.fps;
  cfg.fov = scene.fov;
  return cfg;
}

WindowBundle bundle_from_scene(const SceneData& scene, int walker) {
  const auto it = scene.radio.find(walker);
  if (it == scene.radio.end())
    throw std::invalid_argument("walker has no radio data: " +
                                std::to_string(walker));
  WindowConfig wc;
  wc.window_size_frames = scene.config.duration_frames;
  wc.fps = scene.config.fps;
  return validate_window_inputs(scene.detections, it->second, wc);
}

SparseTrajectory truth_trajectory(const SceneData& scene, int walker) {
  const WalkerTruth& t = scene.truth.at(walker);
  SparseTrajectory out(t.positions.size());
  for (std::size_t i = 0; i < t.positions.size(); ++i)
    if (t.in_fov[i]) out[i] = t.positions[i];
  return out;
}

std::optional<InitHint> first_detection_hint(const SceneData& scene,
                                             int walker) {
  const WalkerTruth& t = scene.truth.at(walker);
  for (std::size_t i = 0; i < t.positions.size(); ++i) {
    if (t.in_fov[i]) {
      InitHint hint;
      hint.frame = static_cast<int>(i) + 1;
      hint.position = t.positions[i];
      hint.tolerance = 0.6;
      return hint;
    }
  }
  return std::nullopt;
}

SceneConfig standard_eval_scene(std::uint64_t seed, int duration_frames,
                                double rssi_rate_hz) {
  SceneConfig cfg;
  cfg.duration_frames = duration_frames;
  // A roomier hall keeps chance multi-walker convergences rare; when all
  // walkers meet, the merged detections alias identities at the detector
  // level and no tracker can recover the tail.
  cfg.fov = {0.0, 0.0, 16.0, 16.0};
  cfg.walkers = 3;
  // Brisk visitors who keep moving and turn gently: slow crawls, pauses and
  // sharp turns make the motion-gated tracklet extension fragment into
  // chains too deep for the capped enumeration.
  cfg.speed_min = 0.8;
  cfg.pause_prob = 0.0;
  cfg.max_turn_rad = 0.6;
  cfg.waypoint_margin = 0.6;
  cfg.detect_miss_prob = 0.01;
  cfg.split_prob = 0.01;
  cfg.false_positive_rate = 0.02;
  cfg.detection_noise_std = 0.06;
  // Dense deployment: corner APs plus mid-wall APs sharpen the radio's
  // position discrimination so identity swaps at crossings get corrected.
  cfg.basestations = default_corner_basestations(cfg.fov);
  const double cx = 0.5 * (cfg.fov.x_min + cfg.fov.x_max);
  const double cy = 0.5 * (cfg.fov.y_min + cfg.fov.y_max);
  cfg.basestations.push_back({"ap4", {cx, cfg.fov.y_min}});
  cfg.basestations.push_back({"ap5", {cx, cfg.fov.y_max}});
  cfg.basestations.push_back({"ap6", {cfg.fov.x_min, cy}});
  cfg.basestations.push_back({"ap7", {cfg.fov.x_max, cy}});
  cfg.seed = seed;
  cfg.rssi_rate_hz = rssi_rate_hz;
  return cfg;
}

std::vector<WindowBundle> make_windows(
    const std::vector<std::vector<Detection>>& frames,
    const std::vector<RadioMeasurement>& radio, const WindowConfig& window,
    int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  const int W = window.window_size_frames;
  const int total = static_cast<int>(frames.size());
  std::vector<WindowBundle> out;
  for (int start = 0; start + W <= total; start += stride) {
    std::vector<std::vector<Detection>> local(W);
    for (int f = 0; f < W; ++f) {
      for (Detection d : frames[start + f]) {
        d.frame = f + 1;
        local[f].push_back(d);
      }
    }
    std::vector<RadioMeasurement> local_radio;
    for (RadioMeasurement m : radio) {
      if (m.frame > start && m.frame <= start + W) {
        m.frame -= start;
        local_radio.push_back(m);
      }
    }
    out.push_back(validate_window_inputs(local, local_radio, window));
  }
  return out;
}

SceneOutcome evaluate_tracker(const SceneData& scene, int walker,
                              const TrackerConfig& cfg, bool vision_only,
                              const std::optional<InitHint>& hint) {
  const WindowBundle bundle = bundle_from_scene(scene, walker);
  SceneOutcome out;
  out.result = vision_only
                   ? track_window_vision_only(bundle, cfg, hint)
                   : track_window_ravel(bundle, scene.config.basestations,
                                        cfg);
  const SparseTrajectory truth = truth_trajectory(scene, walker);
  out.offline_error = offline_location_error(out.result.trajectory, truth);
  out.online_error = online_location_error(out.result.trajectory, truth);
  out.overlap = overlap_error(out.result.trajectory, truth);
  return out;
}

}  // namespace ravel
