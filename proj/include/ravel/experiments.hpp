#pragma once

#include "ravel/metrics.hpp"
#include "ravel/search.hpp"
#include "ravel/sim.hpp"

namespace ravel {

// Helpers shared by the sweep commands and the acceptance experiments.

// Tracker configured to cover the whole scene as one window, with the
// scene's FOV and frame rate.
TrackerConfig tracker_for_scene(const SceneConfig& scene);

// Validated window bundle from a simulated scene for one tracked walker.
WindowBundle bundle_from_scene(const SceneData& scene, int walker);

// Ground-truth trajectory of one walker, absent where out of the FOV.
SparseTrajectory truth_trajectory(const SceneData& scene, int walker);

// Hint at the walker's first in-FOV truth position (baseline
// initialization).
std::optional<InitHint> first_detection_hint(const SceneData& scene,
                                             int walker);

// Multi-walker random-walk scene used for the window/sampling sweeps.
SceneConfig standard_eval_scene(std::uint64_t seed, int duration_frames,
                                double rssi_rate_hz);

// Cuts a full-scene detection/radio stream into sliding windows of the
// given size and stride (frames are re-indexed to 1..W per window).
std::vector<WindowBundle> make_windows(
    const std::vector<std::vector<Detection>>& frames,
    const std::vector<RadioMeasurement>& radio, const WindowConfig& window,
    int stride);

struct SceneOutcome {
  TrackResult result;
  std::optional<double> offline_error;
  std::optional<double> online_error;
  OverlapResult overlap;
};

SceneOutcome evaluate_tracker(const SceneData& scene, int walker,
                              const TrackerConfig& cfg, bool vision_only,
                              const std::optional<InitHint>& hint = {});

}  // namespace ravel
