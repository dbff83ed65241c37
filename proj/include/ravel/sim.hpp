#pragma once

#include "ravel/radio.hpp"
#include "ravel/types.hpp"

#include <cstdint>
#include <map>
#include <numbers>

namespace ravel {

// Piecewise-linear scripted trajectory: position is interpolated between
// control frames (clamped outside). Control points may lie outside the FOV.
struct ScriptedWalker {
  std::vector<std::pair<int, Point2>> control;  // (frame, position), sorted
};

struct SceneConfig {
  FovRect fov{0.0, 0.0, 11.0, 12.0};
  int duration_frames = 120;
  double fps = 2.0;
  int walkers = 8;
  std::vector<int> tracked_walker_ids = {0};
  double speed_min = 0.3, speed_max = 1.2;  // m/s
  double pause_prob = 0.02;                 // per-frame chance to start a pause
  // Maximum heading change when a random walker picks its next waypoint
  // (radians; pi means unconstrained). Smaller values give smoother strolls.
  double max_turn_rad = std::numbers::pi;
  // Random-walk waypoints stay this far inside the FOV. Larger margins keep
  // turn points away from the walls, where a bounded-turn walker would
  // otherwise get boxed in and forced into a U-turn.
  double waypoint_margin = 0.3;
  bool exit_entry = false;
  double detect_miss_prob = 0.1;
  double split_prob = 0.05;
  double merge_distance = 0.6;
  double false_positive_rate = 0.2;  // expected per frame
  double detection_noise_std = 0.1;
  RadioModel radio_model{-64.0, 2.2, 4.0};
  std::vector<Basestation> basestations;  // empty -> 4 corner APs
  double rssi_rate_hz = 2.0;
  std::uint64_t seed = 1;
  // Walkers with an entry here follow the script; the rest random-walk.
  std::vector<ScriptedWalker> scripted;
};

struct WalkerTruth {
  std::vector<Point2> positions;  // true position, frame 1..duration
  std::vector<bool> in_fov;
};

struct SceneData {
  SceneConfig config;
  std::vector<WalkerTruth> truth;                      // per walker
  std::vector<std::vector<Detection>> detections;      // per frame
  std::map<int, std::vector<RadioMeasurement>> radio;  // per tracked walker
};

std::vector<Basestation> default_corner_basestations(const FovRect& fov);

// Deterministic given the seed: trajectories, detector noise
// (miss/split/merge/false positives) and RSSI draws.
SceneData simulate(const SceneConfig& cfg);

// Two walkers crossing at the scene center and diverging at a wide angle;
// symmetric enough that vision alone cannot tell the branches apart.
SceneConfig make_crossing_scene(std::uint64_t seed);

// Tracked walker exits the FOV, re-enters elsewhere; a decoy walker enters
// during the absence.
SceneConfig make_exit_reenter_scene(std::uint64_t seed);

// Tracked walker pauses at an exhibit then U-turns while a confuser passes
// close by.
SceneConfig make_stop_and_turn_scene(std::uint64_t seed);

}  // namespace ravel
