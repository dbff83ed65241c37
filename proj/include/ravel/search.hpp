#pragma once

#include "ravel/filter.hpp"
#include "ravel/radio.hpp"

#include <memory>

namespace ravel {

struct ScoredHypothesis {
  int hypothesis_index = 0;  // enumeration order, used for tie-breaking
  const Hypothesis* hypothesis = nullptr;
  // Shared across the model grid: the filter runs once per hypothesis.
  std::shared_ptr<const std::vector<std::optional<Point2>>> trajectory;
  double visual_score = 0.0;
  double radio_score = 0.0;
  double total = 0.0;
  RadioModel model;
};

struct TrackerConfig {
  WindowConfig window;
  TrackletGenConfig tracklet;
  TreeConfig tree;
  FilterConfig filter;
  PriorConfig prior;
  double sigma = 4.0;  // shadowing std held fixed during learning
  FovRect fov;
  int max_hypotheses = 10000;
};

// Scores every (hypothesis, model) pair. The filter trajectory is computed
// once per hypothesis and shared across models.
std::vector<ScoredHypothesis> score_all(
    const std::vector<Hypothesis>& hypotheses,
    const std::vector<RadioMeasurement>& radio,
    const std::vector<Basestation>& basestations,
    const std::vector<RadioModel>& models, const TrackerConfig& cfg);

// Argmax of total; ties go to more camera detections, then earlier
// enumeration order.
const ScoredHypothesis& select_best(const std::vector<ScoredHypothesis>& scored);

struct TrackDiagnostics {
  int tracklet_count = 0;
  int hypothesis_count = 0;
  bool truncated = false;
  bool no_tracklets = false;
  RadioModel learned_model;
  double best_total = 0.0;
  double best_visual = 0.0;
  double best_radio = 0.0;
  std::vector<std::string> best_source_path;
};

struct TrackResult {
  std::vector<std::optional<Point2>> trajectory;  // size W
  std::vector<DetectionKind> kinds;               // size W
  TrackDiagnostics diagnostics;
};

// Full pipeline: tracklets -> trees -> (hypothesis x model) scoring ->
// argmax over both, learning the radio model on the way.
TrackResult track_window_ravel(const WindowBundle& bundle,
                               const std::vector<Basestation>& basestations,
                               const TrackerConfig& cfg);

struct InitHint {
  FrameIndex frame = 1;
  Point2 position = Point2::Zero();
  double tolerance = 0.5;  // meters
};

// Vision-only MHT baseline: same tree machinery, radio score identically
// zero. An optional hint restricts candidates to hypotheses whose first
// camera detection matches it.
TrackResult track_window_vision_only(const WindowBundle& bundle,
                                     const TrackerConfig& cfg,
                                     const std::optional<InitHint>& hint = {});

// Runs the full pipeline per window and reports the final-frame estimate
// of each (absent when the final frame is empty).
std::vector<std::optional<Point2>> track_online(
    const std::vector<WindowBundle>& windows,
    const std::vector<Basestation>& basestations, const TrackerConfig& cfg);

}  // namespace ravel
