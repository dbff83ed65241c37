#pragma once

#include "ravel/types.hpp"

namespace ravel {

// An unambiguous chain of camera detections on strictly consecutive frames.
struct Tracklet {
  std::string id;
  std::vector<Detection> detections;  // all kind == Camera

  FrameIndex start_frame() const { return detections.front().frame; }
  FrameIndex end_frame() const { return detections.back().frame; }
  const Point2& first_position() const { return *detections.front().position; }
  const Point2& last_position() const { return *detections.back().position; }
  int length() const { return static_cast<int>(detections.size()); }
};

struct TrackletGenConfig {
  double max_displacement_dt = 1.0;  // meters between consecutive frames
  double w_d = 0.5;
  double w_s = 0.5;
  double q_threshold = 0.3;
};

struct DegenerateStepError : std::runtime_error {
  DegenerateStepError() : std::runtime_error("degenerate step") {}
};

// 1 - cos(turn angle) of the triple; range [0, 2]. Throws DegenerateStepError
// if either displacement is zero.
double direction_cost(const Point2& c_i, const Point2& c_i1, const Point2& c_i2);

// 1 - 2*sqrt(a*b)/(a+b) for the two step lengths; range [0, 1]. Throws if
// both steps are zero.
double speed_cost(const Point2& c_i, const Point2& c_i1, const Point2& c_i2);

// w_d * direction_cost + w_s * speed_cost.
double motion_cost(const Point2& c_i, const Point2& c_i1, const Point2& c_i2,
                   const TrackletGenConfig& cfg);

// Groups every camera detection of the window into exactly one tracklet.
// Frames are processed chronologically, detections in input order.
std::vector<Tracklet> generate_tracklets(const WindowBundle& bundle,
                                         const TrackletGenConfig& cfg);

}  // namespace ravel
