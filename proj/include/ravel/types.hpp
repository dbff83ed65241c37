#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ravel {

using Point2 = Eigen::Vector2d;

// Frame indices are 1-based within a window: 1 <= frame <= W.
using FrameIndex = int;

enum class DetectionKind { Camera, Synthetic, Empty };

const char* to_string(DetectionKind kind);

// One timestamped ground-plane observation. Empty detections carry no
// position (target believed outside the FOV).
struct Detection {
  FrameIndex frame = 1;
  DetectionKind kind = DetectionKind::Camera;
  std::optional<Point2> position;

  static Detection camera(FrameIndex frame, const Point2& p) {
    return {frame, DetectionKind::Camera, p};
  }
  static Detection synthetic(FrameIndex frame, const Point2& p) {
    return {frame, DetectionKind::Synthetic, p};
  }
  static Detection empty(FrameIndex frame) {
    return {frame, DetectionKind::Empty, std::nullopt};
  }
};

struct RadioMeasurement {
  FrameIndex frame = 1;
  std::string basestation_id;
  double rssi = 0.0;  // dBm
};

struct Basestation {
  std::string id;
  Point2 position = Point2::Zero();
};

struct WindowConfig {
  int window_size_frames = 120;  // W
  double fps = 2.0;

  double frame_period_s() const { return 1.0 / fps; }
};

// Axis-aligned camera field of view on the ground plane, meters.
struct FovRect {
  double x_min = 0.0, y_min = 0.0;
  double x_max = 11.0, y_max = 12.0;

  bool contains(const Point2& p) const {
    return p.x() >= x_min && p.x() <= x_max && p.y() >= y_min && p.y() <= y_max;
  }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validated per-window input: exactly W per-frame camera detection sets
// (possibly empty) plus radio measurements sorted by frame.
struct WindowBundle {
  WindowConfig config;
  std::vector<std::vector<Detection>> frames;  // size W, index = frame-1
  std::vector<RadioMeasurement> radio;

  int window_size() const { return config.window_size_frames; }
};

// Checks frame ranges, finiteness and (frame, basestation) uniqueness.
// Throws ValidationError on bad input.
WindowBundle validate_window_inputs(
    const std::vector<std::vector<Detection>>& detections_per_frame,
    std::vector<RadioMeasurement> radio, const WindowConfig& cfg);

}  // namespace ravel
