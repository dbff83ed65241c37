#include "ravel/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ravel {

const char* to_string(DetectionKind kind) {
  switch (kind) {
    case DetectionKind::Camera: return "camera";
    case DetectionKind::Synthetic: return "synthetic";
    case DetectionKind::Empty: return "empty";
  }
  return "?";
}

WindowBundle validate_window_inputs(
    const std::vector<std::vector<Detection>>& detections_per_frame,
    std::vector<RadioMeasurement> radio, const WindowConfig& cfg) {
  const int W = cfg.window_size_frames;
  if (W <= 1) throw ValidationError("window size must be > 1");
  if (cfg.fps <= 0.0) throw ValidationError("fps must be > 0");
  if (static_cast<int>(detections_per_frame.size()) > W)
    throw ValidationError("frame out of window: more frame slots than W");

  WindowBundle bundle;
  bundle.config = cfg;
  bundle.frames.resize(W);

  for (std::size_t slot = 0; slot < detections_per_frame.size(); ++slot) {
    for (const Detection& d : detections_per_frame[slot]) {
      if (d.frame < 1 || d.frame > W)
        throw ValidationError("frame out of window: frame " +
                              std::to_string(d.frame));
      if (d.kind == DetectionKind::Empty) {
        if (d.position) throw ValidationError("empty detection with position");
      } else {
        if (!d.position)
          throw ValidationError("non-empty detection without position");
        if (!std::isfinite(d.position->x()) || !std::isfinite(d.position->y()))
          throw ValidationError("non-finite detection coordinates");
      }
      bundle.frames[d.frame - 1].push_back(d);
    }
  }

  std::set<std::pair<int, std::string>> seen;
  for (const RadioMeasurement& m : radio) {
    if (m.frame < 1 || m.frame > W)
      throw ValidationError("frame out of window: radio frame " +
                            std::to_string(m.frame));
    if (!std::isfinite(m.rssi)) throw ValidationError("non-finite rssi");
    if (!seen.insert({m.frame, m.basestation_id}).second)
      throw ValidationError("duplicate radio sample: frame " +
                            std::to_string(m.frame) + ", ap " +
                            m.basestation_id);
  }
  std::stable_sort(radio.begin(), radio.end(),
                   [](const RadioMeasurement& a, const RadioMeasurement& b) {
                     return a.frame < b.frame;
                   });
  bundle.radio = std::move(radio);
  return bundle;
}

}  // namespace ravel
