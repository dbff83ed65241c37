#pragma once

#include "ravel/metrics.hpp"
#include "ravel/radio.hpp"
#include "ravel/sim.hpp"
#include "ravel/tracklet.hpp"

#include <iosfwd>

namespace ravel {

// JSONL interchange, one object per line.
//   detections:   {"frame": int, "x": float, "y": float}
//   radio:        {"frame": int, "ap": string, "rssi": float}
//   basestations: {"ap": string, "x": float, "y": float}
//   tracklets:    {"id": string, "frames": [...], "xs": [...], "ys": [...]}
//   trajectory:   {"frame": int, "x": float|null, "y": float|null, "kind": ...}

std::vector<Detection> read_detections_jsonl(const std::string& path);
void write_detections_jsonl(const std::string& path,
                            const std::vector<std::vector<Detection>>& frames);

std::vector<RadioMeasurement> read_radio_jsonl(const std::string& path);
void write_radio_jsonl(const std::string& path,
                       const std::vector<RadioMeasurement>& radio);

std::vector<Basestation> read_basestations_jsonl(const std::string& path);
void write_basestations_jsonl(const std::string& path,
                              const std::vector<Basestation>& basestations);

void write_tracklets_jsonl(const std::string& path,
                           const std::vector<Tracklet>& tracklets);

struct TrajectoryEntry {
  FrameIndex frame = 1;
  std::optional<Point2> position;
  DetectionKind kind = DetectionKind::Empty;
};

std::vector<TrajectoryEntry> read_trajectory_jsonl(const std::string& path);
void write_trajectory_jsonl(const std::string& path,
                            const std::vector<std::optional<Point2>>& trajectory,
                            const std::vector<DetectionKind>& kinds);

RadioModel read_model_json(const std::string& path);
void write_model_json(const std::string& path, const RadioModel& model);

struct GroundTruthEntry {
  int walker = 0;
  FrameIndex frame = 1;
  Point2 position = Point2::Zero();
  bool in_fov = true;
};

std::vector<GroundTruthEntry> read_ground_truth_jsonl(const std::string& path);
void write_ground_truth_jsonl(const std::string& path,
                              const std::vector<WalkerTruth>& truth);

void write_cdf_csv(const std::string& path, const CdfSeries& series);

}  // namespace ravel
