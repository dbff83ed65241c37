#include "ravel/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace ravel {

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

// Parses one JSONL file, reporting the offending line on failure.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
}

}  // namespace

std::vector<Detection> read_detections_jsonl(const std::string& path) {
  std::vector<Detection> out;
  for_each_line(path, [&](const json& j) {
    out.push_back(Detection::camera(
        j.at("frame").get<int>(),
        Point2(j.at("x").get<double>(), j.at("y").get<double>())));
  });
  return out;
}

void write_detections_jsonl(const std::string& path,
                            const std::vector<std::vector<Detection>>& frames) {
  std::ofstream out = open_out(path);
  for (const auto& dets : frames)
    for (const Detection& d : dets) {
      if (d.kind != DetectionKind::Camera) continue;
      out << json{{"frame", d.frame}, {"x", d.position->x()}, {"y", d.position->y()}}
          << "\n";
    }
}

std::vector<RadioMeasurement> read_radio_jsonl(const std::string& path) {
  std::vector<RadioMeasurement> out;
  for_each_line(path, [&](const json& j) {
    out.push_back({j.at("frame").get<int>(), j.at("ap").get<std::string>(),
                   j.at("rssi").get<double>()});
  });
  return out;
}

void write_radio_jsonl(const std::string& path,
                       const std::vector<RadioMeasurement>& radio) {
  std::ofstream out = open_out(path);
  for (const RadioMeasurement& m : radio)
    out << json{{"frame", m.frame}, {"ap", m.basestation_id}, {"rssi", m.rssi}}
        << "\n";
}

std::vector<Basestation> read_basestations_jsonl(const std::string& path) {
  std::vector<Basestation> out;
  for_each_line(path, [&](const json& j) {
    out.push_back({j.at("ap").get<std::string>(),
                   Point2(j.at("x").get<double>(), j.at("y").get<double>())});
  });
  return out;
}

void write_basestations_jsonl(const std::string& path,
                              const std::vector<Basestation>& basestations) {
  std::ofstream out = open_out(path);
  for (const Basestation& b : basestations)
    out << json{{"ap", b.id}, {"x", b.position.x()}, {"y", b.position.y()}}
        << "\n";
}

void write_tracklets_jsonl(const std::string& path,
                           const std::vector<Tracklet>& tracklets) {
  std::ofstream out = open_out(path);
  for (const Tracklet& t : tracklets) {
    json frames = json::array(), xs = json::array(), ys = json::array();
    for (const Detection& d : t.detections) {
      frames.push_back(d.frame);
      xs.push_back(d.position->x());
      ys.push_back(d.position->y());
    }
    out << json{{"id", t.id}, {"frames", frames}, {"xs", xs}, {"ys", ys}}
        << "\n";
  }
}

std::vector<TrajectoryEntry> read_trajectory_jsonl(const std::string& path) {
  std::vector<TrajectoryEntry> out;
  for_each_line(path, [&](const json& j) {
    TrajectoryEntry e;
    e.frame = j.at("frame").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    e.kind = kind == "camera"      ? DetectionKind::Camera
             : kind == "synthetic" ? DetectionKind::Synthetic
                                   : DetectionKind::Empty;
    if (!j.at("x").is_null())
      e.position = Point2(j.at("x").get<double>(), j.at("y").get<double>());
    out.push_back(e);
  });
  return out;
}

void write_trajectory_jsonl(const std::string& path,
                            const std::vector<std::optional<Point2>>& trajectory,
                            const std::vector<DetectionKind>& kinds) {
  std::ofstream out = open_out(path);
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    json j{{"frame", static_cast<int>(i) + 1},
           {"kind", to_string(kinds[i])}};
    if (trajectory[i]) {
      j["x"] = trajectory[i]->x();
      j["y"] = trajectory[i]->y();
    } else {
      j["x"] = nullptr;
      j["y"] = nullptr;
    }
    out << j << "\n";
  }
}

RadioModel read_model_json(const std::string& path) {
  std::ifstream in = open_in(path);
  json j;
  in >> j;
  return {j.at("P0").get<double>(), j.at("n").get<double>(),
          j.at("sigma").get<double>()};
}

void write_model_json(const std::string& path, const RadioModel& model) {
  std::ofstream out = open_out(path);
  out << json{{"P0", model.p0}, {"n", model.n}, {"sigma", model.sigma}}.dump(2)
      << "\n";
}

std::vector<GroundTruthEntry> read_ground_truth_jsonl(const std::string& path) {
  std::vector<GroundTruthEntry> out;
  for_each_line(path, [&](const json& j) {
    out.push_back({j.at("walker").get<int>(), j.at("frame").get<int>(),
                   Point2(j.at("x").get<double>(), j.at("y").get<double>()),
                   j.at("in_fov").get<bool>()});
  });
  return out;
}

void write_ground_truth_jsonl(const std::string& path,
                              const std::vector<WalkerTruth>& truth) {
  std::ofstream out = open_out(path);
  for (std::size_t w = 0; w < truth.size(); ++w)
    for (std::size_t f = 0; f < truth[w].positions.size(); ++f)
      out << json{{"walker", static_cast<int>(w)},
                  {"frame", static_cast<int>(f) + 1},
                  {"x", truth[w].positions[f].x()},
                  {"y", truth[w].positions[f].y()},
                  {"in_fov", static_cast<bool>(truth[w].in_fov[f])}}
          << "\n";
}

void write_cdf_csv(const std::string& path, const CdfSeries& series) {
  std::ofstream out = open_out(path);
  out << "error_m,cdf\n";
  for (const CdfPoint& p : series.points)
    out << p.value << "," << p.cumulative_fraction << "\n";
}

}  // namespace ravel
