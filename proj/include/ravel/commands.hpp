#pragma once

#include "ravel/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ravel {

// Command implementations behind the CLI, callable from tests. Each writes
// its outputs plus a manifest.json into the output directory and returns a
// process exit code.

struct CommonOptions {
  std::string config_path;                 // empty -> defaults
  std::vector<std::string> overrides;      // "key=value"
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const CommonOptions& opts);

struct TrackOptions {
  CommonOptions common;
  std::string detections_path;
  std::string rssi_path;          // ignored (with a warning) in vision mode
  std::string basestations_path;  // required in ravel mode
  std::string mode = "ravel";     // ravel|vision
  std::optional<int> window_frames;
  std::optional<int> stride;  // default: window size (non-overlapping)
  std::optional<std::string> init_hint;  // "frame:x:y", vision mode only
};

int cmd_track(const TrackOptions& opts);

struct EvalOptions {
  CommonOptions common;
  std::vector<std::string> est_paths;  // trajectory_*.jsonl, window order
  std::string truth_path;
  int walker = 0;
  std::optional<int> stride;  // default: window size
};

int cmd_eval(const EvalOptions& opts);

struct SweepOptions {
  CommonOptions common;
  std::string kind;  // window_size|rssi_rate|model_grid
  std::vector<double> values;
  int seeds = 20;
};

int cmd_sweep(const SweepOptions& opts);

int cmd_config_print_defaults();

AppConfig load_effective_config(const CommonOptions& opts);

}  // namespace ravel
