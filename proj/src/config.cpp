#include "ravel/config.hpp"

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ravel {

namespace {

struct Entry {
  std::function<std::string(const AppConfig&)> get;
  std::function<void(AppConfig&, const std::string&)> set;
};

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const long v = std::stol(s, &pos);
  if (pos != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

Entry dbl(std::function<double&(AppConfig&)> ref, double lo, double hi) {
  return {[ref](const AppConfig& c) {
            return fmt(ref(const_cast<AppConfig&>(c)));
          },
          [ref, lo, hi](AppConfig& c, const std::string& s) {
            const double v = parse_double(s);
            if (v < lo || v > hi)
              throw ConfigError("value " + s + " out of range [" + fmt(lo) +
                                ", " + fmt(hi) + "]");
            ref(c) = v;
          }};
}

Entry integer(std::function<int&(AppConfig&)> ref, int lo, int hi) {
  return {[ref](const AppConfig& c) {
            return std::to_string(ref(const_cast<AppConfig&>(c)));
          },
          [ref, lo, hi](AppConfig& c, const std::string& s) {
            const int v = parse_int(s);
            if (v < lo || v > hi)
              throw ConfigError("value " + s + " out of range");
            ref(c) = v;
          }};
}

Entry boolean(std::function<bool&(AppConfig&)> ref) {
  return {[ref](const AppConfig& c) {
            return ref(const_cast<AppConfig&>(c)) ? std::string("true")
                                                  : std::string("false");
          },
          [ref](AppConfig& c, const std::string& s) { ref(c) = parse_bool(s); }};
}

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> reg = [] {
    std::map<std::string, Entry> r;
    const double inf = 1e18;
#define DBL(name, expr, lo, hi) \
  r[name] = dbl([](AppConfig& c) -> double& { return expr; }, lo, hi)
#define INT(name, expr, lo, hi) \
  r[name] = integer([](AppConfig& c) -> int& { return expr; }, lo, hi)
#define BOOL(name, expr) r[name] = boolean([](AppConfig& c) -> bool& { return expr; })

    INT("window.size_frames", c.tracker.window.window_size_frames, 2, 100000);
    DBL("window.fps", c.tracker.window.fps, 1e-6, inf);
    DBL("tracklet.max_displacement_dt", c.tracker.tracklet.max_displacement_dt, 0, inf);
    DBL("tracklet.w_d", c.tracker.tracklet.w_d, 0, inf);
    DBL("tracklet.w_s", c.tracker.tracklet.w_s, 0, inf);
    DBL("tracklet.q_threshold", c.tracker.tracklet.q_threshold, 1e-12, inf);
    INT("tree.start_frame_threshold", c.tracker.tree.start_frame_threshold, 0, 100000);
    INT("tree.max_gap_frames", c.tracker.tree.max_gap_frames, 0, 100000);
    DBL("tree.max_gap_distance", c.tracker.tree.max_gap_distance, 0, inf);
    DBL("tree.boundary_margin", c.tracker.tree.boundary_margin, 0, inf);
    DBL("tree.boundary_max_gap_distance",
        c.tracker.tree.boundary_max_gap_distance, 0, inf);
    INT("tree.max_tree_nodes", c.tracker.tree.max_tree_nodes, 1, 100000000);
    DBL("filter.process_noise_accel", c.tracker.filter.process_noise_accel, 1e-12, inf);
    DBL("filter.meas_noise_camera", c.tracker.filter.meas_noise_camera, 1e-12, inf);
    DBL("filter.meas_noise_synthetic", c.tracker.filter.meas_noise_synthetic, 1e-12, inf);
    DBL("filter.init_pos_std", c.tracker.filter.init_pos_std, 1e-12, inf);
    DBL("filter.init_vel_std", c.tracker.filter.init_vel_std, 1e-12, inf);
    DBL("filter.p_v", c.tracker.filter.p_v, 1e-9, 1.0 - 1e-9);
    DBL("prior.p0_mode", c.tracker.prior.p0_mode, -inf, inf);
    DBL("prior.p0_halfwidth", c.tracker.prior.p0_halfwidth, 1e-12, inf);
    DBL("prior.n_mode", c.tracker.prior.n_mode, -inf, inf);
    DBL("prior.n_halfwidth", c.tracker.prior.n_halfwidth, 1e-12, inf);
    DBL("prior.grid_step_p0", c.tracker.prior.grid_step_p0, 1e-12, inf);
    DBL("prior.grid_step_n", c.tracker.prior.grid_step_n, 1e-12, inf);
    DBL("radio.sigma", c.tracker.sigma, 1e-12, inf);
    DBL("fov.x_min", c.tracker.fov.x_min, -inf, inf);
    DBL("fov.y_min", c.tracker.fov.y_min, -inf, inf);
    DBL("fov.x_max", c.tracker.fov.x_max, -inf, inf);
    DBL("fov.y_max", c.tracker.fov.y_max, -inf, inf);
    INT("search.max_hypotheses", c.tracker.max_hypotheses, 1, 100000000);

    INT("scene.duration_frames", c.scene.duration_frames, 2, 1000000);
    DBL("scene.fps", c.scene.fps, 1e-6, inf);
    INT("scene.walkers", c.scene.walkers, 1, 10000);
    DBL("scene.speed_min", c.scene.speed_min, 0, inf);
    DBL("scene.speed_max", c.scene.speed_max, 0, inf);
    DBL("scene.pause_prob", c.scene.pause_prob, 0, 1);
    BOOL("scene.exit_entry", c.scene.exit_entry);
    DBL("scene.detect_miss_prob", c.scene.detect_miss_prob, 0, 1);
    DBL("scene.split_prob", c.scene.split_prob, 0, 1);
    DBL("scene.merge_distance", c.scene.merge_distance, 0, inf);
    DBL("scene.false_positive_rate", c.scene.false_positive_rate, 0, inf);
    DBL("scene.detection_noise_std", c.scene.detection_noise_std, 0, inf);
    DBL("scene.radio_p0", c.scene.radio_model.p0, -inf, inf);
    DBL("scene.radio_n", c.scene.radio_model.n, 1e-12, inf);
    DBL("scene.radio_sigma", c.scene.radio_model.sigma, 1e-12, inf);
    DBL("scene.rssi_rate_hz", c.scene.rssi_rate_hz, 1e-6, inf);
    DBL("scene.fov_x_min", c.scene.fov.x_min, -inf, inf);
    DBL("scene.fov_y_min", c.scene.fov.y_min, -inf, inf);
    DBL("scene.fov_x_max", c.scene.fov.x_max, -inf, inf);
    DBL("scene.fov_y_max", c.scene.fov.y_max, -inf, inf);
#undef DBL
#undef INT
#undef BOOL
    r["scene.seed"] = {[](const AppConfig& c) { return std::to_string(c.scene.seed); },
                       [](AppConfig& c, const std::string& s) {
                         c.scene.seed = std::stoull(s);
                       }};
    r["scene.preset"] = {
        [](const AppConfig& c) { return c.scene_preset; },
        [](AppConfig& c, const std::string& s) {
          if (s != "none" && s != "crossing" && s != "exit_reenter" &&
              s != "stop_and_turn")
            throw ConfigError("unknown scene.preset '" + s + "'");
          c.scene_preset = s;
        }};
    return r;
  }();
  return reg;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_entry(AppConfig& cfg, const std::string& key,
                        const std::string& value) {
  const auto it = registry().find(key);
  if (it == registry().end()) throw ConfigError("unknown key '" + key + "'");
  try {
    it->second.set(cfg, value);
  } catch (const ConfigError& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  } catch (const std::exception&) {  // stoul/stod parse failures
    throw ConfigError("key '" + key + "': bad value '" + value + "'");
  }
}

AppConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  AppConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    try {
      apply_config_entry(cfg, trim(line.substr(0, eq)),
                         trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

std::string dump_config(const AppConfig& cfg) {
  std::ostringstream os;
  for (const auto& [key, entry] : registry())
    os << key << " = " << entry.get(cfg) << "\n";
  return os.str();
}

std::string config_digest(const AppConfig& cfg) {
  const std::string dump = dump_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

SceneConfig resolve_scene(const AppConfig& cfg) {
  if (cfg.scene_preset == "crossing") {
    SceneConfig s = make_crossing_scene(cfg.scene.seed);
    s.rssi_rate_hz = cfg.scene.rssi_rate_hz;
    return s;
  }
  if (cfg.scene_preset == "exit_reenter") {
    SceneConfig s = make_exit_reenter_scene(cfg.scene.seed);
    s.rssi_rate_hz = cfg.scene.rssi_rate_hz;
    return s;
  }
  if (cfg.scene_preset == "stop_and_turn") {
    SceneConfig s = make_stop_and_turn_scene(cfg.scene.seed);
    s.rssi_rate_hz = cfg.scene.rssi_rate_hz;
    return s;
  }
  return cfg.scene;
}

}  // namespace ravel
