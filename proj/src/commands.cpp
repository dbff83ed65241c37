#include "ravel/commands.hpp"

#include "ravel/experiments.hpp"
#include "ravel/io.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace ravel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "ravel 1.0.0";

class ManifestWriter {
 public:
  ManifestWriter(std::string command, const AppConfig& cfg,
                 const std::string& out_dir)
      : start_(std::chrono::steady_clock::now()), out_dir_(out_dir) {
    manifest_["command"] = std::move(command);
    manifest_["config_digest"] = config_digest(cfg);
    manifest_["tool_version"] = kToolVersion;
    manifest_["seeds"] = json::array();
    manifest_["inputs"] = json::array();
    manifest_["outputs"] = json::array();
  }

  void add_seed(std::uint64_t s) { manifest_["seeds"].push_back(s); }
  void add_input(const std::string& p) { manifest_["inputs"].push_back(p); }
  void add_output(const std::string& p) { manifest_["outputs"].push_back(p); }

  void finish() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    manifest_["wall_clock_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    std::ofstream out(fs::path(out_dir_) / "manifest.json");
    out << manifest_.dump(2) << "\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
  std::string out_dir_;
  json manifest_;
};

std::string out_path(const CommonOptions& opts, const std::string& name) {
  return (fs::path(opts.out_dir) / name).string();
}

json diagnostics_json(const TrackDiagnostics& d) {
  return {{"tracklet_count", d.tracklet_count},
          {"hypothesis_count", d.hypothesis_count},
          {"truncated", d.truncated},
          {"no_tracklets", d.no_tracklets},
          {"learned_model",
           {{"P0", d.learned_model.p0},
            {"n", d.learned_model.n},
            {"sigma", d.learned_model.sigma}}},
          {"best_total", d.best_total},
          {"best_visual", d.best_visual},
          {"best_radio", d.best_radio},
          {"best_source_path", d.best_source_path}};
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

}  // namespace

AppConfig load_effective_config(const CommonOptions& opts) {
  AppConfig cfg;
  if (!opts.config_path.empty()) cfg = parse_config_file(opts.config_path);
  for (const std::string& ov : opts.overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override must be key=value: '" + ov + "'");
    apply_config_entry(cfg, ov.substr(0, eq), ov.substr(eq + 1));
  }
  if (opts.seed) cfg.scene.seed = *opts.seed;
  return cfg;
}

int cmd_simulate(const CommonOptions& opts) {
  const AppConfig cfg = load_effective_config(opts);
  fs::create_directories(opts.out_dir);
  ManifestWriter manifest("simulate", cfg, opts.out_dir);

  const SceneConfig scene_cfg = resolve_scene(cfg);
  manifest.add_seed(scene_cfg.seed);
  const SceneData scene = simulate(scene_cfg);

  const std::string truth_path = out_path(opts, "ground_truth.jsonl");
  write_ground_truth_jsonl(truth_path, scene.truth);
  manifest.add_output(truth_path);

  const std::string det_path = out_path(opts, "detections.jsonl");
  write_detections_jsonl(det_path, scene.detections);
  manifest.add_output(det_path);

  for (const auto& [walker, radio] : scene.radio) {
    const std::string path =
        out_path(opts, "rssi_" + std::to_string(walker) + ".jsonl");
    write_radio_jsonl(path, radio);
    manifest.add_output(path);
  }

  const std::string bs_path = out_path(opts, "basestations.json");
  write_basestations_jsonl(bs_path, scene.config.basestations);
  manifest.add_output(bs_path);

  // Echo the effective config for reproducibility.
  AppConfig echoed = cfg;
  echoed.scene = scene.config;
  const std::string cfg_path = out_path(opts, "scene_config.txt");
  std::ofstream(cfg_path) << dump_config(echoed);
  manifest.add_output(cfg_path);

  manifest.finish();
  return 0;
}

int cmd_track(const TrackOptions& opts) {
  AppConfig cfg = load_effective_config(opts.common);
  if (opts.window_frames)
    cfg.tracker.window.window_size_frames = *opts.window_frames;
  const bool vision = opts.mode == "vision";
  if (!vision && opts.mode != "ravel")
    throw std::invalid_argument("mode must be ravel or vision");

  fs::create_directories(opts.common.out_dir);
  ManifestWriter manifest("track:" + opts.mode, cfg, opts.common.out_dir);
  manifest.add_input(opts.detections_path);

  std::vector<Basestation> basestations;
  std::vector<RadioMeasurement> radio;
  if (vision) {
    if (!opts.rssi_path.empty())
      std::cerr << "warning: vision mode ignores rssi input\n";
  } else {
    if (opts.basestations_path.empty())
      throw std::invalid_argument("ravel mode requires --basestations");
    basestations = read_basestations_jsonl(opts.basestations_path);
    manifest.add_input(opts.basestations_path);
    if (!opts.rssi_path.empty()) {
      radio = read_radio_jsonl(opts.rssi_path);
      manifest.add_input(opts.rssi_path);
    }
  }

  std::optional<InitHint> hint;
  if (opts.init_hint) {
    InitHint h;
    if (std::sscanf(opts.init_hint->c_str(), "%d:%lf:%lf", &h.frame,
                    &h.position.x(), &h.position.y()) != 3)
      throw std::invalid_argument("init hint must be frame:x:y");
    hint = h;
  }

  const std::vector<Detection> dets =
      read_detections_jsonl(opts.detections_path);
  int max_frame = 0;
  for (const Detection& d : dets) max_frame = std::max(max_frame, d.frame);
  std::vector<std::vector<Detection>> frames(max_frame);
  for (const Detection& d : dets) frames[d.frame - 1].push_back(d);

  const int stride =
      opts.stride.value_or(cfg.tracker.window.window_size_frames);
  const auto windows =
      make_windows(frames, radio, cfg.tracker.window, stride);

  json diag_list = json::array();
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const TrackResult result =
        vision ? track_window_vision_only(windows[w], cfg.tracker, hint)
               : track_window_ravel(windows[w], basestations, cfg.tracker);
    char name[64];
    std::snprintf(name, sizeof(name), "trajectory_%03zu.jsonl", w);
    const std::string path = out_path(opts.common, name);
    write_trajectory_jsonl(path, result.trajectory, result.kinds);
    manifest.add_output(path);
    json d = diagnostics_json(result.diagnostics);
    d["window"] = w;
    if (hint) d["init_hint"] = *opts.init_hint;
    diag_list.push_back(std::move(d));
  }

  const std::string diag_path = out_path(opts.common, "diagnostics.json");
  std::ofstream(diag_path) << diag_list.dump(2) << "\n";
  manifest.add_output(diag_path);
  manifest.finish();
  return 0;
}

int cmd_eval(const EvalOptions& opts) {
  const AppConfig cfg = load_effective_config(opts.common);
  fs::create_directories(opts.common.out_dir);
  ManifestWriter manifest("eval", cfg, opts.common.out_dir);
  manifest.add_input(opts.truth_path);

  const auto truth_entries = read_ground_truth_jsonl(opts.truth_path);
  std::vector<std::optional<Point2>> truth_full;
  for (const GroundTruthEntry& e : truth_entries) {
    if (e.walker != opts.walker) continue;
    if (static_cast<int>(truth_full.size()) < e.frame)
      truth_full.resize(e.frame);
    truth_full[e.frame - 1] = e.in_fov ? std::optional<Point2>(e.position)
                                       : std::nullopt;
  }

  std::vector<double> offline_errors, online_errors, overlaps;
  int undefined_offline = 0, undefined_online = 0, zero_overlap = 0;
  int window_count = 0;

  int start = 0;
  for (const std::string& est_path : opts.est_paths) {
    manifest.add_input(est_path);
    const auto entries = read_trajectory_jsonl(est_path);
    const int W = static_cast<int>(entries.size());
    SparseTrajectory est(W), truth(W);
    for (int f = 0; f < W; ++f) {
      est[f] = entries[f].position;
      if (start + f < static_cast<int>(truth_full.size()))
        truth[f] = truth_full[start + f];
    }
    const auto off = offline_location_error(est, truth);
    const auto on = online_location_error(est, truth);
    const auto ov = overlap_error(est, truth);
    if (off) offline_errors.push_back(*off); else ++undefined_offline;
    if (on) online_errors.push_back(*on); else ++undefined_online;
    overlaps.push_back(ov.overlap);
    if (ov.overlap == 0.0) ++zero_overlap;
    ++window_count;
    start += opts.stride.value_or(W);
  }

  json report{{"windows", window_count},
              {"undefined_offline_windows", undefined_offline},
              {"undefined_online_windows", undefined_online},
              {"zero_overlap_windows", zero_overlap},
              {"mean_overlap_error", mean(overlaps)}};
  if (!offline_errors.empty()) {
    const CdfSeries cdf = cdf_series(offline_errors);
    report["mean_offline_error_m"] = mean(offline_errors);
    report["median_offline_error_m"] = cdf.median;
    report["p90_offline_error_m"] = cdf.p90;
    const std::string cdf_path = out_path(opts.common, "offline_error_cdf.csv");
    write_cdf_csv(cdf_path, cdf);
    manifest.add_output(cdf_path);
  }
  if (!online_errors.empty())
    report["mean_online_error_m"] = mean(online_errors);

  const std::string report_path = out_path(opts.common, "metrics.json");
  std::ofstream(report_path) << report.dump(2) << "\n";
  manifest.add_output(report_path);
  manifest.finish();
  return 0;
}

int cmd_sweep(const SweepOptions& opts) {
  const AppConfig cfg = load_effective_config(opts.common);
  if (opts.values.empty()) throw std::invalid_argument("empty sweep range");
  fs::create_directories(opts.common.out_dir);
  ManifestWriter manifest("sweep:" + opts.kind, cfg, opts.common.out_dir);
  for (int s = 0; s < opts.seeds; ++s) manifest.add_seed(s + 1);

  if (opts.kind == "window_size" || opts.kind == "rssi_rate") {
    const std::string csv_path = out_path(opts.common, opts.kind + ".csv");
    std::ofstream csv(csv_path);
    csv << "algorithm," << opts.kind << ",mean_offline_error_m,stderr,n\n";
    for (double value : opts.values) {
      std::vector<double> ravel_errs, vision_errs;
      for (int s = 1; s <= opts.seeds; ++s) {
        const int duration = opts.kind == "window_size"
                                 ? static_cast<int>(value)
                                 : cfg.scene.duration_frames;
        const double rate =
            opts.kind == "rssi_rate" ? value : cfg.scene.rssi_rate_hz;
        const SceneData scene = simulate(standard_eval_scene(s, duration, rate));
        const TrackerConfig tracker = tracker_for_scene(scene.config);
        const auto ravel_out = evaluate_tracker(scene, 0, tracker, false);
        const auto vision_out = evaluate_tracker(
            scene, 0, tracker, true, first_detection_hint(scene, 0));
        if (ravel_out.offline_error)
          ravel_errs.push_back(*ravel_out.offline_error);
        if (vision_out.offline_error)
          vision_errs.push_back(*vision_out.offline_error);
      }
      const auto row = [&](const char* name, const std::vector<double>& e) {
        double m = mean(e), ss = 0;
        for (double x : e) ss += (x - m) * (x - m);
        const double se =
            e.size() > 1 ? std::sqrt(ss / (e.size() - 1) / e.size()) : 0.0;
        csv << name << "," << value << "," << m << "," << se << "," << e.size()
            << "\n";
      };
      row("ravel", ravel_errs);
      row("vision", vision_errs);
    }
    manifest.add_output(csv_path);
  } else if (opts.kind == "model_grid") {
    // Fitness surface L(best H; lambda) over the (P0, n) grid, averaged
    // over seeds.
    const std::string csv_path = out_path(opts.common, "model_grid.csv");
    const auto models = model_grid(cfg.tracker.prior, cfg.tracker.sigma);
    std::vector<double> fitness(models.size(), 0.0);
    for (int s = 1; s <= opts.seeds; ++s) {
      SceneConfig scene_cfg = resolve_scene(cfg);
      scene_cfg.seed = s;
      const SceneData scene = simulate(scene_cfg);
      const WindowBundle bundle = bundle_from_scene(scene, 0);
      TrackerConfig tracker = cfg.tracker;
      tracker.window.window_size_frames = scene.config.duration_frames;
      tracker.window.fps = scene.config.fps;
      tracker.fov = scene.config.fov;
      const auto tracklets = generate_tracklets(bundle, tracker.tracklet);
      const auto roots = build_trees(tracklets, tracker.fov, tracker.tree);
      const auto hyps = enumerate_hypotheses(
          roots, tracklets, tracker.fov, tracker.window.window_size_frames,
          tracker.tree, tracker.max_hypotheses);
      if (hyps.hypotheses.empty()) continue;
      const auto scored = score_all(hyps.hypotheses, bundle.radio,
                                    scene.config.basestations, models, tracker);
      // Per-model max over hypotheses, accumulated as a running mean over
      // seeds.
      std::vector<double> best(models.size(), -1e300);
      for (std::size_t i = 0; i < scored.size(); ++i)
        best[i % models.size()] =
            std::max(best[i % models.size()], scored[i].total);
      for (std::size_t m = 0; m < models.size(); ++m)
        fitness[m] += (best[m] - fitness[m]) / s;
    }
    std::ofstream csv(csv_path);
    csv << "P0,n,fitness\n";
    std::size_t argmax = 0;
    for (std::size_t m = 0; m < models.size(); ++m) {
      csv << models[m].p0 << "," << models[m].n << "," << fitness[m] << "\n";
      if (fitness[m] > fitness[argmax]) argmax = m;
    }
    std::ofstream(out_path(opts.common, "learned_model.json"))
        << nlohmann::json{{"P0", models[argmax].p0},
                          {"n", models[argmax].n},
                          {"sigma", models[argmax].sigma}}
               .dump(2)
        << "\n";
    manifest.add_output(csv_path);
    manifest.add_output(out_path(opts.common, "learned_model.json"));
  } else {
    throw std::invalid_argument("unknown sweep kind: " + opts.kind);
  }
  manifest.finish();
  return 0;
}

int cmd_config_print_defaults() {
  std::cout << dump_config(AppConfig{});
  return 0;
}

}  // namespace ravel
