#include "ravel/commands.hpp"
#include "ravel/config.hpp"
#include "ravel/io.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ravel;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ravel_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ostringstream os;
  os << std::ifstream(p).rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config entries apply, validate and report the offending key") {
  AppConfig cfg;
  apply_config_entry(cfg, "filter.p_v", "0.97");
  CHECK(cfg.tracker.filter.p_v == doctest::Approx(0.97));
  apply_config_entry(cfg, "scene.walkers", "3");
  CHECK(cfg.scene.walkers == 3);
  apply_config_entry(cfg, "scene.exit_entry", "true");
  CHECK(cfg.scene.exit_entry);

  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "filters.p_v", "0.9"),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "filter.p_v", "1.5"),
                       doctest::Contains("filter.p_v"), ConfigError);
  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "scene.walkers", "abc"),
                       doctest::Contains("scene.walkers"), ConfigError);
}

TEST_CASE("config files parse with comments and report line numbers") {
  const fs::path dir = fresh_dir("cfg");
  const fs::path good = dir / "good.conf";
  std::ofstream(good) << "# sample config\n"
                         "window.size_frames = 30\n"
                         "\n"
                         "filter.p_v = 0.95  # inline comment\n"
                         "scene.preset = crossing\n";
  const AppConfig cfg = parse_config_file(good.string());
  CHECK(cfg.tracker.window.window_size_frames == 30);
  CHECK(cfg.tracker.filter.p_v == doctest::Approx(0.95));
  CHECK(cfg.scene_preset == "crossing");

  const fs::path bad = dir / "bad.conf";
  std::ofstream(bad) << "window.size_frames = 30\n"
                        "tracklet.q_threshold = -1\n";
  CHECK_THROWS_WITH(parse_config_file(bad.string()), doctest::Contains(":2:"));
  CHECK_THROWS_WITH(parse_config_file((dir / "missing.conf").string()),
                    doctest::Contains("cannot open"));
}

TEST_CASE("dump/parse round trip preserves the digest") {
  AppConfig cfg;
  apply_config_entry(cfg, "tree.max_gap_distance", "7.5");
  apply_config_entry(cfg, "scene.seed", "99");
  const fs::path dir = fresh_dir("digest");
  const fs::path file = dir / "echo.conf";
  std::ofstream(file) << dump_config(cfg);
  const AppConfig back = parse_config_file(file.string());
  CHECK(config_digest(back) == config_digest(cfg));
  CHECK(config_digest(back) != config_digest(AppConfig{}));
  CHECK(config_digest(cfg).size() == 16);
}

TEST_CASE("preset resolution produces the scripted scenes") {
  AppConfig cfg;
  apply_config_entry(cfg, "scene.preset", "exit_reenter");
  apply_config_entry(cfg, "scene.seed", "4");
  const SceneConfig scene = resolve_scene(cfg);
  CHECK(scene.walkers == 4);
  CHECK(scene.scripted.size() == 4);
  CHECK(scene.seed == 4);
  CHECK_THROWS_AS(apply_config_entry(cfg, "scene.preset", "wat"), ConfigError);
}

TEST_CASE("trajectory jsonl round trip keeps absent frames absent") {
  const fs::path dir = fresh_dir("traj");
  std::vector<std::optional<Point2>> traj = {Point2(1.5, 2.5), std::nullopt,
                                             Point2(3.0, 4.0)};
  std::vector<DetectionKind> kinds = {DetectionKind::Camera,
                                      DetectionKind::Empty,
                                      DetectionKind::Synthetic};
  const std::string path = (dir / "trajectory_000.jsonl").string();
  write_trajectory_jsonl(path, traj, kinds);
  const auto back = read_trajectory_jsonl(path);
  REQUIRE(back.size() == 3);
  CHECK(back[0].frame == 1);
  REQUIRE(back[0].position.has_value());
  CHECK(back[0].position->x() == doctest::Approx(1.5));
  CHECK(back[0].kind == DetectionKind::Camera);
  CHECK_FALSE(back[1].position.has_value());
  CHECK(back[1].kind == DetectionKind::Empty);
  CHECK(back[2].kind == DetectionKind::Synthetic);
}

TEST_CASE("model json round trip") {
  const fs::path dir = fresh_dir("model");
  const std::string path = (dir / "model.json").string();
  write_model_json(path, {-62.5, 2.4, 3.5});
  const RadioModel m = read_model_json(path);
  CHECK(m.p0 == doctest::Approx(-62.5));
  CHECK(m.n == doctest::Approx(2.4));
  CHECK(m.sigma == doctest::Approx(3.5));
}

TEST_CASE("simulate command writes a deterministic dataset with a manifest") {
  CommonOptions a, b;
  a.out_dir = fresh_dir("sim_a").string();
  b.out_dir = fresh_dir("sim_b").string();
  a.overrides = b.overrides = {"scene.duration_frames=30", "scene.walkers=2"};
  a.seed = b.seed = 5;
  REQUIRE(cmd_simulate(a) == 0);
  REQUIRE(cmd_simulate(b) == 0);

  for (const char* name : {"ground_truth.jsonl", "detections.jsonl",
                           "rssi_0.jsonl", "basestations.json",
                           "scene_config.txt", "manifest.json"})
    CHECK(fs::exists(fs::path(a.out_dir) / name));

  // Same seed, byte-identical data files.
  for (const char* name :
       {"ground_truth.jsonl", "detections.jsonl", "rssi_0.jsonl"})
    CHECK(slurp(fs::path(a.out_dir) / name) ==
          slurp(fs::path(b.out_dir) / name));

  const auto manifest =
      nlohmann::json::parse(slurp(fs::path(a.out_dir) / "manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["seeds"] == nlohmann::json::array({5}));
  CHECK(manifest["outputs"].size() == 5);
  CHECK(manifest["config_digest"].get<std::string>().size() == 16);
  CHECK(manifest.contains("wall_clock_ms"));
}

TEST_CASE("track and eval commands run end to end on a simulated scene") {
  CommonOptions sim;
  sim.out_dir = fresh_dir("e2e_sim").string();
  sim.overrides = {"scene.duration_frames=30", "scene.walkers=2",
                   "scene.pause_prob=0"};
  sim.seed = 11;
  REQUIRE(cmd_simulate(sim) == 0);

  TrackOptions track;
  track.common.out_dir = fresh_dir("e2e_track").string();
  track.common.seed = 11;
  track.detections_path = (fs::path(sim.out_dir) / "detections.jsonl").string();
  track.rssi_path = (fs::path(sim.out_dir) / "rssi_0.jsonl").string();
  track.basestations_path =
      (fs::path(sim.out_dir) / "basestations.json").string();
  track.mode = "ravel";
  track.window_frames = 30;
  REQUIRE(cmd_track(track) == 0);
  CHECK(fs::exists(fs::path(track.common.out_dir) / "trajectory_000.jsonl"));
  const auto diags = nlohmann::json::parse(
      slurp(fs::path(track.common.out_dir) / "diagnostics.json"));
  REQUIRE(diags.is_array());
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].contains("learned_model"));

  SUBCASE("ravel mode requires basestations") {
    TrackOptions broken = track;
    broken.common.out_dir = fresh_dir("e2e_broken").string();
    broken.basestations_path.clear();
    CHECK_THROWS_WITH(cmd_track(broken), doctest::Contains("basestations"));
  }

  SUBCASE("eval reports metrics against the ground truth") {
    EvalOptions eval;
    eval.common.out_dir = fresh_dir("e2e_eval").string();
    eval.est_paths = {
        (fs::path(track.common.out_dir) / "trajectory_000.jsonl").string()};
    eval.truth_path = (fs::path(sim.out_dir) / "ground_truth.jsonl").string();
    eval.walker = 0;
    REQUIRE(cmd_eval(eval) == 0);
    const auto report = nlohmann::json::parse(
        slurp(fs::path(eval.common.out_dir) / "metrics.json"));
    CHECK(report["windows"] == 1);
    CHECK(report.contains("mean_overlap_error"));
    if (report.contains("mean_offline_error_m")) {
      CHECK(fs::exists(fs::path(eval.common.out_dir) / "offline_error_cdf.csv"));
      const std::string csv =
          slurp(fs::path(eval.common.out_dir) / "offline_error_cdf.csv");
      CHECK(csv.rfind("error_m,cdf", 0) == 0);
    }
  }

  SUBCASE("vision mode tracks without radio inputs") {
    TrackOptions vision = track;
    vision.common.out_dir = fresh_dir("e2e_vision").string();
    vision.mode = "vision";
    vision.basestations_path.clear();
    vision.rssi_path.clear();
    vision.init_hint = "1:5.0:6.0";
    REQUIRE(cmd_track(vision) == 0);
    CHECK(fs::exists(fs::path(vision.common.out_dir) / "trajectory_000.jsonl"));
  }
}
