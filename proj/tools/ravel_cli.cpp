#include "ravel/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, ravel::CommonOptions& common,
                std::uint64_t& seed_value, bool& seed_set) {
  cmd->add_option("--config", common.config_path, "Config file (key = value)");
  cmd->add_option("--set", common.overrides,
                  "Override a config entry, key=value (repeatable)");
  cmd->add_option("--out", common.out_dir, "Output directory")->required();
  cmd->add_option("--seed", seed_value, "Scene seed")
      ->each([&seed_set](const std::string&) { seed_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RAVEL: radio-aided multi-hypothesis pedestrian tracking"};
  app.require_subcommand(1);

  ravel::CommonOptions common;
  std::uint64_t seed_value = 0;
  bool seed_set = false;

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic scene");
  add_common(simulate, common, seed_value, seed_set);

  ravel::TrackOptions track_opts;
  auto* track = app.add_subcommand("track", "Track one user across windows");
  add_common(track, track_opts.common, seed_value, seed_set);
  track->add_option("--detections", track_opts.detections_path)->required();
  track->add_option("--rssi", track_opts.rssi_path);
  track->add_option("--basestations", track_opts.basestations_path);
  track->add_option("--mode", track_opts.mode, "ravel|vision");
  int window_frames = 0, stride = 0;
  track->add_option("--window-frames", window_frames)
      ->each([&](const std::string&) { track_opts.window_frames = window_frames; });
  track->add_option("--stride", stride)
      ->each([&](const std::string&) { track_opts.stride = stride; });
  std::string init_hint;
  track->add_option("--init-hint", init_hint, "frame:x:y, vision mode")
      ->each([&](const std::string&) { track_opts.init_hint = init_hint; });

  ravel::EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Score trajectories against truth");
  add_common(eval, eval_opts.common, seed_value, seed_set);
  eval->add_option("--est", eval_opts.est_paths, "Trajectory JSONL files")
      ->required();
  eval->add_option("--truth", eval_opts.truth_path)->required();
  eval->add_option("--walker", eval_opts.walker);
  int eval_stride = 0;
  eval->add_option("--stride", eval_stride)
      ->each([&](const std::string&) { eval_opts.stride = eval_stride; });

  ravel::SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep experiments");
  add_common(sweep, sweep_opts.common, seed_value, seed_set);
  sweep->add_option("--kind", sweep_opts.kind, "window_size|rssi_rate|model_grid")
      ->required();
  sweep->add_option("--values", sweep_opts.values);
  sweep->add_option("--seeds", sweep_opts.seeds);

  auto* config = app.add_subcommand("config", "Config utilities");
  bool print_defaults = false;
  config->add_flag("--print-defaults", print_defaults);

  CLI11_PARSE(app, argc, argv);

  try {
    if (seed_set) {
      common.seed = seed_value;
      track_opts.common.seed = seed_value;
      eval_opts.common.seed = seed_value;
      sweep_opts.common.seed = seed_value;
    }
    if (simulate->parsed()) return ravel::cmd_simulate(common);
    if (track->parsed()) return ravel::cmd_track(track_opts);
    if (eval->parsed()) return ravel::cmd_eval(eval_opts);
    if (sweep->parsed()) return ravel::cmd_sweep(sweep_opts);
    if (config->parsed()) {
      if (print_defaults) return ravel::cmd_config_print_defaults();
      std::cerr << "config: nothing to do (try --print-defaults)\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
