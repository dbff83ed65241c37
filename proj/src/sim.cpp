#include "ravel/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ravel {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double gauss(Rng& rng, double std_dev) {
  return std::normal_distribution<double>(0.0, std_dev)(rng);
}

Point2 interpolate_script(const ScriptedWalker& w, int frame) {
  const auto& c = w.control;
  if (frame <= c.front().first) return c.front().second;
  if (frame >= c.back().first) return c.back().second;
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (frame <= c[k].first) {
      const double t = static_cast<double>(frame - c[k - 1].first) /
                       (c[k].first - c[k - 1].first);
      return c[k - 1].second + t * (c[k].second - c[k - 1].second);
    }
  }
  return c.back().second;
}

WalkerTruth random_walk(const SceneConfig& cfg, Rng& rng) {
  WalkerTruth truth;
  truth.positions.reserve(cfg.duration_frames);
  truth.in_fov.reserve(cfg.duration_frames);

  Point2 pos(uniform(rng, cfg.fov.x_min + 0.5, cfg.fov.x_max - 0.5),
             uniform(rng, cfg.fov.y_min + 0.5, cfg.fov.y_max - 0.5));
  Point2 waypoint = pos;
  Point2 last_dir = Point2::Zero();  // direction of travel, unit length
  double speed = uniform(rng, cfg.speed_min, cfg.speed_max);
  int pause_left = 0;
  int outside_dwell = 0;

  const auto pick_waypoint = [&] {
    speed = uniform(rng, cfg.speed_min, cfg.speed_max);
    if (cfg.exit_entry && cfg.fov.contains(pos) && uniform(rng, 0, 1) < 0.15) {
      // Head out through a random edge.
      const int edge = static_cast<int>(uniform(rng, 0, 4));
      const double margin = 2.0;
      switch (edge) {
        case 0: waypoint = {cfg.fov.x_min - margin, uniform(rng, cfg.fov.y_min, cfg.fov.y_max)}; break;
        case 1: waypoint = {cfg.fov.x_max + margin, uniform(rng, cfg.fov.y_min, cfg.fov.y_max)}; break;
        case 2: waypoint = {uniform(rng, cfg.fov.x_min, cfg.fov.x_max), cfg.fov.y_min - margin}; break;
        default: waypoint = {uniform(rng, cfg.fov.x_min, cfg.fov.x_max), cfg.fov.y_max + margin}; break;
      }
    } else {
      const double m = cfg.waypoint_margin;
      for (int attempt = 0; attempt < 32; ++attempt) {
        waypoint = {uniform(rng, cfg.fov.x_min + m, cfg.fov.x_max - m),
                    uniform(rng, cfg.fov.y_min + m, cfg.fov.y_max - m)};
        const Point2 next = waypoint - pos;
        if (last_dir.norm() < 1e-9 || next.norm() < 1e-9) break;
        const double cos_turn = last_dir.dot(next) / next.norm();
        if (cos_turn >= std::cos(cfg.max_turn_rad)) break;
        // Otherwise resample; after 32 tries keep the last candidate so
        // walkers boxed into a corner can still turn around.
      }
    }
  };
  pick_waypoint();

  for (int f = 1; f <= cfg.duration_frames; ++f) {
    if (pause_left > 0) {
      --pause_left;
    } else if (cfg.fov.contains(pos) && uniform(rng, 0, 1) < cfg.pause_prob) {
      pause_left = static_cast<int>(uniform(rng, 4, 12));
    } else {
      const double step = speed / cfg.fps;
      const Point2 to_wp = waypoint - pos;
      if (to_wp.norm() <= step) {
        pos = waypoint;
        if (!cfg.fov.contains(pos) && outside_dwell == 0) {
          outside_dwell = static_cast<int>(uniform(rng, 5, 15));
        } else {
          pick_waypoint();
        }
      } else {
        last_dir = to_wp.normalized();
        pos += step * last_dir;
      }
      if (outside_dwell > 0 && --outside_dwell == 0) pick_waypoint();
    }
    truth.positions.push_back(pos);
    truth.in_fov.push_back(cfg.fov.contains(pos));
  }
  return truth;
}

}  // namespace

std::vector<Basestation> default_corner_basestations(const FovRect& fov) {
  return {{"ap0", {fov.x_min, fov.y_min}},
          {"ap1", {fov.x_max, fov.y_min}},
          {"ap2", {fov.x_min, fov.y_max}},
          {"ap3", {fov.x_max, fov.y_max}}};
}

SceneData simulate(const SceneConfig& cfg_in) {
  SceneConfig cfg = cfg_in;
  if (cfg.basestations.empty())
    cfg.basestations = default_corner_basestations(cfg.fov);

  Rng rng(cfg.seed);
  SceneData scene;
  scene.config = cfg;

  // Trajectories.
  for (int w = 0; w < cfg.walkers; ++w) {
    if (w < static_cast<int>(cfg.scripted.size()) &&
        !cfg.scripted[w].control.empty()) {
      WalkerTruth truth;
      for (int f = 1; f <= cfg.duration_frames; ++f) {
        const Point2 p = interpolate_script(cfg.scripted[w], f);
        truth.positions.push_back(p);
        truth.in_fov.push_back(cfg.fov.contains(p));
      }
      scene.truth.push_back(std::move(truth));
    } else {
      scene.truth.push_back(random_walk(cfg, rng));
    }
  }

  // Camera detections: cluster in-FOV walkers by merge distance, then
  // apply miss/split noise per cluster plus Poisson false positives.
  scene.detections.resize(cfg.duration_frames);
  for (int f = 1; f <= cfg.duration_frames; ++f) {
    std::vector<int> in_fov_walkers;
    for (int w = 0; w < cfg.walkers; ++w)
      if (scene.truth[w].in_fov[f - 1]) in_fov_walkers.push_back(w);

    std::vector<int> cluster(in_fov_walkers.size());
    for (std::size_t i = 0; i < cluster.size(); ++i) cluster[i] = static_cast<int>(i);
    const auto find = [&](int i) {
      while (cluster[i] != i) i = cluster[i] = cluster[cluster[i]];
      return i;
    };
    for (std::size_t i = 0; i < in_fov_walkers.size(); ++i)
      for (std::size_t j = i + 1; j < in_fov_walkers.size(); ++j) {
        const Point2 a = scene.truth[in_fov_walkers[i]].positions[f - 1];
        const Point2 b = scene.truth[in_fov_walkers[j]].positions[f - 1];
        if ((a - b).norm() <= cfg.merge_distance)
          cluster[find(static_cast<int>(j))] = find(static_cast<int>(i));
      }

    auto& dets = scene.detections[f - 1];
    for (std::size_t i = 0; i < in_fov_walkers.size(); ++i) {
      if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
      Point2 centroid = Point2::Zero();
      int count = 0;
      for (std::size_t j = 0; j < in_fov_walkers.size(); ++j)
        if (find(static_cast<int>(j)) == static_cast<int>(i)) {
          centroid += scene.truth[in_fov_walkers[j]].positions[f - 1];
          ++count;
        }
      centroid /= count;

      if (uniform(rng, 0, 1) < cfg.detect_miss_prob) continue;
      const Point2 noisy = centroid + Point2(gauss(rng, cfg.detection_noise_std),
                                             gauss(rng, cfg.detection_noise_std));
      dets.push_back(Detection::camera(f, noisy));
      if (uniform(rng, 0, 1) < cfg.split_prob) {
        const double angle = uniform(rng, 0, 2.0 * std::numbers::pi);
        const Point2 offset(cfg.detection_noise_std * std::cos(angle),
                            cfg.detection_noise_std * std::sin(angle));
        dets.push_back(Detection::camera(f, noisy + offset));
      }
    }
    const int fp = std::poisson_distribution<int>(cfg.false_positive_rate)(rng);
    for (int k = 0; k < fp; ++k) {
      dets.push_back(Detection::camera(
          f, Point2(uniform(rng, cfg.fov.x_min, cfg.fov.x_max),
                    uniform(rng, cfg.fov.y_min, cfg.fov.y_max))));
    }
  }

  // RSSI for tracked walkers, from true positions (in or out of FOV).
  const int stride =
      std::max(1, static_cast<int>(std::llround(cfg.fps / cfg.rssi_rate_hz)));
  std::vector<int> tracked = cfg.tracked_walker_ids;
  std::sort(tracked.begin(), tracked.end());
  for (int w : tracked) {
    auto& samples = scene.radio[w];
    for (int f = 1; f <= cfg.duration_frames; f += stride) {
      const Point2& pos = scene.truth[w].positions[f - 1];
      for (const Basestation& bs : cfg.basestations) {
        const double rssi =
            expected_rss(cfg.radio_model, (pos - bs.position).norm()) +
            gauss(rng, cfg.radio_model.sigma);
        samples.push_back({f, bs.id, rssi});
      }
    }
  }
  return scene;
}

namespace {

double jitter(Rng& rng, double amplitude = 0.4) {
  return uniform(rng, -amplitude, amplitude);
}

SceneConfig preset_base(std::uint64_t seed) {
  SceneConfig cfg;
  cfg.duration_frames = 60;
  cfg.seed = seed;
  cfg.tracked_walker_ids = {0};
  cfg.detect_miss_prob = 0.03;
  cfg.split_prob = 0.02;
  cfg.false_positive_rate = 0.04;
  cfg.detection_noise_std = 0.06;
  return cfg;
}

}  // namespace

SceneConfig make_crossing_scene(std::uint64_t seed) {
  Rng rng(seed * 2654435761ULL + 17);
  SceneConfig cfg = preset_base(seed);
  cfg.walkers = 2;
  const Point2 center(5.5, 6.0);
  ScriptedWalker a, b;
  // Each walker turns at the meeting point, so the visually smooth
  // continuation (keeping a straight heading) is the *other* walker's path:
  // motion alone cannot recover the identity after the encounter.
  a.control = {{1, {2.0 + jitter(rng), 1.5 + jitter(rng)}},
               {30, center},
               {60, {9.0 + jitter(rng), 1.5 + jitter(rng)}}};
  b.control = {{1, {2.0 + jitter(rng), 10.5 + jitter(rng)}},
               {30, center},
               {60, {9.0 + jitter(rng), 10.5 + jitter(rng)}}};
  cfg.scripted = {a, b};
  return cfg;
}

SceneConfig make_exit_reenter_scene(std::uint64_t seed) {
  Rng rng(seed * 2654435761ULL + 71);
  SceneConfig cfg = preset_base(seed);
  cfg.duration_frames = 90;
  cfg.walkers = 4;
  // Mild shadowing: short-range line-of-sight links inside one hall.
  cfg.radio_model.sigma = 2.0;
  const double jy = jitter(rng, 0.3);
  // Tracked walker: browses the top gallery in a tight zigzag, exits left,
  // walks around outside, re-enters at the bottom and tours the right half.
  ScriptedWalker a;
  a.control = {{1, {9.2 + jitter(rng, 0.2), 7.4 + jy}},
               {4, {7.9, 7.0 + jy}},
               {7, {6.8, 7.9 + jy}},
               {10, {5.5, 7.5 + jy}},
               {13, {4.4, 8.4 + jy}},
               {16, {3.1, 8.0 + jy}},
               {19, {2.0, 8.9 + jy}},
               {22, {0.9, 8.5 + jy}},
               {25, {-0.4, 8.8}},
               {32, {-1.2, -0.5}},
               {39, {4.2 + jitter(rng, 0.2), 0.6}},
               {48, {8.2, 2.6 + jitter(rng, 0.2)}},
               {57, {10.2, 6.2 + jitter(rng, 0.2)}},
               {67, {10.0, 9.6 + jitter(rng, 0.2)}},
               {73, {8.2, 10.6 + jitter(rng, 0.2)}},
               {81, {4.8, 10.2 + jitter(rng, 0.2)}},
               {90, {1.6, 8.6}}};
  // Access points right next to the zigzag corners: the received power is
  // sharply position-dependent there, so the radio term separates hypotheses
  // that the camera data alone cannot.
  cfg.basestations = default_corner_basestations(cfg.fov);
  cfg.basestations.push_back({"ap4", {6.6, 8.5}});
  cfg.basestations.push_back({"ap5", {4.2, 7.8}});
  cfg.basestations.push_back({"ap6", {1.6, 8.4}});
  cfg.basestations.push_back({"ap7", {3.0, 0.8}});
  // Two decoys walk smooth straight lines: one enters from the right during
  // the absence, the second replaces it near the left edge.
  ScriptedWalker decoy_a;
  decoy_a.control = {{1, {12.6, 2.9 + jitter(rng, 0.3)}},
                     {29, {12.6, 2.9 + jitter(rng, 0.3)}},
                     {31, {10.9, 3.3 + jitter(rng, 0.2)}},
                     {53, {3.0, 9.8 + jitter(rng, 0.2)}},
                     {60, {-0.5, 10.3}},
                     {90, {-0.5, 10.3}}};
  ScriptedWalker decoy_b;
  decoy_b.control = {{1, {-0.6, 9.4}},
                     {62, {-0.6, 9.4}},
                     {90, {10.8, 5.6 + jitter(rng, 0.3)}}};
  ScriptedWalker confuser;  // brushes past the tracked walker, then leaves
  confuser.control = {{1, {6.8 + jitter(rng, 0.2), 10.6}},
                      {10, {5.3, 7.7 + jy}},
                      {18, {2.6, 10.2 + jitter(rng, 0.2)}},
                      {22, {2.4, 12.4}},
                      {90, {2.4, 12.4}}};
  cfg.scripted = {a, decoy_a, decoy_b, confuser};
  return cfg;
}

SceneConfig make_stop_and_turn_scene(std::uint64_t seed) {
  Rng rng(seed * 2654435761ULL + 131);
  SceneConfig cfg = preset_base(seed);
  cfg.walkers = 2;
  const double jy = jitter(rng, 0.3);
  const Point2 exhibit(6.0, 6.0 + jy);
  ScriptedWalker a;  // walk to the exhibit, pause, U-turn back
  a.control = {{1, {2.0 + jitter(rng, 0.3), 6.0 + jy}},
               {20, exhibit},
               {34, exhibit},
               {60, {1.5 + jitter(rng, 0.3), 6.3 + jy}}};
  ScriptedWalker confuser;  // passes the exhibit during the pause
  confuser.control = {{1, {10.0, 2.0 + jitter(rng, 0.3)}},
                      {27, exhibit + Point2(0.0, 0.35)},
                      {60, {2.0, 2.0 + jitter(rng, 0.3)}}};
  cfg.scripted = {a, confuser};
  return cfg;
}

}  // namespace ravel
