#include "ravel/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace ravel {

std::vector<ScoredHypothesis> score_all(
    const std::vector<Hypothesis>& hypotheses,
    const std::vector<RadioMeasurement>& radio,
    const std::vector<Basestation>& basestations,
    const std::vector<RadioModel>& models, const TrackerConfig& cfg) {
  if (hypotheses.empty())
    throw std::invalid_argument("score_all: no hypotheses");

  std::map<std::string, Point2> bs_pos;
  for (const Basestation& b : basestations) bs_pos[b.id] = b.position;

  std::vector<ScoredHypothesis> scored;
  scored.reserve(hypotheses.size() * models.size());
  for (std::size_t h = 0; h < hypotheses.size(); ++h) {
    FilterRun run = run_hypothesis_filter(hypotheses[h], cfg.window, cfg.filter);
    const auto trajectory =
        std::make_shared<const std::vector<std::optional<Point2>>>(
            std::move(run.trajectory));

    // The Gaussian sum is quadratic in (P0, n): one pass over the samples
    // collects sufficient statistics, and every grid model is then scored
    // in constant time. g = -10 log10(d) so that expected = P0 + n*g.
    double count = 0, sg = 0, sgg = 0, sr = 0, srg = 0, srr = 0;
    for (const RadioMeasurement& m : radio) {
      const int idx = m.frame - 1;
      if (idx < 0 || idx >= static_cast<int>(trajectory->size())) continue;
      if (!(*trajectory)[idx]) continue;
      const auto it = bs_pos.find(m.basestation_id);
      if (it == bs_pos.end())
        throw std::runtime_error("unknown basestation: " + m.basestation_id);
      const double d =
          std::max(((*trajectory)[idx].value() - it->second).norm(), 0.1);
      const double g = -10.0 * std::log10(d);
      count += 1;
      sg += g;
      sgg += g * g;
      sr += m.rssi;
      srg += m.rssi * g;
      srr += m.rssi * m.rssi;
    }

    for (const RadioModel& model : models) {
      const double residual_sq =
          srr - 2.0 * model.p0 * sr - 2.0 * model.n * srg +
          model.p0 * model.p0 * count + 2.0 * model.p0 * model.n * sg +
          model.n * model.n * sgg;
      const double log_norm =
          -std::log(model.sigma * std::sqrt(2.0 * std::numbers::pi));
      const double sum = count * log_norm -
                         residual_sq / (2.0 * model.sigma * model.sigma);

      ScoredHypothesis s;
      s.hypothesis_index = static_cast<int>(h);
      s.hypothesis = &hypotheses[h];
      s.trajectory = trajectory;
      s.visual_score = run.visual_score;
      s.radio_score = sum / run.nonempty_count + log_prior(model, cfg.prior);
      s.total = s.visual_score + s.radio_score;
      s.model = model;
      scored.push_back(std::move(s));
    }
  }
  return scored;
}

const ScoredHypothesis& select_best(
    const std::vector<ScoredHypothesis>& scored) {
  if (scored.empty()) throw std::invalid_argument("select_best: empty list");
  const ScoredHypothesis* best = &scored.front();
  for (const ScoredHypothesis& s : scored) {
    if (s.total > best->total) {
      best = &s;
    } else if (s.total == best->total && &s != best) {
      const int sc = s.hypothesis->camera_count();
      const int bc = best->hypothesis->camera_count();
      if (sc > bc || (sc == bc && s.hypothesis_index < best->hypothesis_index))
        best = &s;
    }
  }
  return *best;
}

namespace {

TrackResult result_from_best(const ScoredHypothesis& best,
                             const TrackDiagnostics& base_diag) {
  TrackResult out;
  out.trajectory = *best.trajectory;
  out.kinds.reserve(best.hypothesis->detections.size());
  for (const Detection& d : best.hypothesis->detections)
    out.kinds.push_back(d.kind);
  out.diagnostics = base_diag;
  out.diagnostics.learned_model = best.model;
  out.diagnostics.best_total = best.total;
  out.diagnostics.best_visual = best.visual_score;
  out.diagnostics.best_radio = best.radio_score;
  out.diagnostics.best_source_path = best.hypothesis->source_path;
  return out;
}

TrackResult empty_result(const TrackerConfig& cfg, TrackDiagnostics diag) {
  TrackResult out;
  diag.no_tracklets = true;
  out.trajectory.assign(cfg.window.window_size_frames, std::nullopt);
  out.kinds.assign(cfg.window.window_size_frames, DetectionKind::Empty);
  out.diagnostics = diag;
  return out;
}

}  // namespace

TrackResult track_window_ravel(const WindowBundle& bundle,
                               const std::vector<Basestation>& basestations,
                               const TrackerConfig& cfg) {
  TrackDiagnostics diag;
  const auto tracklets = generate_tracklets(bundle, cfg.tracklet);
  diag.tracklet_count = static_cast<int>(tracklets.size());
  const auto roots = build_trees(tracklets, cfg.fov, cfg.tree);
  const HypothesisSet hyps =
      enumerate_hypotheses(roots, tracklets, cfg.fov,
                           cfg.window.window_size_frames, cfg.tree,
                           cfg.max_hypotheses);
  diag.hypothesis_count = static_cast<int>(hyps.hypotheses.size());
  diag.truncated = hyps.truncated;
  if (hyps.hypotheses.empty()) return empty_result(cfg, diag);

  const auto models = model_grid(cfg.prior, cfg.sigma);
  const auto scored =
      score_all(hyps.hypotheses, bundle.radio, basestations, models, cfg);
  return result_from_best(select_best(scored), diag);
}

TrackResult track_window_vision_only(const WindowBundle& bundle,
                                     const TrackerConfig& cfg,
                                     const std::optional<InitHint>& hint) {
  TrackDiagnostics diag;
  const auto tracklets = generate_tracklets(bundle, cfg.tracklet);
  diag.tracklet_count = static_cast<int>(tracklets.size());
  const auto roots = build_trees(tracklets, cfg.fov, cfg.tree);
  HypothesisSet hyps =
      enumerate_hypotheses(roots, tracklets, cfg.fov,
                           cfg.window.window_size_frames, cfg.tree,
                           cfg.max_hypotheses);
  diag.truncated = hyps.truncated;

  if (hint) {
    std::vector<Hypothesis> kept;
    for (Hypothesis& h : hyps.hypotheses) {
      for (const Detection& d : h.detections) {
        if (d.kind != DetectionKind::Camera) continue;
        if (d.frame == hint->frame &&
            (*d.position - hint->position).norm() <= hint->tolerance)
          kept.push_back(std::move(h));
        break;  // only the first camera detection is checked
      }
    }
    hyps.hypotheses = std::move(kept);
  }
  diag.hypothesis_count = static_cast<int>(hyps.hypotheses.size());
  if (hyps.hypotheses.empty()) return empty_result(cfg, diag);

  const std::vector<RadioModel> no_model = {
      {cfg.prior.p0_mode, cfg.prior.n_mode, cfg.sigma}};  // radio sum is zero
  const auto scored = score_all(hyps.hypotheses, /*radio=*/{},
                                /*basestations=*/{}, no_model, cfg);
  // At a fixed model the prior is a constant shift and cannot change the
  // argmax; selection is effectively by visual score alone.
  return result_from_best(select_best(scored), diag);
}

std::vector<std::optional<Point2>> track_online(
    const std::vector<WindowBundle>& windows,
    const std::vector<Basestation>& basestations, const TrackerConfig& cfg) {
  std::vector<std::optional<Point2>> out;
  out.reserve(windows.size());
  for (const WindowBundle& w : windows) {
    const TrackResult r = track_window_ravel(w, basestations, cfg);
    out.push_back(r.trajectory.empty() ? std::nullopt : r.trajectory.back());
  }
  return out;
}

}  // namespace ravel
