#include "ravel/tracklet.hpp"

#include <algorithm>
#include <cmath>

namespace ravel {

double direction_cost(const Point2& c_i, const Point2& c_i1,
                      const Point2& c_i2) {
  const Point2 u = c_i1 - c_i;
  const Point2 v = c_i2 - c_i1;
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw DegenerateStepError();
  return 1.0 - u.dot(v) / (nu * nv);
}

double speed_cost(const Point2& c_i, const Point2& c_i1, const Point2& c_i2) {
  const double a = (c_i1 - c_i).norm();
  const double b = (c_i2 - c_i1).norm();
  if (a == 0.0 && b == 0.0) throw DegenerateStepError();
  return 1.0 - 2.0 * std::sqrt(a * b) / (a + b);
}

double motion_cost(const Point2& c_i, const Point2& c_i1, const Point2& c_i2,
                   const TrackletGenConfig& cfg) {
  return cfg.w_d * direction_cost(c_i, c_i1, c_i2) +
         cfg.w_s * speed_cost(c_i, c_i1, c_i2);
}

namespace {

struct OpenTracklet {
  int creation_order;
  std::vector<Detection> detections;
};

}  // namespace

std::vector<Tracklet> generate_tracklets(const WindowBundle& bundle,
                                         const TrackletGenConfig& cfg) {
  std::vector<OpenTracklet> open;
  std::vector<OpenTracklet> closed;
  int next_order = 0;

  const int W = bundle.window_size();
  for (int frame = 1; frame <= W; ++frame) {
    const auto& dets = bundle.frames[frame - 1];
    std::vector<bool> claimed(dets.size(), false);

    std::vector<OpenTracklet> still_open;
    for (OpenTracklet& t : open) {
      const Point2& last = *t.detections.back().position;
      const bool pair_rule =
          t.detections.size() == 1 ||
          (last - *t.detections[t.detections.size() - 2].position).norm() == 0.0;

      int candidate = -1;
      int candidate_count = 0;
      for (std::size_t j = 0; j < dets.size(); ++j) {
        const Point2& p = *dets[j].position;
        if ((p - last).norm() >= cfg.max_displacement_dt) continue;
        if (!pair_rule) {
          const Point2& prev = *t.detections[t.detections.size() - 2].position;
          // A zero-length candidate step after a moving step has no defined
          // direction cost; such detections cannot extend the tracklet.
          double q;
          try {
            q = motion_cost(prev, last, p, cfg);
          } catch (const DegenerateStepError&) {
            continue;
          }
          if (q >= cfg.q_threshold) continue;
        }
        candidate = static_cast<int>(j);
        ++candidate_count;
      }

      if (candidate_count == 1 && !claimed[candidate]) {
        claimed[candidate] = true;
        t.detections.push_back(dets[candidate]);
        still_open.push_back(std::move(t));
      } else {
        closed.push_back(std::move(t));
      }
    }
    open = std::move(still_open);

    for (std::size_t j = 0; j < dets.size(); ++j) {
      if (!claimed[j]) open.push_back({next_order++, {dets[j]}});
    }
  }
  for (OpenTracklet& t : open) closed.push_back(std::move(t));

  std::sort(closed.begin(), closed.end(),
            [](const OpenTracklet& a, const OpenTracklet& b) {
              return a.creation_order < b.creation_order;
            });

  std::vector<Tracklet> out;
  out.reserve(closed.size());
  for (std::size_t k = 0; k < closed.size(); ++k) {
    out.push_back({"t" + std::to_string(k), std::move(closed[k].detections)});
  }
  return out;
}

}  // namespace ravel
