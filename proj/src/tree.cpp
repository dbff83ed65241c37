#include "ravel/tree.hpp"

#include <algorithm>
#include <deque>

namespace ravel {

int Hypothesis::camera_count() const {
  int n = 0;
  for (const Detection& d : detections)
    if (d.kind == DetectionKind::Camera) ++n;
  return n;
}

bool is_boundary(const Point2& p, const FovRect& fov, double margin) {
  return p.x() - fov.x_min <= margin || fov.x_max - p.x() <= margin ||
         p.y() - fov.y_min <= margin || fov.y_max - p.y() <= margin;
}

std::vector<std::unique_ptr<TreeNode>> build_trees(
    const std::vector<Tracklet>& tracklets, const FovRect& fov,
    const TreeConfig& cfg) {
  // Successor lists shared by every tree.
  std::vector<std::vector<int>> links(tracklets.size());
  for (std::size_t i = 0; i < tracklets.size(); ++i) {
    const Tracklet& parent = tracklets[i];
    const bool parent_edge =
        is_boundary(parent.last_position(), fov, cfg.boundary_margin);
    for (std::size_t j = 0; j < tracklets.size(); ++j) {
      const Tracklet& child = tracklets[j];
      const int gap = child.start_frame() - parent.end_frame();
      if (gap < 1 || gap > cfg.max_gap_frames) continue;
      const bool both_edges =
          parent_edge &&
          is_boundary(child.first_position(), fov, cfg.boundary_margin);
      const double gate =
          both_edges ? std::max(cfg.max_gap_distance,
                                cfg.boundary_max_gap_distance)
                     : cfg.max_gap_distance;
      if ((child.first_position() - parent.last_position()).norm() > gate)
        continue;
      links[i].push_back(static_cast<int>(j));
    }
  }

  // Breadth-first growth under a shared node budget: distinct paths become
  // distinct nodes, which is exponential in dense windows, so deep levels
  // are dropped once the budget runs out.
  std::vector<std::unique_ptr<TreeNode>> roots;
  std::deque<TreeNode*> frontier;
  long budget = cfg.max_tree_nodes;
  for (std::size_t i = 0; i < tracklets.size(); ++i) {
    if (tracklets[i].start_frame() > cfg.start_frame_threshold) continue;
    if (budget <= 0) break;
    auto node = std::make_unique<TreeNode>();
    node->tracklet = static_cast<int>(i);
    frontier.push_back(node.get());
    roots.push_back(std::move(node));
    --budget;
  }
  while (!frontier.empty()) {
    TreeNode* node = frontier.front();
    frontier.pop_front();
    for (int j : links[node->tracklet]) {
      if (budget <= 0) break;
      auto child = std::make_unique<TreeNode>();
      child->tracklet = j;
      frontier.push_back(child.get());
      node->children.push_back(std::move(child));
      --budget;
    }
    node->children.push_back(std::make_unique<TreeNode>());  // EOT leaf
  }
  return roots;
}

Hypothesis complete_path(const std::vector<const Tracklet*>& path,
                         const FovRect& fov, int window_size,
                         const TreeConfig& cfg) {
  if (path.empty()) throw std::runtime_error("invalid path: empty");
  for (std::size_t k = 1; k < path.size(); ++k) {
    if (path[k]->start_frame() <= path[k - 1]->end_frame())
      throw std::runtime_error("invalid path: overlapping tracklets");
  }

  Hypothesis hyp;
  hyp.detections.reserve(window_size);

  // First rule.
  const Tracklet& first = *path.front();
  if (first.start_frame() > 1) {
    const bool at_edge = is_boundary(first.first_position(), fov, cfg.boundary_margin);
    for (int f = 1; f < first.start_frame(); ++f) {
      hyp.detections.push_back(at_edge
                                   ? Detection::empty(f)
                                   : Detection::synthetic(f, first.first_position()));
    }
    hyp.source_path.push_back(at_edge ? "first:empty" : "first:pinned");
  }

  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k > 0) {
      // Gap rule.
      const Tracklet& prev = *path[k - 1];
      const Tracklet& cur = *path[k];
      const Point2& pe = prev.last_position();
      const Point2& ps = cur.first_position();
      const int e = prev.end_frame();
      const int s = cur.start_frame();
      const bool both_edges = is_boundary(pe, fov, cfg.boundary_margin) &&
                              is_boundary(ps, fov, cfg.boundary_margin);
      for (int f = e + 1; f < s; ++f) {
        if (both_edges) {
          hyp.detections.push_back(Detection::empty(f));
        } else {
          const double t = static_cast<double>(f - e) / (s - e);
          hyp.detections.push_back(Detection::synthetic(f, pe + t * (ps - pe)));
        }
      }
      if (s > e + 1)
        hyp.source_path.push_back(both_edges ? "gap:empty" : "gap:interp");
    }
    for (const Detection& d : path[k]->detections) hyp.detections.push_back(d);
    hyp.source_path.push_back(path[k]->id);
  }

  // Last rule (also covers EOT termination: a non-boundary ending is
  // extended with synthetic detections pinned at the final position).
  const Tracklet& last = *path.back();
  if (last.end_frame() < window_size) {
    const bool at_edge = is_boundary(last.last_position(), fov, cfg.boundary_margin);
    for (int f = last.end_frame() + 1; f <= window_size; ++f) {
      hyp.detections.push_back(at_edge
                                   ? Detection::empty(f)
                                   : Detection::synthetic(f, last.last_position()));
    }
    hyp.source_path.push_back(at_edge ? "last:empty" : "last:pinned");
  }
  return hyp;
}

HypothesisSet enumerate_hypotheses(
    const std::vector<std::unique_ptr<TreeNode>>& roots,
    const std::vector<Tracklet>& tracklets, const FovRect& fov,
    int window_size, const TreeConfig& cfg, int max_hypotheses) {
  struct Item {
    const TreeNode* node;
    std::vector<const Tracklet*> path;
  };
  HypothesisSet out;
  std::deque<Item> queue;
  for (const auto& root : roots) queue.push_back({root.get(), {}});

  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (item.node->is_eot()) {
      if (static_cast<int>(out.hypotheses.size()) >= max_hypotheses) {
        out.truncated = true;
        break;
      }
      out.hypotheses.push_back(complete_path(item.path, fov, window_size, cfg));
      continue;
    }
    auto path = item.path;
    path.push_back(&tracklets[item.node->tracklet]);
    for (const auto& child : item.node->children)
      queue.push_back({child.get(), path});
  }
  return out;
}

}  // namespace ravel
