#pragma once

#include "ravel/tracklet.hpp"

#include <memory>

namespace ravel {

struct TreeConfig {
  int start_frame_threshold = 10;   // roots must start at/before this frame
  int max_gap_frames = 20;          // max child.start - parent.end
  double max_gap_distance = 3.0;    // meters between parent end and child start
  double boundary_margin = 0.5;     // meters from an FOV edge
  // Distance gate applied instead of max_gap_distance when the parent ends
  // AND the child starts at the boundary: someone who leaves the field of
  // view can re-enter far from the exit point. Defaults to the regular
  // gate, so by default the edge rule is purely distance-thresholded.
  double boundary_max_gap_distance = 3.0;
  // Total node budget across all trees. Trees are grown breadth-first, so
  // when the budget runs out only the deepest paths are lost — the same
  // ones the hypothesis cap would discard.
  int max_tree_nodes = 200000;
};

// Node payload is either a tracklet (by index into the window's tracklet
// list) or an end-of-trajectory marker. EOT nodes are leaves; every
// tracklet node gets an EOT child, so all leaves are EOT.
struct TreeNode {
  static constexpr int kEot = -1;
  int tracklet = kEot;
  std::vector<std::unique_ptr<TreeNode>> children;

  bool is_eot() const { return tracklet == kEot; }
};

// A full-window candidate trajectory: exactly W detections, one per frame.
struct Hypothesis {
  std::vector<Detection> detections;
  std::vector<std::string> source_path;  // tracklet ids + completion notes

  int window_size() const { return static_cast<int>(detections.size()); }
  int camera_count() const;
};

bool is_boundary(const Point2& p, const FovRect& fov, double margin);

// One root per early-starting tracklet; children linked by the
// spatio-temporal gap thresholds. Every tracklet node gets an EOT child.
std::vector<std::unique_ptr<TreeNode>> build_trees(
    const std::vector<Tracklet>& tracklets, const FovRect& fov,
    const TreeConfig& cfg);

// Completes a chronologically ordered tracklet path into a W-frame
// hypothesis using the first/gap/last completion rules.
Hypothesis complete_path(const std::vector<const Tracklet*>& path,
                         const FovRect& fov, int window_size,
                         const TreeConfig& cfg);

struct HypothesisSet {
  std::vector<Hypothesis> hypotheses;
  bool truncated = false;
};

// One hypothesis per root-to-leaf path, breadth-first so the shallowest
// paths survive when the cap is hit.
HypothesisSet enumerate_hypotheses(
    const std::vector<std::unique_ptr<TreeNode>>& roots,
    const std::vector<Tracklet>& tracklets, const FovRect& fov,
    int window_size, const TreeConfig& cfg, int max_hypotheses = 10000);

}  // namespace ravel
