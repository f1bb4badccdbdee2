#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "riplayer/filtration.hpp"
#include "riplayer/metric.hpp"

namespace riplayer {

// Maximal run of scale parameters over which one component keeps the same
// member set. Antecedents are the segments whose member sets merge into this
// one at its birth; segments with a single antecedent absorbed new vertices.
struct Segment {
  std::vector<int> members;      // sorted point indices
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();  // next change, or +inf
  std::vector<int> antecedents;  // segment ids, sorted
  int successor = -1;            // segment id, or -1 for terminal

  bool operator==(const Segment&) const = default;
};

// A hierarchy vertex: the component of `segment` viewed at scale s, with
// birth(segment) <= s (< death unless the grid has been exhausted).
struct NodeRef {
  double s = 0.0;
  int segment = -1;
  std::uint32_t forest = 0;
};

// The cluster hierarchy of a space at fixed density k, condensed into
// segments over the event grid. Immutable once built; queries are safe to
// run concurrently.
class SegmentForest {
 public:
  int k() const { return k_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& segment(int id) const { return segments_[id]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t point_count() const { return n_; }
  bool empty() const { return segments_.empty(); }
  std::uint32_t id() const { return id_; }

  // Index of the largest grid value <= s. s must be >= 0; values past the
  // last grid entry clamp to it (the filtration is constant there).
  std::size_t grid_index(double s) const;

  // Segment id containing `point` at the given grid stage, or -1.
  int segment_at(std::size_t grid_idx, int point) const {
    return stage_seg_[grid_idx][point];
  }

  // Segment of the chain through `seg` that is alive at scale s (>= the
  // segment's birth). Terminal segments persist beyond the grid.
  int chain_at(int seg, double s) const;

  NodeRef node_at(double s, int point) const;
  NodeRef node_of_segment(int seg) const { return NodeRef{segments_[seg].birth, seg, id_}; }

  // Partial order: a <= b iff a.s <= b.s and a's member set is contained in
  // b's member set.
  bool leq(NodeRef a, NodeRef b) const;

  // Least upper bound: the earliest node at scale >= max(a.s, b.s) whose
  // component contains both member sets, found by walking successor chains.
  NodeRef lub(NodeRef a, NodeRef b) const;

  nlohmann::ordered_json to_json() const;
  static SegmentForest from_json(const nlohmann::ordered_json& j);

 private:
  int k_ = 0;
  std::vector<double> grid_;
  std::vector<Segment> segments_;
  std::vector<std::vector<int32_t>> stage_seg_;  // [grid index][point] -> segment id or -1
  std::vector<std::string> labels_;
  std::size_t n_ = 0;
  std::uint32_t id_ = 0;

  void check_ref(NodeRef ref) const;
  void rebuild_stage_lookup();

  friend SegmentForest build_forest(const MetricSpace& space, int k, double snap_eps);
};

// Sweeps the event grid once, diffing component member sets between
// consecutive stages. k >= point count yields an empty forest.
SegmentForest build_forest(const MetricSpace& space, int k, double snap_eps = 0.0);

}  // namespace riplayer
