#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "riplayer/hierarchy.hpp"

namespace riplayer {

// A segment birth: the node (birth, segment). Branch points carry >= 2
// antecedents or none; every branch point is a layer point.
struct LayerPoint {
  double birth = 0.0;
  int segment = -1;
  int cardinality = 0;
  bool branch = false;

  bool operator==(const LayerPoint& o) const {
    return birth == o.birth && segment == o.segment;
  }
};

// All layer points of the forest, in segment id order (ascending birth,
// then canonical representative).
std::vector<LayerPoint> layer_points(const SegmentForest& forest);

// The subset with antecedent count != 1.
std::vector<LayerPoint> branch_points(const SegmentForest& forest);

LayerPoint layer_point_of_segment(const SegmentForest& forest, int segment);

NodeRef node_of(const SegmentForest& forest, const LayerPoint& p);

// The unique largest layer point below v: the birth of v's segment.
LayerPoint max_layer_below(const SegmentForest& forest, NodeRef v);

// The unique largest branch point below v: walk antecedent chains backwards
// through single-antecedent births.
LayerPoint max_branch_below(const SegmentForest& forest, NodeRef v);

// Least upper bound of two layer points, again a layer point.
LayerPoint lub_layer(const SegmentForest& forest, const LayerPoint& a, const LayerPoint& b);

// Sorted distinct birth scales of the layer points, with successor and
// predecessor lookups (absent beyond either extreme).
struct LayerParameters {
  std::vector<double> values;

  std::optional<double> successor(double t) const;
  std::optional<double> predecessor(double t) const;
  bool contains(double t) const;
};

LayerParameters layer_parameters(const SegmentForest& forest);

// Hierarchy JSON extended with layer/branch flags and the parameter lists.
nlohmann::ordered_json layers_to_json(const SegmentForest& forest);

// Hasse diagram of the layer poset; branch points are double-circled.
std::string layers_to_dot(const SegmentForest& forest);

}  // namespace riplayer
