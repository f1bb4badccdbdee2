#include "riplayer/layers.hpp"

#include <algorithm>
#include <sstream>

namespace riplayer {

LayerPoint layer_point_of_segment(const SegmentForest& forest, int segment) {
  const Segment& seg = forest.segment(segment);
  return LayerPoint{seg.birth, segment, static_cast<int>(seg.members.size()),
                    seg.antecedents.size() != 1};
}

std::vector<LayerPoint> layer_points(const SegmentForest& forest) {
  std::vector<LayerPoint> out;
  out.reserve(forest.segments().size());
  for (std::size_t i = 0; i < forest.segments().size(); ++i)
    out.push_back(layer_point_of_segment(forest, static_cast<int>(i)));
  return out;
}

std::vector<LayerPoint> branch_points(const SegmentForest& forest) {
  std::vector<LayerPoint> out;
  for (std::size_t i = 0; i < forest.segments().size(); ++i)
    if (forest.segment(static_cast<int>(i)).antecedents.size() != 1)
      out.push_back(layer_point_of_segment(forest, static_cast<int>(i)));
  return out;
}

NodeRef node_of(const SegmentForest& forest, const LayerPoint& p) {
  return forest.node_of_segment(p.segment);
}

LayerPoint max_layer_below(const SegmentForest& forest, NodeRef v) {
  if (v.forest != forest.id()) fail(Err::ForestMismatch, "node belongs to a different hierarchy");
  return layer_point_of_segment(forest, v.segment);
}

LayerPoint max_branch_below(const SegmentForest& forest, NodeRef v) {
  if (v.forest != forest.id()) fail(Err::ForestMismatch, "node belongs to a different hierarchy");
  int seg = v.segment;
  while (forest.segment(seg).antecedents.size() == 1) seg = forest.segment(seg).antecedents[0];
  return layer_point_of_segment(forest, seg);
}

LayerPoint lub_layer(const SegmentForest& forest, const LayerPoint& a, const LayerPoint& b) {
  const NodeRef join = forest.lub(node_of(forest, a), node_of(forest, b));
  const LayerPoint out = layer_point_of_segment(forest, join.segment);
  if (out.birth != join.s)
    fail(Err::BadInput, "join of layer points did not land on a segment birth");
  return out;
}

std::optional<double> LayerParameters::successor(double t) const {
  const auto it = std::upper_bound(values.begin(), values.end(), t);
  if (it == values.end()) return std::nullopt;
  return *it;
}

std::optional<double> LayerParameters::predecessor(double t) const {
  const auto it = std::lower_bound(values.begin(), values.end(), t);
  if (it == values.begin()) return std::nullopt;
  return *(it - 1);
}

bool LayerParameters::contains(double t) const {
  return std::binary_search(values.begin(), values.end(), t);
}

LayerParameters layer_parameters(const SegmentForest& forest) {
  LayerParameters out;
  out.values.reserve(forest.segments().size());
  for (const Segment& s : forest.segments()) out.values.push_back(s.birth);
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  return out;
}

nlohmann::ordered_json layers_to_json(const SegmentForest& forest) {
  nlohmann::ordered_json j = forest.to_json();
  auto& segs = j["segments"];
  for (std::size_t i = 0; i < forest.segments().size(); ++i) {
    segs[i]["layer"] = true;  // every segment birth is a layer point
    segs[i]["branch"] = forest.segment(static_cast<int>(i)).antecedents.size() != 1;
  }
  j["layer_parameters"] = layer_parameters(forest).values;
  std::vector<double> branch_params;
  for (const LayerPoint& b : branch_points(forest)) branch_params.push_back(b.birth);
  std::sort(branch_params.begin(), branch_params.end());
  branch_params.erase(std::unique(branch_params.begin(), branch_params.end()),
                      branch_params.end());
  j["branch_parameters"] = branch_params;
  return j;
}

namespace {

std::string format_scale(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string layers_to_dot(const SegmentForest& forest) {
  std::ostringstream dot;
  dot << "digraph layer_poset {\n";
  dot << "  rankdir=BT;\n";
  dot << "  node [shape=circle];\n";
  for (std::size_t i = 0; i < forest.segments().size(); ++i) {
    const Segment& seg = forest.segment(static_cast<int>(i));
    dot << "  s" << i << " [label=\"" << format_scale(seg.birth) << " | {";
    for (std::size_t m = 0; m < seg.members.size(); ++m) {
      if (m) dot << ",";
      dot << forest.labels()[seg.members[m]];
    }
    dot << "}\"";
    if (seg.antecedents.size() != 1) dot << ", peripheries=2";
    dot << "];\n";
  }
  for (std::size_t i = 0; i < forest.segments().size(); ++i) {
    const Segment& seg = forest.segment(static_cast<int>(i));
    if (seg.successor >= 0) dot << "  s" << i << " -> s" << seg.successor << ";\n";
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace riplayer
