#pragma once

#include <cstdint>
#include <vector>

#include "riplayer/metric.hpp"

namespace riplayer {

// Union-find with path compression and union by size.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool same(int a, int b) { return find(a) == find(b); }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

// Event parameters for a space: 0 followed by the distinct pairwise
// distances, sorted ascending. With snap_eps > 0, distance values within
// snap_eps of the previously kept value are merged into it (an escape hatch
// for noisy inputs; the default keeps every event exactly).
std::vector<double> parameter_grid(const MetricSpace& space, double snap_eps = 0.0);

// Points with at least k distinct neighbours within distance s (the point
// itself does not count). k = 0 imposes no condition.
std::vector<int> vertex_set(const MetricSpace& space, double s, int k);

// Partition of vertex_set(space,s,k) into connected components of the graph
// with edges of length <= s. Blocks are sorted, ordered by their minimum
// member, which is the canonical representative.
struct ComponentPartition {
  double s = 0.0;
  int k = 0;
  std::vector<std::vector<int>> blocks;
};

ComponentPartition components(const MetricSpace& space, double s, int k);

// Fast variant: writes the canonical representative (minimum member index)
// of each vertex's component into out, -1 for non-vertices.
void component_reps(const MetricSpace& space, double s, int k, std::vector<int32_t>& out);

}  // namespace riplayer
