#include "riplayer/filtration.hpp"

#include <algorithm>

namespace riplayer {

std::vector<double> parameter_grid(const MetricSpace& space, double snap_eps) {
  const std::size_t n = space.size();
  std::vector<double> vals;
  vals.reserve(n * (n ? n - 1 : 0) / 2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) vals.push_back(space.dist(a, b));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());

  std::vector<double> grid;
  grid.reserve(vals.size() + 1);
  grid.push_back(0.0);
  for (double v : vals) {
    if (snap_eps > 0.0 && grid.size() > 1 && v - grid.back() <= snap_eps) continue;
    grid.push_back(v);
  }
  return grid;
}

std::vector<int> vertex_set(const MetricSpace& space, double s, int k) {
  const std::size_t n = space.size();
  std::vector<int> out;
  if (k <= 0) {
    out.resize(n);
    for (std::size_t x = 0; x < n; ++x) out[x] = static_cast<int>(x);
    return out;
  }
  for (std::size_t x = 0; x < n; ++x) {
    int neighbours = 0;
    for (std::size_t y = 0; y < n && neighbours < k; ++y)
      if (y != x && space.dist(x, y) <= s) ++neighbours;
    if (neighbours >= k) out.push_back(static_cast<int>(x));
  }
  return out;
}

void component_reps(const MetricSpace& space, double s, int k, std::vector<int32_t>& out) {
  const std::size_t n = space.size();
  out.assign(n, -1);
  const std::vector<int> verts = vertex_set(space, s, k);
  DisjointSet dsu(n);
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if (space.dist(verts[i], verts[j]) <= s) dsu.unite(verts[i], verts[j]);
  // canonical representative: minimum member (vertex lists are ascending)
  for (int v : verts) {
    const int root = dsu.find(v);
    if (out[root] < 0) out[root] = v;  // first vertex hitting this root is minimal
  }
  for (int v : verts) out[v] = out[dsu.find(v)];
}

ComponentPartition components(const MetricSpace& space, double s, int k) {
  ComponentPartition part;
  part.s = s;
  part.k = k;
  std::vector<int32_t> reps;
  component_reps(space, s, k, reps);
  std::vector<std::pair<int32_t, int>> order;
  for (std::size_t x = 0; x < reps.size(); ++x)
    if (reps[x] >= 0) order.emplace_back(reps[x], static_cast<int>(x));
  std::sort(order.begin(), order.end());
  for (const auto& [rep, x] : order) {
    if (part.blocks.empty() || reps[part.blocks.back().front()] != rep)
      part.blocks.emplace_back();
    part.blocks.back().push_back(x);
  }
  return part;
}

}  // namespace riplayer
