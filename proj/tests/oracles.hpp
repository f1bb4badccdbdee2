// Independent reference implementations used only by tests: breadth-first
// component search, exhaustive minimal-parameter joins, the definition-level
// layer/branch conditions, and a double-loop tuple Hausdorff distance. These
// deliberately share no code with the library paths they check.
#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

#include "riplayer/filtration.hpp"
#include "riplayer/metric.hpp"

namespace oracles {

using riplayer::Inclusion;
using riplayer::MetricSpace;

// Blocks of the degree-Rips 1-skeleton at (s,k), found by BFS. Sorted by
// minimum member.
inline std::vector<std::vector<int>> bfs_components(const MetricSpace& space, double s, int k) {
  const int n = static_cast<int>(space.size());
  std::vector<char> is_vertex(n, 0);
  for (int x = 0; x < n; ++x) {
    int degree = 0;
    for (int y = 0; y < n; ++y)
      if (y != x && space.dist(x, y) <= s) ++degree;
    is_vertex[x] = degree >= k;
  }
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < n; ++x) {
    if (!is_vertex[x] || seen[x]) continue;
    std::vector<int> block;
    std::deque<int> queue{x};
    seen[x] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      block.push_back(v);
      for (int w = 0; w < n; ++w)
        if (is_vertex[w] && !seen[w] && space.dist(v, w) <= s) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return blocks;
}

inline std::vector<double> grid_of(const MetricSpace& space) {
  std::vector<double> grid{0.0};
  for (std::size_t a = 0; a < space.size(); ++a)
    for (std::size_t b = a + 1; b < space.size(); ++b) grid.push_back(space.dist(a, b));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

inline const std::vector<int>* block_containing(const std::vector<std::vector<int>>& blocks,
                                                int point) {
  for (const auto& b : blocks)
    if (std::binary_search(b.begin(), b.end(), point)) return &b;
  return nullptr;
}

// Minimal u >= max(sa, sb) at which both member sets land in one block.
// Returns (u, block); u = infinity when they never join.
inline std::pair<double, std::vector<int>> brute_lub(const MetricSpace& space, int k,
                                                     double sa, const std::vector<int>& ma,
                                                     double sb, const std::vector<int>& mb) {
  const double start = std::max(sa, sb);
  std::vector<double> candidates{start};
  for (double g : grid_of(space))
    if (g > start) candidates.push_back(g);
  for (double u : candidates) {
    const auto blocks = bfs_components(space, u, k);
    const auto* ba = block_containing(blocks, ma.front());
    if (!ba) continue;
    const bool joined =
        std::includes(ba->begin(), ba->end(), ma.begin(), ma.end()) &&
        std::includes(ba->begin(), ba->end(), mb.begin(), mb.end());
    if (joined) return {u, *ba};
  }
  return {std::numeric_limits<double>::infinity(), {}};
}

// (t, members) pairs satisfying the layer condition, read off stage by stage:
// a block is a layer point at t_i when every block of stage i-1 inside it is
// a proper subset (or there is none).
inline std::vector<std::pair<double, std::vector<int>>> layer_points_oracle(
    const MetricSpace& space, int k) {
  std::vector<std::pair<double, std::vector<int>>> out;
  const std::vector<double> grid = grid_of(space);
  std::vector<std::vector<int>> prev;
  for (double s : grid) {
    const auto blocks = bfs_components(space, s, k);
    for (const auto& block : blocks) {
      bool layer = true;
      for (const auto& old : prev)
        if (std::includes(block.begin(), block.end(), old.begin(), old.end()) &&
            old.size() == block.size())
          layer = false;  // the same member set already existed
      if (layer) out.emplace_back(s, block);
    }
    prev = blocks;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Same, with the branch condition: the number of previous-stage blocks inside
// must differ from one.
inline std::vector<std::pair<double, std::vector<int>>> branch_points_oracle(
    const MetricSpace& space, int k) {
  std::vector<std::pair<double, std::vector<int>>> out;
  const std::vector<double> grid = grid_of(space);
  std::vector<std::vector<int>> prev;
  for (double s : grid) {
    const auto blocks = bfs_components(space, s, k);
    for (const auto& block : blocks) {
      int inside = 0;
      bool same = false;
      for (const auto& old : prev)
        if (std::includes(block.begin(), block.end(), old.begin(), old.end())) {
          ++inside;
          same |= old.size() == block.size();
        }
      if (!same && inside != 1) out.emplace_back(s, block);
    }
    prev = blocks;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Directed Hausdorff distance between tuple configuration spaces by plain
// double loop over ordered tuples of distinct indices.
inline void ordered_tuples(int n, int len, std::vector<int>& scratch,
                           std::vector<std::vector<int>>& out) {
  if (static_cast<int>(scratch.size()) == len) {
    out.push_back(scratch);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (std::find(scratch.begin(), scratch.end(), i) != scratch.end()) continue;
    scratch.push_back(i);
    ordered_tuples(n, len, scratch, out);
    scratch.pop_back();
  }
}

inline double hausdorff_oracle(const Inclusion& pair, int k) {
  const MetricSpace& Y = pair.sup();
  const int len = k + 1;
  std::vector<std::vector<int>> ytuples, xtuples;
  std::vector<int> scratch;
  ordered_tuples(static_cast<int>(Y.size()), len, scratch, ytuples);
  ordered_tuples(static_cast<int>(pair.sub().size()), len, scratch, xtuples);
  double worst = 0.0;
  for (const auto& u : ytuples) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : xtuples) {
      double d = 0.0;
      for (int i = 0; i < len; ++i) d = std::max(d, Y.dist(u[i], pair.embed()[v[i]]));
      best = std::min(best, d);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace oracles
