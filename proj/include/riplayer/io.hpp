#pragma once

#include <string>
#include <vector>

#include "riplayer/metric.hpp"

namespace riplayer {

struct PointCloud {
  std::vector<std::string> labels;  // empty when the file has no label column
  std::vector<std::vector<double>> points;
};

// One point per line, comma-separated coordinates. A header row
// `label,x0,x1,...` switches on the leading label column.
PointCloud read_points_csv(const std::string& path);

// First token: the point count n; then the n*(n-1)/2 strict lower-triangle
// entries in row order, whitespace-separated.
MetricSpace read_distance_matrix(const std::string& path);

// One Y index per X point, whitespace-separated.
std::vector<int> read_embed_map(const std::string& path, std::size_t n_sub);

// Locates each X point in Y by exact coordinate equality.
std::vector<int> embed_by_coordinates(const PointCloud& sub, const PointCloud& sup);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace riplayer
