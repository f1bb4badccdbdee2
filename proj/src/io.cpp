#include "riplayer/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace riplayer {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

PointCloud read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::BadInput, "cannot open " + path);
  PointCloud cloud;
  std::string line;
  bool labeled = false;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (first) {
      first = false;
      double v;
      if (!fields.empty() && !parse_double(fields[0], v)) {
        // header row; a leading "label" column names the points
        labeled = fields[0] == "label";
        continue;
      }
    }
    std::vector<double> coords;
    std::size_t start = 0;
    if (labeled) {
      cloud.labels.push_back(fields[0]);
      start = 1;
    }
    for (std::size_t i = start; i < fields.size(); ++i) {
      double v;
      if (!parse_double(fields[i], v))
        fail(Err::BadInput, path + ":" + std::to_string(lineno) + ": bad number '" + fields[i] +
                                "'");
      coords.push_back(v);
    }
    if (coords.empty())
      fail(Err::BadInput, path + ":" + std::to_string(lineno) + ": no coordinates");
    cloud.points.push_back(std::move(coords));
  }
  if (cloud.points.empty()) fail(Err::BadInput, path + ": no points");
  return cloud;
}

MetricSpace read_distance_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::BadInput, "cannot open " + path);
  long long n = -1;
  if (!(in >> n) || n < 0) fail(Err::BadInput, path + ": first token must be the point count");
  const std::size_t expect = static_cast<std::size_t>(n) * (n ? n - 1 : 0) / 2;
  std::vector<double> lower;
  lower.reserve(expect);
  double v;
  while (in >> v) lower.push_back(v);
  if (lower.size() != expect)
    fail(Err::BadInput, path + ": expected " + std::to_string(expect) +
                            " lower-triangle entries, found " + std::to_string(lower.size()));
  return MetricSpace::from_matrix_flat(static_cast<std::size_t>(n), lower);
}

std::vector<int> read_embed_map(const std::string& path, std::size_t n_sub) {
  std::ifstream in(path);
  if (!in) fail(Err::BadInput, "cannot open " + path);
  std::vector<int> map;
  int idx;
  while (in >> idx) map.push_back(idx);
  if (map.size() != n_sub)
    fail(Err::BadInput, path + ": expected " + std::to_string(n_sub) + " indices, found " +
                            std::to_string(map.size()));
  return map;
}

std::vector<int> embed_by_coordinates(const PointCloud& sub, const PointCloud& sup) {
  std::vector<int> embed;
  embed.reserve(sub.points.size());
  for (std::size_t a = 0; a < sub.points.size(); ++a) {
    int found = -1;
    for (std::size_t b = 0; b < sup.points.size() && found < 0; ++b)
      if (sup.points[b] == sub.points[a]) found = static_cast<int>(b);
    if (found < 0)
      fail(Err::BadInput,
           "point " + std::to_string(a) + " of the subspace has no exact match in the superspace");
    embed.push_back(found);
  }
  return embed;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(Err::BadInput, "cannot write " + path);
  out << content;
}

}  // namespace riplayer
