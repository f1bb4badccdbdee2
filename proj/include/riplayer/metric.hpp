#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riplayer/errors.hpp"

namespace riplayer {

enum class MetricKind { euclidean, manhattan, chebyshev };

std::optional<MetricKind> parse_metric_kind(std::string_view name);
const char* to_string(MetricKind kind);

// A validated finite metric space: point labels plus a symmetric table of
// pairwise distances. Immutable after construction.
class MetricSpace {
 public:
  MetricSpace() = default;

  // Builds the table from coordinate vectors. Duplicate points are rejected
  // unless dedup is set, in which case later exact duplicates are dropped.
  static MetricSpace from_points(const std::vector<std::vector<double>>& points,
                                 MetricKind kind, bool dedup = false,
                                 std::vector<std::string> labels = {});

  // Builds from the strict lower triangle: rows[i] holds the distances from
  // point i+1 to points 0..i. An empty table yields the empty space. The
  // table is validated exhaustively (positivity, triangle inequality).
  static MetricSpace from_matrix(const std::vector<std::vector<double>>& rows,
                                 std::vector<std::string> labels = {});

  // Same, from an explicit point count and the flattened strict lower
  // triangle in row order (n*(n-1)/2 values).
  static MetricSpace from_matrix_flat(std::size_t n, const std::vector<double>& lower,
                                      std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  double dist(std::size_t a, std::size_t b) const { return dist_[a * n_ + b]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::vector<std::string> labels_;

  void finalize(std::vector<std::string> labels, bool check_triangle);
};

// An ordered tuple of pairwise-distinct point indices.
struct ConfigTuple {
  std::vector<int> ids;

  static ConfigTuple of(std::vector<int> ids);
};

// Max metric on equal-length tuples: the largest coordinate-wise distance.
double config_distance(const ConfigTuple& a, const ConfigTuple& b, const MetricSpace& space);

// An isometric inclusion X -> Y given by an injective index map. Validated on
// construction: distances must match exactly.
class Inclusion {
 public:
  Inclusion(MetricSpace sub, MetricSpace sup, std::vector<int> embed);

  static Inclusion identity(MetricSpace space);

  const MetricSpace& sub() const { return sub_; }
  const MetricSpace& sup() const { return sup_; }
  const std::vector<int>& embed() const { return embed_; }

 private:
  MetricSpace sub_;
  MetricSpace sup_;
  std::vector<int> embed_;
};

inline constexpr std::size_t kDefaultTupleBudget = 2'000'000;

// Directed Hausdorff distance from the (k+1)-tuple configuration space of Y
// to that of X, in the metric of Y (the X-to-Y direction is zero since
// X is a subspace). Exact; refuses instances whose enumeration would exceed
// tuple_budget comparisons. Parallelized internally, schedule-independent.
double hausdorff_config(const Inclusion& pair, int k,
                        std::size_t tuple_budget = kDefaultTupleBudget);

}  // namespace riplayer
