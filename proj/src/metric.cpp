#include "riplayer/metric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "riplayer/parallel.hpp"

namespace riplayer {

std::optional<MetricKind> parse_metric_kind(std::string_view name) {
  if (name == "euclidean") return MetricKind::euclidean;
  if (name == "manhattan") return MetricKind::manhattan;
  if (name == "chebyshev") return MetricKind::chebyshev;
  return std::nullopt;
}

const char* to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean: return "euclidean";
    case MetricKind::manhattan: return "manhattan";
    case MetricKind::chebyshev: return "chebyshev";
  }
  return "?";
}

namespace {

double point_distance(const std::vector<double>& a, const std::vector<double>& b,
                      MetricKind kind) {
  double acc = 0.0;
  switch (kind) {
    case MetricKind::euclidean:
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
      }
      return std::sqrt(acc);
    case MetricKind::manhattan:
      for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
      return acc;
    case MetricKind::chebyshev:
      for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
      return acc;
  }
  return 0.0;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

void MetricSpace::finalize(std::vector<std::string> labels, bool check_triangle) {
  if (labels.empty()) labels = default_labels(n_);
  if (labels.size() != n_)
    fail(Err::BadInput, "label count " + std::to_string(labels.size()) +
                            " does not match point count " + std::to_string(n_));
  labels_ = std::move(labels);

  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      const double d = dist(a, b);
      if (std::isnan(d) || d < 0.0)
        fail(Err::NegativeDistance,
             "dist(" + labels_[a] + "," + labels_[b] + ") = " + std::to_string(d));
      if (d == 0.0)
        fail(Err::ZeroOffDiagonal, "points " + labels_[a] + " and " + labels_[b] +
                                       " are at distance 0 (duplicate points?)");
    }
  }
  if (!check_triangle) return;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      for (std::size_t c = b + 1; c < n_; ++c) {
        const double ab = dist(a, b), bc = dist(b, c), ac = dist(a, c);
        if (ab > ac + bc || ac > ab + bc || bc > ab + ac) {
          std::ostringstream msg;
          msg << "triple (" << a << "," << b << "," << c << "): distances " << ab << ", " << ac
              << ", " << bc;
          fail(Err::TriangleViolation, msg.str());
        }
      }
    }
  }
}

MetricSpace MetricSpace::from_points(const std::vector<std::vector<double>>& points,
                                     MetricKind kind, bool dedup,
                                     std::vector<std::string> labels) {
  const std::size_t dim = points.empty() ? 0 : points.front().size();
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].size() != dim)
      fail(Err::DimensionMismatch, "point " + std::to_string(i) + " has dimension " +
                                       std::to_string(points[i].size()) + ", expected " +
                                       std::to_string(dim));

  std::vector<std::vector<double>> kept;
  std::vector<std::string> kept_labels;
  kept.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool duplicate = false;
    for (std::size_t j = 0; j < kept.size() && !duplicate; ++j)
      duplicate = (kept[j] == points[i]);
    if (duplicate) {
      if (!dedup)
        fail(Err::DuplicatePoint, "point " + std::to_string(i) + " duplicates an earlier point");
      continue;  // merged away
    }
    kept.push_back(points[i]);
    if (!labels.empty()) kept_labels.push_back(labels[i]);
  }

  MetricSpace space;
  space.n_ = kept.size();
  space.dist_.assign(space.n_ * space.n_, 0.0);
  for (std::size_t a = 0; a < space.n_; ++a)
    for (std::size_t b = a + 1; b < space.n_; ++b) {
      const double d = point_distance(kept[a], kept[b], kind);
      space.dist_[a * space.n_ + b] = d;
      space.dist_[b * space.n_ + a] = d;
    }
  // Triangle inequality holds by construction for these metrics; checking it
  // on rounded values could reject collinear configurations spuriously.
  space.finalize(std::move(kept_labels), /*check_triangle=*/false);
  return space;
}

MetricSpace MetricSpace::from_matrix(const std::vector<std::vector<double>>& rows,
                                     std::vector<std::string> labels) {
  const std::size_t n = rows.empty() ? 0 : rows.size() + 1;
  std::vector<double> flat;
  flat.reserve(n * (n ? n - 1 : 0) / 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != i + 1)
      fail(Err::BadInput, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(i + 1));
    for (double v : rows[i]) flat.push_back(v);
  }
  return from_matrix_flat(n, flat, std::move(labels));
}

MetricSpace MetricSpace::from_matrix_flat(std::size_t n, const std::vector<double>& lower,
                                          std::vector<std::string> labels) {
  if (lower.size() != n * (n ? n - 1 : 0) / 2)
    fail(Err::BadInput, "expected " + std::to_string(n * (n ? n - 1 : 0) / 2) +
                            " lower-triangle entries, got " + std::to_string(lower.size()));
  MetricSpace space;
  space.n_ = n;
  space.dist_.assign(n * n, 0.0);
  std::size_t idx = 0;
  for (std::size_t b = 1; b < n; ++b)
    for (std::size_t a = 0; a < b; ++a) {
      const double d = lower[idx++];
      space.dist_[a * n + b] = d;
      space.dist_[b * n + a] = d;
    }
  space.finalize(std::move(labels), /*check_triangle=*/true);
  return space;
}

ConfigTuple ConfigTuple::of(std::vector<int> ids) {
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (ids[i] == ids[j])
        fail(Err::BadInput, "tuple entries must be pairwise distinct (index " +
                                std::to_string(ids[i]) + " repeats)");
  return ConfigTuple{std::move(ids)};
}

double config_distance(const ConfigTuple& a, const ConfigTuple& b, const MetricSpace& space) {
  if (a.ids.size() != b.ids.size())
    fail(Err::LengthMismatch, "tuple lengths " + std::to_string(a.ids.size()) + " vs " +
                                  std::to_string(b.ids.size()));
  double out = 0.0;
  for (std::size_t i = 0; i < a.ids.size(); ++i) {
    const int p = a.ids[i], q = b.ids[i];
    if (p < 0 || q < 0 || static_cast<std::size_t>(p) >= space.size() ||
        static_cast<std::size_t>(q) >= space.size())
      fail(Err::BadInput, "tuple index out of range");
    out = std::max(out, space.dist(p, q));
  }
  return out;
}

Inclusion::Inclusion(MetricSpace sub, MetricSpace sup, std::vector<int> embed)
    : sub_(std::move(sub)), sup_(std::move(sup)), embed_(std::move(embed)) {
  if (embed_.size() != sub_.size())
    fail(Err::BadInput, "embedding has " + std::to_string(embed_.size()) + " entries for " +
                            std::to_string(sub_.size()) + " points");
  std::vector<char> seen(sup_.size(), 0);
  for (std::size_t a = 0; a < embed_.size(); ++a) {
    const int y = embed_[a];
    if (y < 0 || static_cast<std::size_t>(y) >= sup_.size())
      fail(Err::BadInput, "embedding index " + std::to_string(y) + " out of range");
    if (seen[y]) fail(Err::BadInput, "embedding is not injective at index " + std::to_string(y));
    seen[y] = 1;
  }
  for (std::size_t a = 0; a < sub_.size(); ++a)
    for (std::size_t b = a + 1; b < sub_.size(); ++b)
      if (sub_.dist(a, b) != sup_.dist(embed_[a], embed_[b]))
        fail(Err::BadInput, "embedding is not isometric on pair (" + sub_.label(a) + "," +
                                sub_.label(b) + ")");
}

Inclusion Inclusion::identity(MetricSpace space) {
  std::vector<int> embed(space.size());
  for (std::size_t i = 0; i < embed.size(); ++i) embed[i] = static_cast<int>(i);
  MetricSpace copy = space;
  return Inclusion(std::move(copy), std::move(space), std::move(embed));
}

namespace {

// C(n,k) capped at `cap` to avoid overflow; anything above the cap is
// reported as cap.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i, watching for overflow against cap
    const std::size_t factor = n - k + i;
    if (result > (cap + i) / factor * i) return cap;
    result = result * factor / i;
    if (result >= cap) return cap;
  }
  return result;
}

// Writes the combination of the given rank (lexicographic order over
// ascending index tuples) into out.
void unrank_combination(std::size_t rank, std::size_t n, std::size_t m, std::vector<int>& out) {
  out.resize(m);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t v = next;; ++v) {
      const std::size_t tail =
          binomial_capped(n - v - 1, m - i - 1, std::numeric_limits<std::size_t>::max() / 2);
      if (rank < tail) {
        out[i] = static_cast<int>(v);
        next = v + 1;
        break;
      }
      rank -= tail;
    }
  }
}

bool next_combination(std::vector<int>& c, std::size_t n) {
  const std::size_t m = c.size();
  for (std::size_t i = m; i-- > 0;) {
    if (c[i] < static_cast<int>(n - m + i)) {
      ++c[i];
      for (std::size_t j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct TupleDistances {
  std::size_t nx = 0, ny = 0;
  std::vector<double> dyx;    // ny * nx, distance from y to embedded x
  std::vector<int> order;     // ny * nx, X indices sorted by distance then index
  std::vector<double> nn;     // ny, nearest X distance

  double d(std::size_t y, std::size_t x) const { return dyx[y * nx + x]; }
  const int* sorted(std::size_t y) const { return order.data() + y * nx; }
};

TupleDistances tabulate(const Inclusion& pair) {
  const MetricSpace& X = pair.sub();
  const MetricSpace& Y = pair.sup();
  TupleDistances t;
  t.nx = X.size();
  t.ny = Y.size();
  t.dyx.resize(t.ny * t.nx);
  t.order.resize(t.ny * t.nx);
  t.nn.resize(t.ny);
  for (std::size_t y = 0; y < t.ny; ++y) {
    for (std::size_t x = 0; x < t.nx; ++x) t.dyx[y * t.nx + x] = Y.dist(y, pair.embed()[x]);
    int* ord = t.order.data() + y * t.nx;
    for (std::size_t x = 0; x < t.nx; ++x) ord[x] = static_cast<int>(x);
    std::sort(ord, ord + t.nx, [&](int a, int b) {
      const double da = t.d(y, a), db = t.d(y, b);
      return da != db ? da < db : a < b;
    });
    t.nn[y] = t.d(y, ord[0]);
  }
  return t;
}

// Feasible assignment by greedy nearest-unused choice; an upper bound for the
// exact bottleneck value. Counts as one tuple comparison.
double greedy_bound(const std::vector<int>& u, const TupleDistances& t, std::vector<char>& used) {
  std::fill(used.begin(), used.end(), 0);
  double out = 0.0;
  for (int y : u) {
    const int* ord = t.sorted(y);
    for (std::size_t j = 0; j < t.nx; ++j) {
      const int x = ord[j];
      if (used[x]) continue;
      used[x] = 1;
      out = std::max(out, t.d(y, x));
      break;
    }
  }
  return out;
}

// Exact bottleneck assignment of the tuple u onto distinct X points, branch
// and bound over candidates in distance order. `best` enters as an
// achievable bound and leaves as the optimum; each improving complete
// assignment counts one leaf.
void exact_assign(const std::vector<int>& u, const TupleDistances& t, std::size_t depth,
                  double cur_max, double& best, std::vector<char>& used, std::size_t& leaves) {
  if (depth == u.size()) return;  // callers stop one level above
  const int y = u[depth];
  const int* ord = t.sorted(y);
  const bool leaf = (depth + 1 == u.size());
  for (std::size_t j = 0; j < t.nx; ++j) {
    const int x = ord[j];
    const double d = t.d(y, x);
    if (d >= best) break;  // sorted: no later candidate can help
    if (used[x]) continue;
    const double nm = std::max(cur_max, d);
    if (leaf) {
      best = nm;
      ++leaves;
      break;  // later candidates only raise the bottleneck at this depth
    }
    used[x] = 1;
    exact_assign(u, t, depth + 1, nm, best, used, leaves);
    used[x] = 0;
  }
}

}  // namespace

double hausdorff_config(const Inclusion& pair, int k, std::size_t tuple_budget) {
  if (k < 0) fail(Err::BadInput, "k must be non-negative");
  const std::size_t m = static_cast<std::size_t>(k) + 1;
  if (pair.sub().size() < m)
    fail(Err::EmptyConfigSpace, "need at least " + std::to_string(m) + " points, subspace has " +
                                    std::to_string(pair.sub().size()));

  const TupleDistances t = tabulate(pair);

  // The max metric is permutation-symmetric, so enumerating unordered
  // configurations of Y is exact. Refuse up front if even that enumeration
  // blows the budget.
  const std::size_t combos = binomial_capped(t.ny, m, tuple_budget + 1);
  if (combos > tuple_budget)
    fail(Err::BudgetExceeded, "configuration count exceeds tuple budget of " +
                                  std::to_string(tuple_budget));

  // Pass 1: relaxed lower bound per configuration (nearest X point per
  // coordinate, distinctness ignored); the running maximum is a certified
  // lower bound for the final value.
  std::vector<double> chunk_lb(chunk_count(combos), 0.0);
  parallel_for_chunks(combos, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<int> u;
    unrank_combination(begin, t.ny, m, u);
    double local = 0.0;
    for (std::size_t r = begin; r < end; ++r) {
      double lb = 0.0;
      for (int y : u) lb = std::max(lb, t.nn[y]);
      local = std::max(local, lb);
      if (r + 1 < end) next_combination(u, t.ny);
    }
    chunk_lb[chunk] = local;
  });
  double lower = 0.0;
  for (double v : chunk_lb) lower = std::max(lower, v);

  // Pass 2: exact bottleneck assignment for every configuration whose greedy
  // bound exceeds the lower bound; all others are already dominated. Budget
  // accounting: one comparison per configuration (its greedy tuple) plus one
  // per improving complete assignment. Totals are schedule-independent.
  std::atomic<std::size_t> spent{combos};
  std::atomic<bool> over_budget{false};
  std::vector<double> chunk_best(chunk_count(combos), lower);
  parallel_for_chunks(combos, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<int> u;
    unrank_combination(begin, t.ny, m, u);
    std::vector<char> used(t.nx, 0);
    double local = lower;
    for (std::size_t r = begin; r < end; ++r) {
      if (over_budget.load(std::memory_order_relaxed)) return;
      const double ub = greedy_bound(u, t, used);
      if (ub > lower) {
        std::size_t leaves = 0;
        double best = ub;
        std::fill(used.begin(), used.end(), 0);
        exact_assign(u, t, 0, 0.0, best, used, leaves);
        local = std::max(local, best);
        if (spent.fetch_add(leaves, std::memory_order_relaxed) + leaves > tuple_budget)
          over_budget.store(true, std::memory_order_relaxed);
      }
      if (r + 1 < end) next_combination(u, t.ny);
    }
    chunk_best[chunk] = local;
  });
  if (over_budget.load())
    fail(Err::BudgetExceeded,
         "assignment search exceeded tuple budget of " + std::to_string(tuple_budget));

  double out = lower;
  for (double v : chunk_best) out = std::max(out, v);
  return out;
}

}  // namespace riplayer
