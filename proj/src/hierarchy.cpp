#include "riplayer/hierarchy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

namespace riplayer {

namespace {

std::uint32_t next_forest_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1);
}

}  // namespace

SegmentForest build_forest(const MetricSpace& space, int k, double snap_eps) {
  if (k < 0) fail(Err::BadInput, "k must be non-negative");
  SegmentForest f;
  f.k_ = k;
  f.grid_ = parameter_grid(space, snap_eps);
  f.labels_ = space.labels();
  f.n_ = space.size();
  f.id_ = next_forest_id();

  const std::size_t n = space.size();
  std::vector<int32_t> reps;
  std::vector<int32_t> prev_seg(n, -1), cur_seg(n, -1);
  std::vector<std::pair<int32_t, int>> order;
  std::vector<int> ants;

  for (double s : f.grid_) {
    component_reps(space, s, k, reps);
    order.clear();
    for (std::size_t x = 0; x < n; ++x)
      if (reps[x] >= 0) order.emplace_back(reps[x], static_cast<int>(x));
    std::sort(order.begin(), order.end());

    std::fill(cur_seg.begin(), cur_seg.end(), -1);
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j < order.size() && order[j].first == order[i].first) ++j;
      // block = members order[i..j)
      ants.clear();
      for (std::size_t m = i; m < j; ++m) {
        const int32_t p = prev_seg[order[m].second];
        if (p >= 0 && (ants.empty() || std::find(ants.begin(), ants.end(), p) == ants.end()))
          ants.push_back(p);
      }
      std::sort(ants.begin(), ants.end());

      int sid;
      if (ants.size() == 1 && f.segments_[ants[0]].members.size() == j - i) {
        // member set unchanged: the previous segment extends through s
        sid = ants[0];
      } else {
        sid = static_cast<int>(f.segments_.size());
        Segment seg;
        seg.members.reserve(j - i);
        for (std::size_t m = i; m < j; ++m) seg.members.push_back(order[m].second);
        seg.birth = s;
        seg.antecedents = ants;
        for (int a : ants) {
          f.segments_[a].death = s;
          f.segments_[a].successor = sid;
        }
        f.segments_.push_back(std::move(seg));
      }
      for (std::size_t m = i; m < j; ++m) cur_seg[order[m].second] = sid;
      i = j;
    }
    f.stage_seg_.push_back(cur_seg);
    prev_seg = cur_seg;
  }
  return f;
}

std::size_t SegmentForest::grid_index(double s) const {
  if (s < 0.0 || std::isnan(s)) fail(Err::BelowFirstEvent, "parameter " + std::to_string(s));
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
  return static_cast<std::size_t>(it - grid_.begin()) - 1;  // grid_[0] == 0 <= s
}

int SegmentForest::chain_at(int seg, double s) const {
  while (segments_[seg].death <= s && segments_[seg].successor >= 0)
    seg = segments_[seg].successor;
  return seg;
}

NodeRef SegmentForest::node_at(double s, int point) const {
  if (point < 0 || static_cast<std::size_t>(point) >= n_)
    fail(Err::BadInput, "point index " + std::to_string(point) + " out of range");
  const std::size_t gi = grid_index(s);
  const int sid = stage_seg_[gi][point];
  if (sid < 0)
    fail(Err::NotAVertex,
         "point " + labels_[point] + " is not a vertex at scale " + std::to_string(s));
  return NodeRef{s, sid, id_};
}

void SegmentForest::check_ref(NodeRef ref) const {
  if (ref.forest != id_) fail(Err::ForestMismatch, "node belongs to a different hierarchy");
  if (ref.segment < 0 || static_cast<std::size_t>(ref.segment) >= segments_.size())
    fail(Err::BadInput, "segment id out of range");
  const Segment& seg = segments_[ref.segment];
  if (ref.s < seg.birth || ref.s >= seg.death)  // terminal segments have death = +inf
    fail(Err::BadInput, "node scale outside its segment's lifetime");
}

bool SegmentForest::leq(NodeRef a, NodeRef b) const {
  check_ref(a);
  check_ref(b);
  if (a.s > b.s) return false;
  return chain_at(a.segment, b.s) == b.segment;
}

NodeRef SegmentForest::lub(NodeRef a, NodeRef b) const {
  check_ref(a);
  check_ref(b);
  const double m = std::max(a.s, b.s);
  int ca = chain_at(a.segment, m);
  int cb = chain_at(b.segment, m);
  if (ca == cb) return NodeRef{m, ca, id_};
  for (;;) {
    const double da = segments_[ca].death;
    const double db = segments_[cb].death;
    const double next = std::min(da, db);
    if (std::isinf(next))
      fail(Err::NoCommonUpperBound, "chains end in distinct terminal segments");
    if (da == next) ca = segments_[ca].successor;
    if (db == next) cb = segments_[cb].successor;
    if (ca == cb) return NodeRef{next, ca, id_};
  }
}

nlohmann::ordered_json SegmentForest::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k_;
  j["grid"] = grid_;
  nlohmann::ordered_json segs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    nlohmann::ordered_json e;
    e["id"] = i;
    e["members"] = s.members;
    e["birth"] = s.birth;
    if (std::isinf(s.death))
      e["death"] = nullptr;
    else
      e["death"] = s.death;
    e["antecedents"] = s.antecedents;
    if (s.successor < 0)
      e["successor"] = nullptr;
    else
      e["successor"] = s.successor;
    segs.push_back(std::move(e));
  }
  j["segments"] = std::move(segs);
  return j;
}

SegmentForest SegmentForest::from_json(const nlohmann::ordered_json& j) {
  SegmentForest f;
  try {
    f.k_ = j.at("k").get<int>();
    f.grid_ = j.at("grid").get<std::vector<double>>();
    const auto& segs = j.at("segments");
    int expected_id = 0;
    for (const auto& e : segs) {
      if (e.at("id").get<int>() != expected_id++)
        fail(Err::BadInput, "segment ids must be dense and in order");
      Segment s;
      s.members = e.at("members").get<std::vector<int>>();
      s.birth = e.at("birth").get<double>();
      s.death = e.at("death").is_null() ? std::numeric_limits<double>::infinity()
                                        : e.at("death").get<double>();
      s.antecedents = e.at("antecedents").get<std::vector<int>>();
      s.successor = e.at("successor").is_null() ? -1 : e.at("successor").get<int>();
      f.segments_.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& ex) {
    fail(Err::BadInput, std::string("malformed hierarchy JSON: ") + ex.what());
  }
  if (f.grid_.empty() || f.grid_.front() != 0.0)
    fail(Err::BadInput, "grid must start at 0");
  int max_point = -1;
  for (const Segment& s : f.segments_)
    for (int p : s.members) max_point = std::max(max_point, p);
  f.n_ = static_cast<std::size_t>(max_point + 1);
  f.labels_.resize(f.n_);
  for (std::size_t i = 0; i < f.n_; ++i) f.labels_[i] = std::to_string(i);
  f.id_ = next_forest_id();
  f.rebuild_stage_lookup();
  return f;
}

void SegmentForest::rebuild_stage_lookup() {
  stage_seg_.assign(grid_.size(), std::vector<int32_t>(n_, -1));
  for (std::size_t sid = 0; sid < segments_.size(); ++sid) {
    const Segment& s = segments_[sid];
    const auto lo = std::lower_bound(grid_.begin(), grid_.end(), s.birth);
    if (lo == grid_.end() || *lo != s.birth) fail(Err::BadInput, "segment birth not on grid");
    const auto hi = std::isinf(s.death) ? grid_.end()
                                        : std::lower_bound(grid_.begin(), grid_.end(), s.death);
    for (auto it = lo; it != hi; ++it) {
      auto& stage = stage_seg_[static_cast<std::size_t>(it - grid_.begin())];
      for (int p : s.members) {
        if (stage[p] >= 0) fail(Err::BadInput, "segments overlap at one stage");
        stage[p] = static_cast<int32_t>(sid);
      }
    }
  }
}

}  // namespace riplayer
