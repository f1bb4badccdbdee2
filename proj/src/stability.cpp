#include "riplayer/stability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace riplayer {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json lp_json(const SegmentForest& forest, const LayerPoint& p) {
  ordered_json j;
  j["t"] = p.birth;
  j["members"] = forest.segment(p.segment).members;
  return j;
}

}  // namespace

InclusionPair make_inclusion_pair(Inclusion incl, int k, std::optional<double> r,
                                  std::size_t tuple_budget, double snap_eps) {
  const double dh = hausdorff_config(incl, k, tuple_budget);
  const double rr = r ? *r : dh * (1.0 + 1e-9) + 1e-12;
  if (!(rr > dh))
    fail(Err::RTooSmall, "r = " + std::to_string(rr) +
                             " must exceed the measured configuration-space distance " +
                             std::to_string(dh));

  const MetricSpace& X = incl.sub();
  const MetricSpace& Y = incl.sup();
  std::vector<int> theta(Y.size(), -1);
  for (std::size_t x = 0; x < X.size(); ++x) theta[incl.embed()[x]] = static_cast<int>(x);
  for (std::size_t y = 0; y < Y.size(); ++y) {
    if (theta[y] >= 0) continue;  // points of X stay fixed
    int best = -1;
    double best_d = 0.0;
    for (std::size_t x = 0; x < X.size(); ++x) {
      const double d = Y.dist(y, incl.embed()[x]);
      if (best < 0 || d < best_d) {
        best = static_cast<int>(x);
        best_d = d;
      }
    }
    theta[y] = best;
  }

  SegmentForest fx = build_forest(X, k, snap_eps);
  SegmentForest fy = build_forest(Y, k, snap_eps);
  InclusionPair pair{std::move(incl), k,  rr, dh, std::move(theta),
                     std::move(fx),   std::move(fy), {}, {}, {}, {}};
  pair.lx = layer_points(pair.fx);
  pair.ly = layer_points(pair.fy);
  pair.px = layer_parameters(pair.fx);
  pair.py = layer_parameters(pair.fy);
  return pair;
}

LayerPoint i_star(const InclusionPair& pair, const LayerPoint& p) {
  const int rep = pair.fx.segment(p.segment).members.front();
  const int y = pair.incl.embed()[rep];
  // an X vertex keeps its neighbours inside Y, so the node always exists
  const NodeRef node = pair.fy.node_at(p.birth, y);
  return max_layer_below(pair.fy, node);
}

LayerPoint theta_star_from(const InclusionPair& pair, const LayerPoint& q, int member) {
  const int x = pair.theta[member];
  const double target = q.birth + 2.0 * pair.r;
  try {
    const NodeRef node = pair.fx.node_at(target, x);
    return max_layer_below(pair.fx, node);
  } catch (const Error& e) {
    if (e.code() == Err::NotAVertex)
      fail(Err::ThetaNotVertex, "theta(" + pair.incl.sup().label(member) + ") = " +
                                    pair.incl.sub().label(x) +
                                    " is not a vertex at scale " + std::to_string(target));
    throw;
  }
}

LayerPoint theta_star(const InclusionPair& pair, const LayerPoint& q) {
  return theta_star_from(pair, q, pair.fy.segment(q.segment).members.front());
}

LayerPoint sigma_star(const SegmentForest& forest, double r, const LayerPoint& p) {
  const int seg = forest.chain_at(p.segment, p.birth + 2.0 * r);
  return layer_point_of_segment(forest, seg);
}

bool StabilityReport::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed()) return false;
  return true;
}

const CheckResult* StabilityReport::find(const std::string& id) const {
  for (const CheckResult& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

StabilityReport check_all(const InclusionPair& P, const CheckOptions& opt) {
  StabilityReport R;
  R.k = P.k;
  R.r = P.r;
  R.hausdorff = P.hausdorff;
  R.strict_l16 = opt.strict_l16;
  R.n_x = P.incl.sub().size();
  R.n_y = P.incl.sup().size();

  const double two_r = 2.0 * P.r;
  // r is an arbitrary bound strictly above the measured distance, so the
  // sharp testable form of the open-interval statements closes at 2*d_H.
  const double sharp = 2.0 * P.hausdorff;

  CheckResult eq6{"Thm8-eq6"}, eq7{"Thm8-eq7"}, eq8{"Rel-eq8"}, l10{"L10"}, c11{"C11"},
      l12{"L12"}, l13{"L13"}, l14{"L14"}, c15{"C15"}, l16{"L16"}, l17{"L17"};

  auto incident = [&R](CheckResult& c, const SegmentForest& f, char space, const LayerPoint& q,
                       double scale) {
    ++c.incidents;
    ordered_json inc;
    inc["check"] = c.id;
    inc["space"] = std::string(1, space);
    inc["layer_point"] = lp_json(f, q);
    inc["shifted_scale"] = scale;
    inc["reason"] = "theta image is not a vertex at the shifted scale";
    R.incidents.push_back(std::move(inc));
  };

  // theta_* i_* <= sigma_* on layer points of X
  for (const LayerPoint& p : P.lx) {
    const LayerPoint iy = i_star(P, p);
    LayerPoint back;
    try {
      back = theta_star(P, iy);
    } catch (const Error& e) {
      if (e.code() == Err::ThetaNotVertex) {
        incident(eq6, P.fy, 'Y', iy, iy.birth + two_r);
        continue;
      }
      throw;
    }
    ++eq6.tested;
    const LayerPoint sp = sigma_star(P.fx, P.r, p);
    if (!P.fx.leq(node_of(P.fx, back), node_of(P.fx, sp))) {
      ordered_json w;
      w["layer_point"] = lp_json(P.fx, p);
      w["theta_i"] = lp_json(P.fx, back);
      w["sigma"] = lp_json(P.fx, sp);
      eq6.witnesses.push_back(std::move(w));
    }
  }

  // i_* theta_* <= sigma_* on layer points of Y
  for (const LayerPoint& q : P.ly) {
    LayerPoint bx;
    try {
      bx = theta_star(P, q);
    } catch (const Error& e) {
      if (e.code() == Err::ThetaNotVertex) {
        incident(eq7, P.fy, 'Y', q, q.birth + two_r);
        continue;
      }
      throw;
    }
    ++eq7.tested;
    const LayerPoint iy = i_star(P, bx);
    const LayerPoint sp = sigma_star(P.fy, P.r, q);
    if (!P.fy.leq(node_of(P.fy, iy), node_of(P.fy, sp))) {
      ordered_json w;
      w["layer_point"] = lp_json(P.fy, q);
      w["i_theta"] = lp_json(P.fy, iy);
      w["sigma"] = lp_json(P.fy, sp);
      eq7.witnesses.push_back(std::move(w));
    }
  }

  // p <= sigma_*(p) <= (p.birth + 2r, same chain), on both spaces
  const auto rel8_space = [&](const SegmentForest& f, const std::vector<LayerPoint>& lps,
                              char space) {
    for (const LayerPoint& p : lps) {
      ++eq8.tested;
      const LayerPoint sp = sigma_star(f, P.r, p);
      const int up_seg = f.chain_at(p.segment, p.birth + two_r);
      const NodeRef upper{p.birth + two_r, up_seg, f.id()};
      if (!(f.leq(node_of(f, p), node_of(f, sp)) && f.leq(node_of(f, sp), upper))) {
        ordered_json w;
        w["space"] = std::string(1, space);
        w["layer_point"] = lp_json(f, p);
        w["sigma"] = lp_json(f, sp);
        eq8.witnesses.push_back(std::move(w));
      }
    }
  };
  rel8_space(P.fx, P.lx, 'X');
  rel8_space(P.fy, P.ly, 'Y');

  // pairwise distances move by at most twice the measured distance under theta
  {
    const MetricSpace& X = P.incl.sub();
    const MetricSpace& Y = P.incl.sup();
    for (std::size_t y1 = 0; y1 < Y.size(); ++y1)
      for (std::size_t y2 = y1 + 1; y2 < Y.size(); ++y2) {
        ++l10.tested;
        const double d = Y.dist(y1, y2);
        const double t = X.dist(P.theta[y1], P.theta[y2]);
        if (std::abs(d - t) > sharp) {
          ordered_json w;
          w["y1"] = Y.label(y1);
          w["y2"] = Y.label(y2);
          w["d"] = d;
          w["theta_d"] = t;
          w["bound"] = sharp;
          l10.witnesses.push_back(std::move(w));
        }
      }
  }

  // every event parameter of Y sits near an event parameter of X
  {
    const std::vector<double>& gx = P.fx.grid();
    for (double v : P.fy.grid()) {
      ++c11.tested;
      auto it = std::lower_bound(gx.begin(), gx.end(), v);
      double nearest = std::numeric_limits<double>::infinity();
      if (it != gx.end()) nearest = *it - v;
      if (it != gx.begin()) nearest = std::min(nearest, v - *(it - 1));
      if (nearest > sharp) {
        ordered_json w;
        w["grid_value"] = v;
        w["nearest_gap"] = nearest;
        w["bound"] = sharp;
        c11.witnesses.push_back(std::move(w));
      }
    }
  }

  // between consecutive events with no layer parameter, blocks map bijectively
  const auto l12_space = [&](const SegmentForest& f, const LayerParameters& params,
                             char space) {
    const std::vector<double>& grid = f.grid();
    for (std::size_t gi = 0; gi + 1 < grid.size(); ++gi) {
      if (params.contains(grid[gi + 1])) continue;  // a birth lands in the window
      ++l12.tested;
      std::map<int, int> block_map;
      std::set<int> targets, next_blocks;
      bool injective = true;
      for (std::size_t p = 0; p < f.point_count(); ++p) {
        const int b = f.segment_at(gi + 1, static_cast<int>(p));
        if (b >= 0) next_blocks.insert(b);
        const int a = f.segment_at(gi, static_cast<int>(p));
        if (a < 0) continue;
        if (block_map.emplace(a, b).second) injective &= targets.insert(b).second;
      }
      const bool surjective =
          std::all_of(next_blocks.begin(), next_blocks.end(),
                      [&](int b) { return targets.count(b) > 0; });
      if (!injective || !surjective) {
        ordered_json w;
        w["space"] = std::string(1, space);
        w["s"] = grid[gi];
        w["t"] = grid[gi + 1];
        w["injective"] = injective;
        w["surjective"] = surjective;
        l12.witnesses.push_back(std::move(w));
      }
    }
  };
  l12_space(P.fx, P.px, 'X');
  l12_space(P.fy, P.py, 'Y');

  const auto gate_x = [&](double t) {
    if (!(P.r < t)) return false;
    const auto tp = P.px.successor(t);
    return !tp || t < *tp - two_r;
  };

  // block map X -> Y is a bijection at gated layer parameters of X
  for (double t : P.px.values) {
    if (!gate_x(t)) continue;
    ++l13.tested;
    const std::size_t gix = P.fx.grid_index(t);
    const std::size_t giy = P.fy.grid_index(t);
    std::map<int, int> image;  // X segment -> Y segment
    std::set<int> targets, y_blocks;
    bool injective = true;
    for (std::size_t p = 0; p < P.fy.point_count(); ++p) {
      const int b = P.fy.segment_at(giy, static_cast<int>(p));
      if (b >= 0) y_blocks.insert(b);
    }
    for (std::size_t p = 0; p < P.fx.point_count(); ++p) {
      const int a = P.fx.segment_at(gix, static_cast<int>(p));
      if (a < 0) continue;
      const int b = P.fy.segment_at(giy, P.incl.embed()[p]);
      if (image.emplace(a, b).second) injective &= targets.insert(b).second;
    }
    const bool surjective = std::all_of(y_blocks.begin(), y_blocks.end(),
                                        [&](int b) { return targets.count(b) > 0; });
    if (!injective || !surjective) {
      ordered_json w;
      w["t"] = t;
      w["injective"] = injective;
      w["surjective"] = surjective;
      w["x_blocks"] = image.size();
      w["y_blocks"] = y_blocks.size();
      l13.witnesses.push_back(std::move(w));
    }
  }

  // the maximal layer point of Y below a gated X layer point sits in [t-2r, t]
  for (const LayerPoint& p : P.lx) {
    if (!gate_x(p.birth)) continue;
    ++l14.tested;
    const LayerPoint q = i_star(P, p);
    if (!(p.birth - two_r <= q.birth && q.birth <= p.birth)) {
      ordered_json w;
      w["layer_point"] = lp_json(P.fx, p);
      w["s"] = q.birth;
      l14.witnesses.push_back(std::move(w));
    }
  }

  // gated layer points of X are recovered exactly by theta_* i_*
  for (const LayerPoint& p : P.lx) {
    if (!gate_x(p.birth)) continue;
    const LayerPoint q = i_star(P, p);
    LayerPoint back;
    try {
      back = theta_star(P, q);
    } catch (const Error& e) {
      if (e.code() == Err::ThetaNotVertex) {
        incident(c15, P.fy, 'Y', q, q.birth + two_r);
        continue;
      }
      throw;
    }
    ++c15.tested;
    if (!(back == p)) {
      ordered_json w;
      w["layer_point"] = lp_json(P.fx, p);
      w["round_trip"] = lp_json(P.fx, back);
      c15.witnesses.push_back(std::move(w));
    }
  }

  // the maximal layer point of X below the shifted theta image sits in [s, s+2r]
  for (const LayerPoint& q : P.ly) {
    const auto sp = P.py.successor(q.birth);
    if (sp && !(q.birth < *sp - two_r)) continue;
    if (opt.strict_l16 && !(q.birth > P.r)) continue;
    LayerPoint back;
    try {
      back = theta_star(P, q);
    } catch (const Error& e) {
      if (e.code() == Err::ThetaNotVertex) {
        incident(l16, P.fy, 'Y', q, q.birth + two_r);
        continue;
      }
      throw;
    }
    ++l16.tested;
    if (!(q.birth <= back.birth && back.birth <= q.birth + two_r)) {
      ordered_json w;
      w["layer_point"] = lp_json(P.fy, q);
      w["t"] = back.birth;
      w["mapped"] = lp_json(P.fx, back);
      l16.witnesses.push_back(std::move(w));
    }
  }

  // density zero: the same bound without the successor hypothesis, plus the
  // interval containment of Y layer parameters
  if (P.k == 0) {
    for (const LayerPoint& q : P.ly) {
      LayerPoint back;
      try {
        back = theta_star(P, q);
      } catch (const Error& e) {
        if (e.code() == Err::ThetaNotVertex) {
          incident(l17, P.fy, 'Y', q, q.birth + two_r);
          continue;
        }
        throw;
      }
      ++l17.tested;
      const bool shift_ok = q.birth <= back.birth && back.birth <= q.birth + two_r;
      const auto it = std::lower_bound(P.px.values.begin(), P.px.values.end(), q.birth);
      const bool interval_ok = it != P.px.values.end() && *it <= q.birth + two_r;
      if (!shift_ok || !interval_ok) {
        ordered_json w;
        w["layer_point"] = lp_json(P.fy, q);
        w["t"] = back.birth;
        w["mapped"] = lp_json(P.fx, back);
        w["shift_ok"] = shift_ok;
        w["interval_ok"] = interval_ok;
        l17.witnesses.push_back(std::move(w));
      }
    }
  }

  // offset of sigma_* per layer point, expected inside [0, 2r]
  for (const LayerPoint& p : P.lx)
    R.offsets.push_back({'X', p.birth, sigma_star(P.fx, P.r, p).birth - p.birth});
  for (const LayerPoint& q : P.ly)
    R.offsets.push_back({'Y', q.birth, sigma_star(P.fy, P.r, q).birth - q.birth});

  R.checks = {std::move(eq6), std::move(eq7), std::move(eq8), std::move(l10),
              std::move(c11), std::move(l12), std::move(l13), std::move(l14),
              std::move(c15), std::move(l16), std::move(l17)};
  return R;
}

ordered_json report_to_json(const StabilityReport& R) {
  ordered_json out;
  ordered_json pair;
  pair["k"] = R.k;
  pair["r"] = R.r;
  pair["hausdorff"] = R.hausdorff;
  pair["n_x"] = R.n_x;
  pair["n_y"] = R.n_y;
  pair["tuple_metric"] = "ordered (k+1)-tuples of distinct points with the max metric";
  pair["strict_l16"] = R.strict_l16;
  out["pair"] = std::move(pair);

  ordered_json checks = ordered_json::array();
  for (const CheckResult& c : R.checks) {
    ordered_json e;
    e["id"] = c.id;
    e["tested"] = c.tested;
    e["passed"] = c.passed();
    e["witnesses"] = c.witnesses;
    e["incidents"] = c.incidents;
    checks.push_back(std::move(e));
  }
  out["checks"] = std::move(checks);

  ordered_json offsets = ordered_json::array();
  for (const OffsetRecord& o : R.offsets) {
    ordered_json e;
    e["space"] = std::string(1, o.space);
    e["t"] = o.t;
    e["offset"] = o.offset;
    offsets.push_back(std::move(e));
  }
  out["offsets"] = std::move(offsets);
  out["incidents"] = R.incidents;
  return out;
}

std::string report_to_markdown(const StabilityReport& R) {
  std::ostringstream md;
  md << "# Stability report\n\n";
  md << "- k: " << R.k << "\n";
  md << "- r: " << R.r << "\n";
  md << "- hausdorff: " << R.hausdorff << "\n";
  md << "- points: " << R.n_x << " in X, " << R.n_y << " in Y\n";
  md << "- tuple metric: ordered (k+1)-tuples of distinct points with the max metric\n";
  md << "- strict L16 hypothesis: " << (R.strict_l16 ? "on" : "off") << "\n\n";

  md << "| check | tested | passed | witnesses | incidents |\n";
  md << "|-------|--------|--------|-----------|-----------|\n";
  for (const CheckResult& c : R.checks)
    md << "| " << c.id << " | " << c.tested << " | " << (c.passed() ? "yes" : "NO") << " | "
       << c.witnesses.size() << " | " << c.incidents << " |\n";
  md << "\n";

  for (const CheckResult& c : R.checks) {
    if (c.witnesses.empty()) continue;
    md << "## " << c.id << " violations\n\n";
    for (const auto& w : c.witnesses) md << "- `" << w.dump() << "`\n";
    md << "\n";
  }

  md << "## Offsets\n\n";
  for (const OffsetRecord& o : R.offsets)
    md << "- " << o.space << " t=" << o.t << " offset=" << o.offset << "\n";
  md << "\n";

  if (!R.incidents.empty()) {
    md << "## Incidents\n\n";
    for (const auto& inc : R.incidents) md << "- `" << inc.dump() << "`\n";
    md << "\n";
  }
  return md.str();
}

}  // namespace riplayer
