#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "riplayer/layers.hpp"

namespace riplayer {

// A validated pair X included in Y with interleaving radius r, the
// nearest-point projection theta, and both hierarchies at density k.
struct InclusionPair {
  Inclusion incl;
  int k = 0;
  double r = 0.0;
  double hausdorff = 0.0;          // measured configuration-space distance
  std::vector<int> theta;          // Y index -> X index, nearest point
  SegmentForest fx, fy;
  std::vector<LayerPoint> lx, ly;  // layer points in segment order
  LayerParameters px, py;
};

// r defaults to just above the measured distance; a supplied r must exceed
// it strictly. theta picks the nearest X point, ties to the smallest index.
InclusionPair make_inclusion_pair(Inclusion incl, int k, std::optional<double> r = std::nullopt,
                                  std::size_t tuple_budget = kDefaultTupleBudget,
                                  double snap_eps = 0.0);

// Maximal layer point of Y below (p.birth, component of the embedded
// representative).
LayerPoint i_star(const InclusionPair& pair, const LayerPoint& p);

// Maximal layer point of X below (q.birth + 2r, component of theta of the
// representative). Throws ThetaNotVertex when the image is not a vertex of X
// at the shifted scale (possible for k >= 1 at small scales).
LayerPoint theta_star(const InclusionPair& pair, const LayerPoint& q);

// Same map evaluated from an explicit member of q's component; the result
// must not depend on the choice.
LayerPoint theta_star_from(const InclusionPair& pair, const LayerPoint& q, int member);

// Maximal layer point below (p.birth + 2r) along p's own component chain.
LayerPoint sigma_star(const SegmentForest& forest, double r, const LayerPoint& p);

struct CheckResult {
  std::string id;
  std::size_t tested = 0;
  std::vector<nlohmann::ordered_json> witnesses;
  std::size_t incidents = 0;  // instances skipped because theta was undefined

  bool passed() const { return witnesses.empty(); }
};

struct OffsetRecord {
  char space = 'X';
  double t = 0.0;
  double offset = 0.0;
};

struct StabilityReport {
  int k = 0;
  double r = 0.0;
  double hausdorff = 0.0;
  bool strict_l16 = false;
  std::size_t n_x = 0, n_y = 0;
  std::vector<CheckResult> checks;
  std::vector<OffsetRecord> offsets;
  std::vector<nlohmann::ordered_json> incidents;

  bool all_passed() const;
  const CheckResult* find(const std::string& id) const;
};

struct CheckOptions {
  bool strict_l16 = false;  // adds the hypothesis s > r to the L16 universe
};

// Runs every check over its full instance universe. Violations are data
// (witnesses), never errors; undefined theta evaluations are recorded as
// incidents rather than silently skipped.
StabilityReport check_all(const InclusionPair& pair, const CheckOptions& opt = {});

nlohmann::ordered_json report_to_json(const StabilityReport& report);
std::string report_to_markdown(const StabilityReport& report);

}  // namespace riplayer
