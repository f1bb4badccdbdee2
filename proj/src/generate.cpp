#include "riplayer/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "riplayer/parallel.hpp"

namespace riplayer {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<const char*, 18> kCheckIds = {
    "Lemma2", "Lemma3", "Lemma4", "Lemma6",   "Remark7", "Thm8-eq6", "Thm8-eq7",
    "Rel-eq8", "L10",   "C11",    "L12",      "L13",     "L14",      "C15",
    "L16",     "L17",   "Remark9", "internal-error"};

std::size_t check_slot(const std::string& id) {
  for (std::size_t i = 0; i < kCheckIds.size(); ++i)
    if (id == kCheckIds[i]) return i;
  return kCheckIds.size() - 1;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct TrialResult {
  std::array<std::size_t, kCheckIds.size()> tested{};
  std::array<std::size_t, kCheckIds.size()> violations{};
  std::array<std::size_t, kCheckIds.size()> incidents{};
  std::vector<std::pair<std::size_t, ordered_json>> samples;  // (slot, witness)

  void hit(const std::string& id, std::size_t trial, bool ok, ordered_json witness = {}) {
    const std::size_t slot = check_slot(id);
    ++tested[slot];
    if (!ok) {
      ++violations[slot];
      if (!witness.is_null()) {
        witness["trial"] = trial;
        samples.emplace_back(slot, std::move(witness));
      }
    }
  }
};

ordered_json lp_json(const SegmentForest& f, const LayerPoint& p) {
  ordered_json j;
  j["t"] = p.birth;
  j["members"] = f.segment(p.segment).members;
  return j;
}

// Structural laws of one hierarchy: branch/layer containment, join closure
// and minimality, the retraction laws, and the branch/layer/identity chain.
void structural_suite(const SegmentForest& f, char space, std::size_t trial, TrialResult& out) {
  const std::vector<LayerPoint> lps = layer_points(f);
  const std::vector<LayerPoint> bps = branch_points(f);

  const auto tag = [&](const LayerPoint& p) {
    ordered_json w;
    w["space"] = std::string(1, space);
    w["layer_point"] = lp_json(f, p);
    return w;
  };

  // branch points are layer points
  for (const LayerPoint& b : bps) {
    const bool ok = std::find(lps.begin(), lps.end(), b) != lps.end();
    out.hit("Lemma2", trial, ok, ok ? ordered_json{} : tag(b));
  }

  // at density zero the two sets coincide
  if (f.k() == 0) {
    const bool ok = bps.size() == lps.size();
    out.hit("Lemma3", trial, ok,
            ok ? ordered_json{}
               : ordered_json{{"space", std::string(1, space)},
                              {"layer_count", lps.size()},
                              {"branch_count", bps.size()}});
  }

  // pairwise order of layer points, reused below
  const std::size_t L = lps.size();
  std::vector<char> leq_mat(L * L, 0);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j)
      leq_mat[i * L + j] = f.leq(node_of(f, lps[i]), node_of(f, lps[j])) ? 1 : 0;

  // joins of layer points stay layer points and are least upper bounds
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i; j < L; ++j) {
      bool ok = true;
      std::size_t ci = L;
      try {
        const LayerPoint c = lub_layer(f, lps[i], lps[j]);
        ci = static_cast<std::size_t>(
            std::find(lps.begin(), lps.end(), c) - lps.begin());
        ok = ci < L && leq_mat[i * L + ci] && leq_mat[j * L + ci];
      } catch (const Error&) {
        ok = false;
      }
      if (ok)
        for (std::size_t o = 0; o < L && ok; ++o)
          if (leq_mat[i * L + o] && leq_mat[j * L + o]) ok = leq_mat[ci * L + o];
      ordered_json w;
      if (!ok) {
        w = tag(lps[i]);
        w["other"] = lp_json(f, lps[j]);
      }
      out.hit("Lemma4", trial, ok, std::move(w));
    }

  // representative nodes: every birth plus a mid-life scale per segment
  std::vector<NodeRef> universe;
  for (std::size_t s = 0; s < f.segments().size(); ++s) {
    const Segment& seg = f.segment(static_cast<int>(s));
    universe.push_back(f.node_of_segment(static_cast<int>(s)));
    const double mid =
        std::isinf(seg.death) ? seg.birth + 1.0 : (seg.birth + seg.death) / 2.0;
    if (mid > seg.birth) universe.push_back(NodeRef{mid, static_cast<int>(s), f.id()});
  }

  // max restricted to layer points is the identity
  for (const LayerPoint& p : lps) {
    const bool ok = max_layer_below(f, node_of(f, p)) == p;
    out.hit("Lemma6", trial, ok, ok ? ordered_json{} : tag(p));
  }
  // the retraction sits below the identity and preserves order
  for (const NodeRef& v : universe) {
    const LayerPoint mv = max_layer_below(f, v);
    bool ok = f.leq(node_of(f, mv), v);
    ordered_json w;
    if (!ok) {
      w["space"] = std::string(1, space);
      w["node_scale"] = v.s;
      w["node_members"] = f.segment(v.segment).members;
    }
    out.hit("Lemma6", trial, ok, std::move(w));
  }
  for (const NodeRef& v : universe)
    for (const NodeRef& u : universe) {
      if (!f.leq(v, u)) continue;
      const bool ok =
          f.leq(node_of(f, max_layer_below(f, v)), node_of(f, max_layer_below(f, u)));
      ordered_json w;
      if (!ok) {
        w["space"] = std::string(1, space);
        w["v_scale"] = v.s;
        w["u_scale"] = u.s;
      }
      out.hit("Lemma6", trial, ok, std::move(w));
    }

  // branch retraction <= layer retraction <= identity
  for (const NodeRef& v : universe) {
    const LayerPoint ml = max_layer_below(f, v);
    const LayerPoint mb = max_branch_below(f, v);
    const bool ok =
        f.leq(node_of(f, mb), node_of(f, ml)) && f.leq(node_of(f, ml), v);
    ordered_json w;
    if (!ok) {
      w["space"] = std::string(1, space);
      w["node_scale"] = v.s;
    }
    out.hit("Remark7", trial, ok, std::move(w));
  }
}

TrialResult run_trial(const GenerateOptions& opt, std::size_t trial) {
  TrialResult out;
  try {
    const TrialInstance inst =
        random_instance(opt.seed, trial, opt.n_min, opt.n_max, opt.k_max);
    MetricSpace X = MetricSpace::from_points(inst.x_points, MetricKind::euclidean);
    MetricSpace Y = MetricSpace::from_points(inst.y_points, MetricKind::euclidean);

    if (X.size() < static_cast<std::size_t>(inst.k) + 1) {
      // the tuple configuration space of X is empty; only the structural
      // suite applies (both hierarchies are empty or X-only)
      structural_suite(build_forest(X, inst.k), 'X', trial, out);
      structural_suite(build_forest(Y, inst.k), 'Y', trial, out);
      return out;
    }

    std::vector<int> embed(X.size());
    for (std::size_t i = 0; i < embed.size(); ++i) embed[i] = static_cast<int>(i);
    Inclusion incl(std::move(X), std::move(Y), std::move(embed));
    InclusionPair pair =
        make_inclusion_pair(std::move(incl), inst.k, std::nullopt, opt.tuple_budget);

    structural_suite(pair.fx, 'X', trial, out);
    structural_suite(pair.fy, 'Y', trial, out);

    const StabilityReport report = check_all(pair, CheckOptions{opt.strict_l16});
    for (const CheckResult& c : report.checks) {
      const std::size_t slot = check_slot(c.id);
      out.tested[slot] += c.tested;
      out.violations[slot] += c.witnesses.size();
      out.incidents[slot] += c.incidents;
      for (std::size_t w = 0; w < c.witnesses.size() && w < 2; ++w) {
        ordered_json witness = c.witnesses[w];
        witness["trial"] = trial;
        out.samples.emplace_back(slot, std::move(witness));
      }
    }
    for (const OffsetRecord& o : report.offsets) {
      const bool ok = o.offset >= 0.0 && o.offset <= 2.0 * pair.r;
      ordered_json w;
      if (!ok) {
        w["space"] = std::string(1, o.space);
        w["t"] = o.t;
        w["offset"] = o.offset;
      }
      out.hit("Remark9", trial, ok, std::move(w));
    }
  } catch (const std::exception& e) {
    ordered_json w;
    w["error"] = e.what();
    out.hit("internal-error", trial, false, std::move(w));
  }
  return out;
}

}  // namespace

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

TrialInstance random_instance(std::uint64_t seed, std::size_t trial, int n_min, int n_max,
                              int k_max) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(0x51ABE17EULL + trial)));
  TrialInstance inst;
  inst.n = n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - n_min + 1));
  inst.k = static_cast<int>(rng() % static_cast<std::uint64_t>(k_max + 1));

  const auto is_duplicate = [](const std::vector<std::vector<double>>& pts,
                               const std::vector<double>& p) {
    return std::find(pts.begin(), pts.end(), p) != pts.end();
  };

  for (int i = 0; i < inst.n; ++i) {
    std::vector<double> p;
    do {
      p = {uniform01(rng), uniform01(rng)};
    } while (is_duplicate(inst.x_points, p));
    inst.x_points.push_back(std::move(p));
  }

  const int extras_max = (inst.n + 3) / 4;
  inst.extras = static_cast<int>(rng() % static_cast<std::uint64_t>(extras_max + 1));
  std::vector<int> bases(inst.n);
  for (int i = 0; i < inst.n; ++i) bases[i] = i;
  for (int i = 0; i < inst.extras; ++i) {  // partial shuffle: distinct bases
    const int j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(inst.n - i));
    std::swap(bases[i], bases[j]);
  }

  inst.y_points = inst.x_points;
  for (int i = 0; i < inst.extras; ++i) {
    const std::vector<double>& base = inst.x_points[bases[i]];
    std::vector<double> p;
    do {
      const double angle = 2.0 * 3.14159265358979323846 * uniform01(rng);
      const double radius = kJitterRadius * uniform01(rng);
      p = {base[0] + radius * std::cos(angle), base[1] + radius * std::sin(angle)};
    } while (is_duplicate(inst.y_points, p));
    inst.y_points.push_back(std::move(p));
  }
  return inst;
}

const CheckTally* CorpusReport::find(const std::string& id) const {
  for (const CheckTally& t : tallies)
    if (t.id == id) return &t;
  return nullptr;
}

CorpusReport run_corpus(const GenerateOptions& options) {
  CorpusReport report;
  report.options = options;
  report.trials_run = options.trials;

  std::vector<TrialResult> results(options.trials);
  parallel_for_chunks(options.trials, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) results[t] = run_trial(options, t);
  });

  report.tallies.resize(kCheckIds.size());
  for (std::size_t i = 0; i < kCheckIds.size(); ++i) report.tallies[i].id = kCheckIds[i];
  std::vector<std::size_t> sample_count(kCheckIds.size(), 0);
  for (const TrialResult& tr : results) {
    for (std::size_t i = 0; i < kCheckIds.size(); ++i) {
      report.tallies[i].tested += tr.tested[i];
      report.tallies[i].violations += tr.violations[i];
      report.tallies[i].incidents += tr.incidents[i];
    }
    for (const auto& [slot, witness] : tr.samples) {
      if (sample_count[slot] >= 3) continue;
      ++sample_count[slot];
      ordered_json s;
      s["id"] = kCheckIds[slot];
      s["witness"] = witness;
      report.samples.push_back(std::move(s));
    }
  }
  for (const CheckTally& t : report.tallies) report.violations_total += t.violations;
  return report;
}

ordered_json corpus_report_to_json(const CorpusReport& R) {
  ordered_json out;
  out["seed"] = R.options.seed;
  out["trials"] = R.options.trials;
  out["n_range"] = {R.options.n_min, R.options.n_max};
  out["k_max"] = R.options.k_max;
  out["jitter_radius"] = kJitterRadius;
  out["tuple_budget"] = R.options.tuple_budget;
  out["strict_l16"] = R.options.strict_l16;
  out["tuple_metric"] = "ordered (k+1)-tuples of distinct points with the max metric";
  ordered_json checks = ordered_json::array();
  for (const CheckTally& t : R.tallies) {
    if (t.tested == 0 && t.violations == 0 && t.incidents == 0) continue;
    ordered_json e;
    e["id"] = t.id;
    e["tested"] = t.tested;
    e["violations"] = t.violations;
    e["incidents"] = t.incidents;
    checks.push_back(std::move(e));
  }
  out["checks"] = std::move(checks);
  out["witness_samples"] = R.samples;
  out["violations_total"] = R.violations_total;
  return out;
}

std::string corpus_report_to_markdown(const CorpusReport& R) {
  std::ostringstream md;
  md << "# Corpus report\n\n";
  md << "- seed: " << R.options.seed << "\n";
  md << "- trials: " << R.options.trials << "\n";
  md << "- n range: [" << R.options.n_min << ", " << R.options.n_max << "]\n";
  md << "- k max: " << R.options.k_max << "\n";
  md << "- jitter radius: " << kJitterRadius << "\n";
  md << "- tuple metric: ordered (k+1)-tuples of distinct points with the max metric\n\n";
  md << "| check | tested | violations | incidents |\n";
  md << "|-------|--------|------------|-----------|\n";
  for (const CheckTally& t : R.tallies) {
    if (t.tested == 0 && t.violations == 0 && t.incidents == 0) continue;
    md << "| " << t.id << " | " << t.tested << " | " << t.violations << " | " << t.incidents
       << " |\n";
  }
  md << "\n";
  if (!R.samples.empty()) {
    md << "## Witness samples\n\n";
    for (const auto& s : R.samples) md << "- `" << s.dump() << "`\n";
    md << "\n";
  }
  md << "Total violations: " << R.violations_total << "\n";
  return md.str();
}

}  // namespace riplayer
