// Command-line front end: hierarchy construction, layer/branch extraction,
// stability reports, and the seeded corpus runner.
//
// Exit codes: 0 success, 1 usage error, 2 validation failure, 3 checks ran
// and found violations.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "riplayer/generate.hpp"
#include "riplayer/io.hpp"
#include "riplayer/layers.hpp"
#include "riplayer/stability.hpp"

namespace {

using riplayer::Err;
using riplayer::Error;

struct SpaceArgs {
  std::string points_path;
  std::string matrix_path;
  riplayer::PointCloud cloud;  // filled when points_path is used
};

struct CommonArgs {
  int k = 0;
  std::string metric = "euclidean";
  std::string format;
  double snap_eps = 0.0;
  bool dedup = false;
  std::string output;
};

void emit(const std::string& output, const std::string& content) {
  if (output.empty()) {
    std::cout << content;
    return;
  }
  riplayer::write_text_file(output, content);
}

riplayer::MetricSpace load_space(SpaceArgs& args, const CommonArgs& common) {
  const auto kind = riplayer::parse_metric_kind(common.metric);
  if (!kind) riplayer::fail(Err::BadInput, "unknown metric '" + common.metric + "'");
  if (!args.points_path.empty()) {
    args.cloud = riplayer::read_points_csv(args.points_path);
    return riplayer::MetricSpace::from_points(args.cloud.points, *kind, common.dedup,
                                              args.cloud.labels);
  }
  return riplayer::read_distance_matrix(args.matrix_path);
}

int cmd_build(SpaceArgs& x, const CommonArgs& common, bool layers_mode) {
  const riplayer::MetricSpace space = load_space(x, common);
  const riplayer::SegmentForest forest = riplayer::build_forest(space, common.k, common.snap_eps);
  std::string format = common.format.empty() ? "json" : common.format;
  if (format == "json") {
    const auto j = layers_mode ? riplayer::layers_to_json(forest) : forest.to_json();
    emit(common.output, j.dump(2) + "\n");
  } else if (format == "dot") {
    emit(common.output, riplayer::layers_to_dot(forest));
  } else {
    riplayer::fail(Err::BadInput, "format '" + format + "' not supported here (json|dot)");
  }
  return 0;
}

int cmd_stability(SpaceArgs& x, SpaceArgs& y, const CommonArgs& common,
                  std::optional<double> r, const std::string& embed_map_path,
                  std::size_t tuple_budget, bool strict_l16) {
  riplayer::MetricSpace sx = load_space(x, common);
  riplayer::MetricSpace sy = load_space(y, common);

  std::vector<int> embed;
  if (!embed_map_path.empty()) {
    embed = riplayer::read_embed_map(embed_map_path, sx.size());
  } else if (!x.points_path.empty() && !y.points_path.empty()) {
    embed = riplayer::embed_by_coordinates(x.cloud, y.cloud);
  } else {
    // matrix inputs: X must be the leading principal block of Y
    if (sx.size() > sy.size())
      riplayer::fail(Err::BadInput, "subspace larger than superspace");
    embed.resize(sx.size());
    for (std::size_t i = 0; i < sx.size(); ++i) embed[i] = static_cast<int>(i);
  }

  riplayer::Inclusion incl(std::move(sx), std::move(sy), std::move(embed));
  const riplayer::InclusionPair pair =
      riplayer::make_inclusion_pair(std::move(incl), common.k, r, tuple_budget, common.snap_eps);
  const riplayer::StabilityReport report =
      riplayer::check_all(pair, riplayer::CheckOptions{strict_l16});

  std::string format = common.format.empty() ? "json" : common.format;
  if (format == "json")
    emit(common.output, riplayer::report_to_json(report).dump(2) + "\n");
  else if (format == "md")
    emit(common.output, riplayer::report_to_markdown(report));
  else
    riplayer::fail(Err::BadInput, "format '" + format + "' not supported here (json|md)");
  return report.all_passed() ? 0 : 3;
}

int cmd_generate(const riplayer::GenerateOptions& options, const CommonArgs& common) {
  const riplayer::CorpusReport report = riplayer::run_corpus(options);
  std::string format = common.format.empty() ? "json" : common.format;
  if (format == "json")
    emit(common.output, riplayer::corpus_report_to_json(report).dump(2) + "\n");
  else if (format == "md")
    emit(common.output, riplayer::corpus_report_to_markdown(report));
  else
    riplayer::fail(Err::BadInput, "format '" + format + "' not supported here (json|md)");
  return report.violations_total == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degree-Rips layer-point hierarchies and stability checks"};
  app.require_subcommand(1);

  SpaceArgs x, y;
  CommonArgs common;
  std::optional<double> r;
  std::string embed_map_path;
  std::size_t tuple_budget = riplayer::kDefaultTupleBudget;
  bool strict_l16 = false;
  riplayer::GenerateOptions gen;

  const auto add_x_input = [&](CLI::App* cmd) {
    auto* p = cmd->add_option("--points", x.points_path, "point-cloud CSV for X");
    auto* m = cmd->add_option("--dist-matrix", x.matrix_path, "distance-matrix file for X");
    p->excludes(m);
    m->excludes(p);
    cmd->callback([&, p, m] {
      if (p->count() + m->count() != 1)
        throw CLI::ValidationError("exactly one of --points/--dist-matrix is required");
    });
  };
  const auto add_common = [&](CLI::App* cmd, const std::string& formats) {
    cmd->add_option("--k", common.k, "density parameter")->check(CLI::NonNegativeNumber);
    cmd->add_option("--metric", common.metric, "euclidean|manhattan|chebyshev");
    cmd->add_option("--format", common.format, formats);
    cmd->add_option("--snap-eps", common.snap_eps, "merge grid events closer than this")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--dedup", common.dedup, "merge exact duplicate points instead of failing");
    cmd->add_option("-o,--output", common.output, "write the artifact here instead of stdout");
  };

  CLI::App* build = app.add_subcommand("build", "compute the cluster hierarchy of X");
  add_x_input(build);
  add_common(build, "json|dot");

  CLI::App* layers = app.add_subcommand("layers", "layer/branch points and parameters of X");
  add_x_input(layers);
  add_common(layers, "json|dot");

  CLI::App* stability =
      app.add_subcommand("stability", "check the interleaving claims for X inside Y");
  add_x_input(stability);
  {
    auto* p = stability->add_option("--points-y", y.points_path, "point-cloud CSV for Y");
    auto* m = stability->add_option("--dist-matrix-y", y.matrix_path,
                                    "distance-matrix file for Y");
    p->excludes(m);
    m->excludes(p);
  }
  add_common(stability, "json|md");
  stability->add_option("--r", r, "interleaving radius (must exceed the measured distance)");
  stability->add_option("--embed-map", embed_map_path,
                        "file of Y indices identifying each X point");
  stability->add_option("--tuple-budget", tuple_budget,
                        "refuse configuration enumerations beyond this many comparisons");
  stability->add_flag("--strict-l16", strict_l16, "add the hypothesis s > r to the L16 check");

  CLI::App* generate = app.add_subcommand("generate", "run the seeded random corpus");
  generate->add_option("--seed", gen.seed, "corpus seed");
  generate->add_option("--trials", gen.trials, "number of instances");
  generate->add_option("--tuple-budget", gen.tuple_budget, "per-instance enumeration budget");
  generate->add_flag("--strict-l16", gen.strict_l16, "add the hypothesis s > r to L16");
  generate->add_option("--format", common.format, "json|md");
  generate->add_option("-o,--output", common.output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // help/version exit cleanly; any parse failure is a usage error
    return code == 0 ? 0 : 1;
  }

  try {
    if (build->parsed()) return cmd_build(x, common, /*layers_mode=*/false);
    if (layers->parsed()) return cmd_build(x, common, /*layers_mode=*/true);
    if (stability->parsed()) {
      if (y.points_path.empty() && y.matrix_path.empty())
        throw Error(Err::BadInput, "stability needs --points-y or --dist-matrix-y");
      return cmd_stability(x, y, common, r, embed_map_path, tuple_budget, strict_l16);
    }
    if (generate->parsed()) return cmd_generate(gen, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
