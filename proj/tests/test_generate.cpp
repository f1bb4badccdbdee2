#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "riplayer/generate.hpp"

using namespace riplayer;

TEST_CASE("random_instance respects the configured shape") {
  for (std::size_t trial = 0; trial < 50; ++trial) {
    const TrialInstance inst = random_instance(99, trial);
    CHECK(inst.n >= 2);
    CHECK(inst.n <= 32);
    CHECK(inst.k >= 0);
    CHECK(inst.k <= 3);
    CHECK(inst.extras <= (inst.n + 3) / 4);
    REQUIRE(inst.y_points.size() == inst.x_points.size() + inst.extras);
    for (std::size_t i = 0; i < inst.x_points.size(); ++i)
      CHECK(inst.y_points[i] == inst.x_points[i]);
    // jittered copies stay close to some original
    for (std::size_t i = inst.x_points.size(); i < inst.y_points.size(); ++i) {
      double best = 1e9;
      for (const auto& p : inst.x_points) {
        const double dx = p[0] - inst.y_points[i][0];
        const double dy = p[1] - inst.y_points[i][1];
        best = std::min(best, dx * dx + dy * dy);
      }
      CHECK(best <= kJitterRadius * kJitterRadius);
    }
  }
}

TEST_CASE("same seed, same instance; different seed, different instance") {
  const TrialInstance a = random_instance(5, 3);
  const TrialInstance b = random_instance(5, 3);
  CHECK(a.x_points == b.x_points);
  CHECK(a.y_points == b.y_points);
  CHECK(a.k == b.k);
  const TrialInstance c = random_instance(6, 3);
  CHECK(a.x_points != c.x_points);
}

TEST_CASE("corpus reports are byte-deterministic per seed") {
  GenerateOptions opt;
  opt.seed = 42;
  opt.trials = 12;
  const CorpusReport a = run_corpus(opt);
  const CorpusReport b = run_corpus(opt);
  CHECK(corpus_report_to_json(a).dump() == corpus_report_to_json(b).dump());
  CHECK(corpus_report_to_markdown(a) == corpus_report_to_markdown(b));
}

TEST_CASE("the robust suite is clean on a small corpus") {
  GenerateOptions opt;
  opt.seed = 1;
  opt.trials = 30;
  const CorpusReport report = run_corpus(opt);
  CHECK(report.trials_run == 30);
  for (const char* id : {"Lemma2", "Lemma3", "Lemma4", "Lemma6", "Remark7", "Thm8-eq6",
                          "Thm8-eq7", "Rel-eq8", "L10", "C11", "L12", "L13", "L14", "C15",
                          "Remark9", "internal-error"}) {
    const CheckTally* t = report.find(id);
    REQUIRE(t != nullptr);
    CHECK_MESSAGE(t->violations == 0, std::string(id));
  }
  // substantial coverage actually ran
  CHECK(report.find("Lemma4")->tested > 0);
  CHECK(report.find("Thm8-eq6")->tested > 0);
  CHECK(report.find("L10")->tested > 0);
}

TEST_CASE("empty corpus yields an empty report") {
  GenerateOptions opt;
  opt.trials = 0;
  const CorpusReport report = run_corpus(opt);
  CHECK(report.violations_total == 0);
  for (const CheckTally& t : report.tallies) CHECK(t.tested == 0);
}
