#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "riplayer/stability.hpp"

namespace riplayer {

// Random instance shape: point clouds in the unit square, the superspace
// adds jittered copies of existing points.
struct TrialInstance {
  int n = 0;
  int k = 0;
  int extras = 0;
  std::vector<std::vector<double>> x_points;
  std::vector<std::vector<double>> y_points;  // x_points plus the extras
};

inline constexpr double kJitterRadius = 0.01;

double uniform01(std::mt19937_64& rng);
TrialInstance random_instance(std::uint64_t seed, std::size_t trial, int n_min = 2,
                              int n_max = 32, int k_max = 3);

struct GenerateOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::size_t tuple_budget = kDefaultTupleBudget;
  bool strict_l16 = false;
  int n_min = 2;
  int n_max = 32;
  int k_max = 3;
};

struct CheckTally {
  std::string id;
  std::size_t tested = 0;
  std::size_t violations = 0;
  std::size_t incidents = 0;
};

struct CorpusReport {
  GenerateOptions options;
  std::size_t trials_run = 0;
  std::vector<CheckTally> tallies;
  std::vector<nlohmann::ordered_json> samples;  // capped witness samples per check
  std::size_t violations_total = 0;

  const CheckTally* find(const std::string& id) const;
};

// Builds `trials` seeded instances, runs the structural invariants on both
// hierarchies and every stability check on the pair, and aggregates in trial
// order. Trials run in parallel; the report is byte-deterministic per seed.
CorpusReport run_corpus(const GenerateOptions& options);

nlohmann::ordered_json corpus_report_to_json(const CorpusReport& report);
std::string corpus_report_to_markdown(const CorpusReport& report);

}  // namespace riplayer
