#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omatch/model.hpp"

// Experiment harness: seeded instance corpora, the algorithm matrix, and CSV
// metric reports. A fixed config and seed reproduce byte-identical reports
// except for the timing column.

namespace omatch {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::vector<int> sizes = {4, 5, 6};
  int trials = 3;
  ValuationKind valuation_kind = ValuationKind::UnitSum;
  std::vector<std::string> algorithms = {"welfare_optimal", "adaptive", "ordinal_baseline"};
  std::vector<PriorityKind> kinds = {PriorityKind::ParetoOnly, PriorityKind::RankMaximal,
                                     PriorityKind::MaxCardRankMaximal, PriorityKind::Fair};
  std::vector<double> epsilons = {0.5};
  double tie_prob = 0.15;
  double acceptability_prob = 0.85;
  std::string out_path;  // empty: stdout

  void check() const;  // throws on invalid fields
};

ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig config_from_file(const std::string& path);

/// One row per (size, trial, algorithm, kind, epsilon): welfare, the
/// class-optimal comparator (enumeration oracle up to n = 8, full-information
/// solve above), the welfare ratio, and query counts.
std::string run_suite(const ExperimentConfig& config);

/// Adversarial lower-bound harness rows per size.
std::string run_adversary_suite(const ExperimentConfig& config);

/// Cross-checks the composite-weight solver against the enumeration oracle
/// and the big-integer reference on a seeded corpus. Returns the number of
/// mismatches (0 = all good) and appends CSV rows to `csv`.
int run_oracle_check(const ExperimentConfig& config, std::string& csv);

}  // namespace omatch
