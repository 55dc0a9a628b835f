#pragma once

#include <string>
#include <vector>

#include "omatch/model.hpp"

// Threshold-query access to a hidden valuation profile. Algorithms never see
// the profile itself, only answer bits obtained through a QuerySource, and
// every query is recorded in a ledger that enforces the budget discipline of
// its mode.

namespace omatch {

/// One bit of elicitation: is v_agent(object) >= threshold?
struct ThresholdQuery {
  int agent = 0;
  int object = 0;
  double threshold = 0.0;
};

/// Truthful answer from a known profile: 1 iff the value clears the
/// threshold, with an exact >= comparison.
bool answer(const ValuationProfile& hidden, const ThresholdQuery& q);

enum class LedgerMode { Adaptive, NonAdaptiveOnePerPair };

struct LedgerEntry {
  ThresholdQuery query;
  bool response = false;
  bool forced = false;  // answer implied by the valuation class, asked anyway
};

/// Append-only record of asked queries. In NonAdaptiveOnePerPair mode the
/// whole query set arrives as one batch before any answer is revealed, at
/// most one query per (agent, object) pair; violations throw immediately.
class QueryLedger {
 public:
  explicit QueryLedger(LedgerMode mode, int n) : mode_(mode), per_agent_(n, 0) {}

  LedgerMode mode() const { return mode_; }
  const std::vector<LedgerEntry>& entries() const { return entries_; }
  int total() const { return static_cast<int>(entries_.size()); }
  int count_for_agent(int agent) const { return per_agent_[agent]; }
  const std::vector<int>& per_agent_counts() const { return per_agent_; }

  void record(const LedgerEntry& entry);
  void seal();  // no further queries may be recorded
  bool sealed() const { return sealed_; }

  /// One JSON object per line: {"agent":i,"object":j,"t":x,"ans":0|1},
  /// 1-indexed.
  std::string to_json_lines() const;

 private:
  LedgerMode mode_;
  std::vector<LedgerEntry> entries_;
  std::vector<int> per_agent_;
  std::vector<char> pair_seen_;  // n*n bitmap, lazily sized, non-adaptive only
  bool sealed_ = false;
};

/// What an elicitation algorithm is allowed to touch: answer bits plus the
/// ledger they were recorded in.
class QuerySource {
 public:
  virtual ~QuerySource() = default;

  /// Adaptive mode only.
  virtual bool ask(const ThresholdQuery& q) = 0;

  /// Non-adaptive mode only: the full query set, answered in one shot and
  /// sealing the ledger. `forced[i]`, when given, marks queries whose answer
  /// is already implied by the valuation class.
  virtual std::vector<char> ask_batch(const std::vector<ThresholdQuery>& queries,
                                      const std::vector<char>* forced = nullptr) = 0;

  virtual const QueryLedger& ledger() const = 0;
  virtual int n() const = 0;
};

/// Honest oracle over a concrete hidden profile.
class ValueOracle final : public QuerySource {
 public:
  ValueOracle(const Instance& instance, const ValuationProfile& hidden, LedgerMode mode);

  bool ask(const ThresholdQuery& q) override;
  std::vector<char> ask_batch(const std::vector<ThresholdQuery>& queries,
                              const std::vector<char>* forced = nullptr) override;
  const QueryLedger& ledger() const override { return ledger_; }
  int n() const override { return n_; }

 private:
  int n_;
  const ValuationProfile& hidden_;
  QueryLedger ledger_;
};

/// Locates each acceptable object of an agent inside the half-open value
/// bands [t_k, t_{k-1}) induced by strictly descending thresholds
/// t_1 > ... > t_c in (0, 1), with t_0 = 1 and band k = 1 closed on the
/// right. Returns band indices per object (0 when the value is below t_c;
/// entries for unacceptable objects stay 0). For each k a binary search over
/// the agent's tier sequence finds the least preferred tier still clearing
/// t_k, so at most c * ceil(log2(#tiers + 1)) queries are issued.
std::vector<int> locate_bands(QuerySource& source, const Instance& instance, int agent,
                              const std::vector<double>& thresholds);

}  // namespace omatch
