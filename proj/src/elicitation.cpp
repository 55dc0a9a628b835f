#include "omatch/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace omatch {

bool answer(const ValuationProfile& hidden, const ThresholdQuery& q) {
  const int n = static_cast<int>(hidden.values.size());
  if (q.agent < 0 || q.agent >= n || q.object < 0 || q.object >= n)
    throw std::out_of_range("answer: agent or object index out of bounds");
  return hidden.values[q.agent][q.object] >= q.threshold;
}

void QueryLedger::record(const LedgerEntry& entry) {
  if (sealed_) throw std::logic_error("query ledger is sealed, no further queries allowed");
  const int n = static_cast<int>(per_agent_.size());
  if (entry.query.agent < 0 || entry.query.agent >= n || entry.query.object < 0 ||
      entry.query.object >= n)
    throw std::out_of_range("ledger: query index out of bounds");
  if (mode_ == LedgerMode::NonAdaptiveOnePerPair) {
    if (pair_seen_.empty()) pair_seen_.assign(static_cast<size_t>(n) * n, 0);
    char& seen = pair_seen_[static_cast<size_t>(entry.query.agent) * n + entry.query.object];
    if (seen)
      throw std::logic_error("non-adaptive budget violated: pair (" +
                             std::to_string(entry.query.agent + 1) + "," +
                             std::to_string(entry.query.object + 1) + ") queried twice");
    seen = 1;
  }
  entries_.push_back(entry);
  ++per_agent_[entry.query.agent];
}

void QueryLedger::seal() { sealed_ = true; }

std::string QueryLedger::to_json_lines() const {
  std::ostringstream os;
  for (const auto& e : entries_) {
    os << "{\"agent\":" << e.query.agent + 1 << ",\"object\":" << e.query.object + 1 << ",\"t\":";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", e.query.threshold);
    os << buf << ",\"ans\":" << (e.response ? 1 : 0) << "}\n";
  }
  return os.str();
}

ValueOracle::ValueOracle(const Instance& instance, const ValuationProfile& hidden, LedgerMode mode)
    : n_(instance.n()), hidden_(hidden), ledger_(mode, instance.n()) {}

bool ValueOracle::ask(const ThresholdQuery& q) {
  if (ledger_.mode() != LedgerMode::Adaptive)
    throw std::logic_error("single queries require an adaptive ledger");
  const bool bit = answer(hidden_, q);
  ledger_.record({q, bit, false});
  return bit;
}

std::vector<char> ValueOracle::ask_batch(const std::vector<ThresholdQuery>& queries,
                                         const std::vector<char>* forced) {
  if (ledger_.mode() != LedgerMode::NonAdaptiveOnePerPair)
    throw std::logic_error("batched queries require a non-adaptive ledger");
  std::vector<char> bits(queries.size(), 0);
  for (size_t i = 0; i < queries.size(); ++i) {
    bits[i] = answer(hidden_, queries[i]) ? 1 : 0;
    ledger_.record({queries[i], bits[i] != 0, forced && (*forced)[i] != 0});
  }
  ledger_.seal();
  return bits;
}

std::vector<int> locate_bands(QuerySource& source, const Instance& instance, int agent,
                              const std::vector<double>& thresholds) {
  const int c = static_cast<int>(thresholds.size());
  for (int k = 0; k + 1 < c; ++k)
    if (!(thresholds[k] > thresholds[k + 1]))
      throw std::invalid_argument("locate_bands: thresholds must be strictly descending");

  const auto& tiers = instance.preferences(agent).tiers;
  const int num_tiers = static_cast<int>(tiers.size());

  // boundary[k]: deepest tier (1-based) whose value clears thresholds[k];
  // 0 when even the top tier is below it. Tied objects share a value, so any
  // tier member can stand in for the whole tier.
  std::vector<int> boundary(c, 0);
  for (int k = 0; k < c; ++k) {
    int lo = 0, hi = num_tiers;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      const int probe = *std::min_element(tiers[mid - 1].begin(), tiers[mid - 1].end());
      if (source.ask({agent, probe, thresholds[k]}))
        lo = mid;
      else
        hi = mid - 1;
    }
    boundary[k] = lo;
  }

  std::vector<int> bands(instance.n(), 0);
  for (int t = 0; t < num_tiers; ++t) {
    int band = 0;
    for (int k = 0; k < c; ++k) {
      if (t + 1 <= boundary[k]) {
        band = k + 1;
        break;
      }
    }
    for (int o : tiers[t]) bands[o] = band;
  }
  return bands;
}

}  // namespace omatch
