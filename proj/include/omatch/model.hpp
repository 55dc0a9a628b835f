#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

// Core domain types for one-sided matching: agents with weak preference
// orders over acceptable objects, cardinal valuations consistent with those
// orders, matchings, and rank signatures.
//
// Conventions: agents and objects are 0-indexed internally; external formats
// (JSON, CSV, CLI) are 1-indexed. An instance always has as many objects as
// agents.

namespace omatch {

enum class PriorityKind { ParetoOnly, RankMaximal, MaxCardRankMaximal, Fair };
enum class ValuationKind { UnitSum, UnitRange };

const char* to_string(PriorityKind kind);
const char* to_string(ValuationKind kind);
PriorityKind priority_kind_from_string(const std::string& s);
ValuationKind valuation_kind_from_string(const std::string& s);

/// Indifference classes over an agent's acceptable objects, most-preferred
/// tier first. Objects absent from every tier are unacceptable.
struct WeakOrder {
  std::vector<std::vector<int>> tiers;
};

class Instance {
 public:
  // Throws std::invalid_argument if preferences.size() != n, an object id is
  // out of range, a tier is empty, or an object appears in two tiers of the
  // same agent.
  Instance(int n, std::vector<WeakOrder> preferences);

  int n() const { return n_; }
  const WeakOrder& preferences(int agent) const { return prefs_[agent]; }

  /// 1-based rank of `object` for `agent`; 0 when unacceptable.
  int rank_or_zero(int agent, int object) const { return rank_[agent][object]; }
  bool is_acceptable(int agent, int object) const { return rank_[agent][object] != 0; }

  /// Acceptable objects of an agent, ascending by index.
  const std::vector<int>& acceptable(int agent) const { return acceptable_[agent]; }
  int num_acceptable(int agent) const { return static_cast<int>(acceptable_[agent].size()); }

  // Preference comparisons. Unmatched (object == -1) is worse than any
  // acceptable object; both arguments must be acceptable or -1.
  bool weakly_prefers(int agent, int object_a, int object_b) const;
  bool strictly_prefers(int agent, int object_a, int object_b) const;

 private:
  int n_;
  std::vector<WeakOrder> prefs_;
  std::vector<std::vector<int>> rank_;        // [agent][object], 0 = unacceptable
  std::vector<std::vector<int>> acceptable_;  // ascending object ids
};

/// 1-based rank of an acceptable (agent, object) edge: one plus the number of
/// acceptable objects the agent strictly prefers. Tied objects share a rank.
/// Throws std::out_of_range on bad indices.
std::optional<int> rank(const Instance& instance, int agent, int object);

/// Partial injective assignment of agents to objects.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int n) : agent_to_object_(n, -1), object_to_agent_(n, -1) {}
  static Matching from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

  void add(int agent, int object);  // throws if agent or object already used
  void erase_agent(int agent);

  int n() const { return static_cast<int>(agent_to_object_.size()); }
  int object_of(int agent) const { return agent_to_object_[agent]; }
  int agent_of(int object) const { return object_to_agent_[object]; }
  bool agent_matched(int agent) const { return agent_to_object_[agent] >= 0; }
  bool object_matched(int object) const { return object_to_agent_[object] >= 0; }
  int size() const { return size_; }

  /// Matched pairs sorted by agent index.
  std::vector<std::pair<int, int>> pairs() const;

  bool operator==(const Matching& other) const {
    return agent_to_object_ == other.agent_to_object_;
  }

 private:
  std::vector<int> agent_to_object_;
  std::vector<int> object_to_agent_;
  int size_ = 0;
};

/// Reasons a matching is invalid for an instance (unacceptable pairs, size
/// mismatch). Empty result means valid.
std::vector<std::string> matching_violations(const Instance& instance, const Matching& m);
void require_valid_matching(const Instance& instance, const Matching& m);

struct Signature {
  std::vector<long long> key;

  bool operator==(const Signature&) const = default;
  bool operator<(const Signature& other) const { return key < other.key; }
  std::string to_string() const;
};

/// Per-rank match counts laid out for a signature-based criterion:
///   RankMaximal         -> (s_1, ..., s_n)
///   MaxCardRankMaximal  -> (sum s_i, s_1, ..., s_n)
///   Fair                -> (sum s_i, -s_n, ..., -s_1)
/// Throws std::invalid_argument for ParetoOnly (no signature is defined).
Signature signature(const Instance& instance, const Matching& m, PriorityKind kind);

/// Cardinal utilities: values[agent][object] in [0,1], zero outside the
/// acceptable set, consistent with the preference order.
struct ValuationProfile {
  ValuationKind kind = ValuationKind::UnitSum;
  std::vector<std::vector<double>> values;

  double value(int agent, int object) const { return values[agent][object]; }
};

double welfare(const Matching& m, const ValuationProfile& v);

/// Every violated invariant of the instance, with indices in the message.
std::vector<std::string> validate(const Instance& instance);
/// Instance invariants plus valuation invariants: consistency with the weak
/// order, the unit-sum / unit-range normalization (tolerance 1e-9), and zero
/// values outside acceptable sets.
std::vector<std::string> validate(const Instance& instance, const ValuationProfile& v);

inline constexpr double kNormalizationTolerance = 1e-9;

}  // namespace omatch
