#pragma once

#include <vector>

#include "omatch/model.hpp"

// Exact combinatorial solvers: max-weight bipartite matching over a
// lexicographic weight algebra, rank-bounded max-cardinality matching, and
// top-trading cycles with a deterministic tie-handling rule.

namespace omatch {

/// Additive weight with lexicographic order: integer priority slots compared
/// first, then a real value part in [0, n]. The empty key is the Pareto-only
/// case (plain value weights). Keys of different lengths compare by padding
/// the shorter one with zeros, so a default-constructed CompositeWeight is
/// the zero element.
struct CompositeWeight {
  std::vector<long long> key;
  double value = 0.0;

  CompositeWeight& operator+=(const CompositeWeight& other);
  CompositeWeight& operator-=(const CompositeWeight& other);
  friend CompositeWeight operator+(CompositeWeight a, const CompositeWeight& b) { return a += b; }
  friend CompositeWeight operator-(CompositeWeight a, const CompositeWeight& b) { return a -= b; }

  // lexicographic: key slots, then value
  int compare(const CompositeWeight& other) const;
  bool operator<(const CompositeWeight& o) const { return compare(o) < 0; }
  bool operator==(const CompositeWeight& o) const { return compare(o) == 0; }
  bool operator<=(const CompositeWeight& o) const { return compare(o) <= 0; }
};

/// Weight of a rank-r edge under a criterion, for an n-agent instance:
///   ParetoOnly         -> empty key
///   RankMaximal        -> key: unit vector with 1 at slot r, length n
///   MaxCardRankMaximal -> key: 1 at the cardinality slot, 1 at slot r; length n+1
///   Fair               -> key: 1 at the cardinality slot, -1 at the slot of
///                         rank r in reversed order (total, -s_n, ..., -s_1)
/// summed edge keys of a matching equal its signature for the matching kind.
CompositeWeight edge_weight(PriorityKind kind, int n, int r, double value_part);

struct WeightedEdge {
  int agent = 0;
  int object = 0;
  CompositeWeight w;
};

/// Maximum-weight matching for the lexicographic edge weights. All weights
/// must be >= the zero weight and share one key length. Deterministic: among
/// maximum-weight matchings, returns the one whose sorted (agent, object)
/// pair list is lexicographically smallest.
Matching max_weight_matching(int n, const std::vector<WeightedEdge>& edges);

/// Maximum-cardinality matching restricted to edges of rank <= max_rank,
/// with the same deterministic tie-break as max_weight_matching.
Matching max_cardinality_rank_bounded(const Instance& instance, int max_rank);

/// Top-trading cycles from an initial endowment. Agents left unmatched by the
/// endowment do not participate. Each remaining agent points to its most
/// preferred remaining endowed object, breaking ties by lowest object index
/// except that an agent whose own endowment is among the tied objects keeps
/// pointing at it. Cycles trade and leave. The result is individually
/// rational and, after an exchange-improvement sweep over the participants'
/// market, Pareto optimal among the participants.
Matching ttc(const Instance& instance, const Matching& endowment);

/// Repeatedly applies Pareto-improving reassignments (every agent weakly
/// better off by rank, at least one strictly, unmatched agents may gain any
/// acceptable object) until none exists. The result Pareto dominates or
/// equals the input and is Pareto optimal for the whole instance.
Matching pareto_repair(const Instance& instance, Matching m);

}  // namespace omatch
