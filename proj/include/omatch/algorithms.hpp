#pragma once

#include <vector>

#include "omatch/elicitation.hpp"
#include "omatch/engine.hpp"
#include "omatch/model.hpp"

// The matching algorithms: full-information welfare optimization, the
// adaptive band-location scheme, the one-query-per-pair schemes for unit-sum
// and unit-range valuations, and the purely ordinal baseline. Each returns
// a matching satisfying the requested criterion together with the query
// ledger it consumed.

namespace omatch {

struct AlgoResult {
  Matching matching;
  QueryLedger ledger;  // empty (adaptive mode) for full-information and ordinal runs
  PriorityKind kind = PriorityKind::ParetoOnly;
};

/// Number of value bands the adaptive scheme distinguishes:
/// ceil(log(n^2 / eps) / log(1 + eps/2)), at least 1.
int adaptive_band_count(int n, double epsilon);

/// Descending band thresholds t_k = (2 / (2 + eps))^k for k = 1..c.
std::vector<double> adaptive_thresholds(int n, double epsilon);

/// Unit-sum query thresholds by rank: t_1 = n^(-1/3),
/// t_i = 1 / (min(i, n^(1/3)) * n^(2/3)) for i >= 2.
std::vector<double> nonadaptive_unit_sum_thresholds(int n);

/// Unit-range query thresholds by rank: t_1 = 1, t_i = 1/sqrt(n) for i >= 2.
std::vector<double> nonadaptive_unit_range_thresholds(int n);

/// Max-weight matching on true utilities with the criterion's priority
/// weights: the welfare-optimal matching among those satisfying `kind`.
/// Throws if the valuations are inconsistent with the instance.
AlgoResult welfare_optimal_priority(const Instance& instance, PriorityKind kind,
                                    const ValuationProfile& v);

/// Band-locates every acceptable object with adaptive threshold queries and
/// solves with the band floors as value parts; a (1+eps)-approximation to the
/// optimal welfare within the criterion's class. Pareto-only runs finish with
/// top-trading cycles on the matched agents.
AlgoResult adaptive_approx(const Instance& instance, PriorityKind kind, double epsilon,
                           QuerySource& source);

/// One non-adaptive query per acceptable pair at the rank's unit-sum
/// threshold; answered pairs keep the threshold as value part. Requires a
/// signature-based kind.
AlgoResult nonadaptive_priority_unit_sum(const Instance& instance, PriorityKind kind,
                                         QuerySource& source);

/// Pareto-optimal variant for unit-sum valuations: the query phase above with
/// zero priorities, an auxiliary rank-bounded matching covering the case of
/// sparse answers, greedy completion, and top-trading cycles. Requires n >= 8
/// so the auxiliary rank bound floor(n^(1/3)/2) is at least 1.
AlgoResult nonadaptive_po_unit_sum(const Instance& instance, QuerySource& source);

/// One query per pair with the unit-range thresholds (rank-1 queries are
/// forced yes and marked so in the ledger). Works for all four criteria.
AlgoResult nonadaptive_unit_range(const Instance& instance, PriorityKind kind,
                                  QuerySource& source);

/// No queries at all: priority weights with zero value parts. For the
/// Pareto-only criterion, a rank-maximal start followed by top-trading
/// cycles.
AlgoResult ordinal_baseline(const Instance& instance, PriorityKind kind);

}  // namespace omatch
