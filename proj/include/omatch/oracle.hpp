#pragma once

#include <functional>
#include <vector>

#include "omatch/model.hpp"

// Ground truth by exhaustive enumeration, usable on desk-sized instances
// only. Everything here is independent of the engine's solver so the two
// can cross-check each other.

namespace omatch {
namespace oracle {

inline constexpr int kMaxEnumerationSize = 8;   // matchings grow factorially
inline constexpr int kMaxQuadraticSize = 6;     // checks quadratic in the enumeration

/// Visits every matching of the instance exactly once, including the empty
/// and all partial ones. Throws when n > kMaxEnumerationSize.
void enumerate_matchings(const Instance& instance, const std::function<void(const Matching&)>& visit);

/// Same enumeration, but the visitor may stop it by returning false.
void enumerate_matchings_until(const Instance& instance,
                               const std::function<bool(const Matching&)>& visit);

/// Convenience: all matchings materialized.
std::vector<Matching> all_matchings(const Instance& instance);

/// Definition-faithful Pareto check: no enumerated matching makes every agent
/// weakly better off (by rank, unmatched worst) and someone strictly better.
bool is_pareto_optimal(const Instance& instance, const Matching& m);

struct ClassOptimum {
  PriorityKind kind = PriorityKind::ParetoOnly;
  Matching best_matching;
  double best_welfare = 0.0;
  long long class_size = 0;  // -1 when counting would be quadratic past the guard
  Signature class_signature;  // empty key for ParetoOnly
};

/// Welfare-optimal matching within the class of matchings satisfying `kind`
/// (Pareto optimal, or signature equal to the lexicographic best), found by
/// enumeration.
ClassOptimum optimal_within_class(const Instance& instance, const ValuationProfile& v,
                                  PriorityKind kind);

/// class-optimal welfare divided by the matching's welfare. Requires the
/// matching to belong to the class (throws otherwise: that signals a bug in
/// the algorithm under test). Both welfares zero gives 1; a zero denominator
/// alone gives +infinity.
double welfare_loss_ratio(const Instance& instance, const ValuationProfile& v, PriorityKind kind,
                          const Matching& m);

/// Membership test used by welfare_loss_ratio: Pareto optimality for
/// ParetoOnly, signature equality with the class best otherwise.
bool in_class(const Instance& instance, PriorityKind kind, const Matching& m);

/// Reference solve with the literal arbitrary-precision priority values
/// (n^(2(n-j+1)); n^(2n)+n^(2(n-j)); 4n^(2n)-2n^(j-1)) in an integer slot and
/// the value in a fractional slot. Returns true iff the composite-weight
/// solver produces a matching with the same signature and welfare.
bool bigint_priority_check(const Instance& instance, const ValuationProfile& v, PriorityKind kind);

/// The literal priority values p_1..p_n as decimal strings (they overflow
/// fixed-width integers from n = 10 or so).
std::vector<std::string> literal_priority_strings(PriorityKind kind, int n);

}  // namespace oracle
}  // namespace omatch
