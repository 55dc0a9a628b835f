#pragma once

#include <cstdint>

#include "omatch/model.hpp"

// Seeded instance and valuation generators. All randomness goes through a
// fixed 64-bit generator with hand-rolled sampling so identical seeds give
// identical output on every platform.

namespace omatch {

/// Per agent: each object is acceptable independently with
/// acceptability_prob (rows are redrawn until nonempty), the acceptable set
/// is uniformly permuted, and adjacent positions merge into one tier with
/// probability tie_prob.
Instance gen_random_instance(std::uint64_t seed, int n, double tie_prob,
                             double acceptability_prob);

/// Draws positive exponentials per acceptable object, sorted onto the weak
/// order with tied tiers sharing their tier average, then normalized:
/// unit-sum rows sum to 1, unit-range rows are min-max scaled. Unit-range
/// requires every agent to have at least two tiers (throws otherwise).
ValuationProfile gen_random_valuations(std::uint64_t seed, const Instance& instance,
                                       ValuationKind kind);

/// Instance whose every agent admits a unit-range valuation (at least two
/// tiers), by redrawing with shifted sub-seeds as needed.
Instance gen_random_instance_for(std::uint64_t seed, int n, double tie_prob,
                                 double acceptability_prob, ValuationKind kind);

}  // namespace omatch
