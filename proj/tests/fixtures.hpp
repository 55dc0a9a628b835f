#pragma once

#include "omatch/model.hpp"

// Shared hand-built fixtures for tests.

namespace omatch::fixtures {

// Three agents with identical strict orders h1 > h2 > h3 but different
// intensities; the classic case where every perfect matching is Pareto
// optimal yet welfare differs.
inline Instance intensity_gap_instance() {
  std::vector<WeakOrder> prefs(3);
  for (auto& p : prefs) p.tiers = {{0}, {1}, {2}};
  return Instance(3, std::move(prefs));
}

inline ValuationProfile intensity_gap_values() {
  ValuationProfile v;
  v.kind = ValuationKind::UnitSum;
  v.values = {{0.9, 0.1, 0.0}, {0.9, 0.1, 0.0}, {0.51, 0.49, 0.0}};
  return v;
}

// Seven agents, strict incomplete lists; small enough to enumerate, rich
// enough that rank-maximal (size 5), max-cardinality (size 6+), and fair
// (size 7) matchings all differ.
inline Instance seven_agent_instance() {
  std::vector<WeakOrder> prefs(7);
  prefs[0].tiers = {{0}, {3}, {2}, {6}};  // h1 h4 h3 h7
  prefs[1].tiers = {{1}, {4}, {5}};       // h2 h5 h6
  prefs[2].tiers = {{0}, {2}};            // h1 h3
  prefs[3].tiers = {{2}, {5}};            // h3 h6
  prefs[4].tiers = {{0}, {3}, {4}};       // h1 h4 h5
  prefs[5].tiers = {{0}, {1}, {3}};       // h1 h2 h4
  prefs[6].tiers = {{0}, {1}, {4}};       // h1 h2 h5
  return Instance(7, std::move(prefs));
}

}  // namespace omatch::fixtures
