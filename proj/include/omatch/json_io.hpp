#pragma once

#include <optional>
#include <string>
#include <utility>

#include "omatch/algorithms.hpp"
#include "omatch/model.hpp"

// JSON formats (all indices 1-based on the wire):
//   instance: {"n": int,
//              "preferences": [[[obj, ...], ...], ...],           (agents x tiers)
//              "valuations": {"kind": "unit_sum"|"unit_range",    (optional)
//                             "values": [[...], ...]}}
//   result:   {"kind": ..., "matching": [[agent, object], ...],
//              "ledger": {"mode": ..., "total": n, "forced": n, "per_agent": [...]},
//              "welfare": x}                                      (when scored)

namespace omatch {

struct InstanceDocument {
  Instance instance;
  std::optional<ValuationProfile> valuations;
};

InstanceDocument load_instance_json(const std::string& text);
InstanceDocument load_instance_file(const std::string& path);
std::string instance_to_json(const Instance& instance,
                             const ValuationProfile* valuations = nullptr);

std::string result_to_json(const AlgoResult& result, const ValuationProfile* score_against = nullptr);

}  // namespace omatch
