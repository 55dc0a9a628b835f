#include "omatch/random_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace omatch {

namespace {

using Rng = std::mt19937_64;

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

// Unbiased enough for test corpora; avoids platform-dependent distributions.
int below(Rng& rng, int bound) { return static_cast<int>(rng() % static_cast<unsigned>(bound)); }

double exponential(Rng& rng) { return -std::log1p(-uniform01(rng)); }

WeakOrder random_order(Rng& rng, int n, double tie_prob, double acceptability_prob) {
  std::vector<int> acceptable;
  while (acceptable.empty()) {
    for (int o = 0; o < n; ++o)
      if (uniform01(rng) < acceptability_prob) acceptable.push_back(o);
  }
  for (int i = static_cast<int>(acceptable.size()) - 1; i > 0; --i)
    std::swap(acceptable[i], acceptable[below(rng, i + 1)]);

  WeakOrder order;
  order.tiers.push_back({acceptable[0]});
  for (size_t i = 1; i < acceptable.size(); ++i) {
    if (uniform01(rng) < tie_prob)
      order.tiers.back().push_back(acceptable[i]);
    else
      order.tiers.push_back({acceptable[i]});
  }
  return order;
}

}  // namespace

Instance gen_random_instance(std::uint64_t seed, int n, double tie_prob,
                             double acceptability_prob) {
  if (tie_prob < 0.0 || tie_prob >= 1.0)
    throw std::invalid_argument("tie_prob must lie in [0, 1)");
  if (acceptability_prob <= 0.0 || acceptability_prob > 1.0)
    throw std::invalid_argument("acceptability_prob must lie in (0, 1]");
  Rng rng(seed);
  std::vector<WeakOrder> prefs;
  prefs.reserve(n);
  for (int a = 0; a < n; ++a) prefs.push_back(random_order(rng, n, tie_prob, acceptability_prob));
  return Instance(n, std::move(prefs));
}

ValuationProfile gen_random_valuations(std::uint64_t seed, const Instance& instance,
                                       ValuationKind kind) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const int n = instance.n();
  ValuationProfile v;
  v.kind = kind;
  v.values.assign(n, std::vector<double>(n, 0.0));

  for (int a = 0; a < n; ++a) {
    const auto& tiers = instance.preferences(a).tiers;
    if (kind == ValuationKind::UnitRange && tiers.size() < 2)
      throw std::invalid_argument("agent " + std::to_string(a + 1) +
                                  " admits no unit-range valuation (single tier)");
    std::vector<double> tier_value;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 100)
        throw std::runtime_error("tier value draw failed to produce strict decreases");
      std::vector<double> draws(instance.num_acceptable(a));
      for (auto& d : draws) d = exponential(rng);
      std::sort(draws.begin(), draws.end(), std::greater<>());
      tier_value.clear();
      size_t used = 0;
      for (const auto& tier : tiers) {
        double sum = 0.0;
        for (size_t i = 0; i < tier.size(); ++i) sum += draws[used + i];
        used += tier.size();
        tier_value.push_back(sum / static_cast<double>(tier.size()));
      }
      bool strict = true;
      for (size_t t = 0; t + 1 < tier_value.size(); ++t)
        if (!(tier_value[t] > tier_value[t + 1])) strict = false;
      if (strict) break;
    }

    if (kind == ValuationKind::UnitSum) {
      double total = 0.0;
      for (size_t t = 0; t < tiers.size(); ++t) total += tier_value[t] * tiers[t].size();
      for (size_t t = 0; t < tiers.size(); ++t)
        for (int o : tiers[t]) v.values[a][o] = tier_value[t] / total;
    } else {
      const double hi = tier_value.front();
      const double lo = tier_value.back();
      for (size_t t = 0; t < tiers.size(); ++t)
        for (int o : tiers[t]) v.values[a][o] = (tier_value[t] - lo) / (hi - lo);
    }
  }
  return v;
}

Instance gen_random_instance_for(std::uint64_t seed, int n, double tie_prob,
                                 double acceptability_prob, ValuationKind kind) {
  for (std::uint64_t shift = 0; shift < 1000; ++shift) {
    Instance instance = gen_random_instance(seed + shift * 0x100000001b3ULL, n, tie_prob,
                                            acceptability_prob);
    if (kind == ValuationKind::UnitSum) return instance;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      if (instance.preferences(a).tiers.size() < 2) ok = false;
    if (ok) return instance;
  }
  throw std::runtime_error("could not draw an instance admitting unit-range valuations");
}

}  // namespace omatch
