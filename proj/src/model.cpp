#include "omatch/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace omatch {

const char* to_string(PriorityKind kind) {
  switch (kind) {
    case PriorityKind::ParetoOnly: return "pareto";
    case PriorityKind::RankMaximal: return "rank_maximal";
    case PriorityKind::MaxCardRankMaximal: return "max_card_rank_maximal";
    case PriorityKind::Fair: return "fair";
  }
  return "?";
}

const char* to_string(ValuationKind kind) {
  return kind == ValuationKind::UnitSum ? "unit_sum" : "unit_range";
}

PriorityKind priority_kind_from_string(const std::string& s) {
  if (s == "pareto") return PriorityKind::ParetoOnly;
  if (s == "rank_maximal") return PriorityKind::RankMaximal;
  if (s == "max_card_rank_maximal") return PriorityKind::MaxCardRankMaximal;
  if (s == "fair") return PriorityKind::Fair;
  throw std::invalid_argument("unknown priority kind: " + s);
}

ValuationKind valuation_kind_from_string(const std::string& s) {
  if (s == "unit_sum") return ValuationKind::UnitSum;
  if (s == "unit_range") return ValuationKind::UnitRange;
  throw std::invalid_argument("unknown valuation kind: " + s);
}

Instance::Instance(int n, std::vector<WeakOrder> preferences)
    : n_(n), prefs_(std::move(preferences)) {
  if (n <= 0) throw std::invalid_argument("instance size must be positive");
  if (static_cast<int>(prefs_.size()) != n)
    throw std::invalid_argument("expected one preference order per agent");

  rank_.assign(n, std::vector<int>(n, 0));
  acceptable_.assign(n, {});
  for (int a = 0; a < n; ++a) {
    int next_rank = 1;
    for (const auto& tier : prefs_[a].tiers) {
      if (tier.empty())
        throw std::invalid_argument("agent " + std::to_string(a + 1) + " has an empty tier");
      for (int o : tier) {
        if (o < 0 || o >= n)
          throw std::invalid_argument("agent " + std::to_string(a + 1) +
                                      " ranks an out-of-range object");
        if (rank_[a][o] != 0)
          throw std::invalid_argument("agent " + std::to_string(a + 1) + " ranks object " +
                                      std::to_string(o + 1) + " twice");
        rank_[a][o] = next_rank;
        acceptable_[a].push_back(o);
      }
      next_rank += static_cast<int>(tier.size());
    }
    std::sort(acceptable_[a].begin(), acceptable_[a].end());
  }
}

bool Instance::weakly_prefers(int agent, int object_a, int object_b) const {
  const int ra = object_a < 0 ? n_ + 1 : rank_[agent][object_a];
  const int rb = object_b < 0 ? n_ + 1 : rank_[agent][object_b];
  return ra <= rb;
}

bool Instance::strictly_prefers(int agent, int object_a, int object_b) const {
  const int ra = object_a < 0 ? n_ + 1 : rank_[agent][object_a];
  const int rb = object_b < 0 ? n_ + 1 : rank_[agent][object_b];
  return ra < rb;
}

std::optional<int> rank(const Instance& instance, int agent, int object) {
  if (agent < 0 || agent >= instance.n() || object < 0 || object >= instance.n())
    throw std::out_of_range("rank: agent or object index out of bounds");
  const int r = instance.rank_or_zero(agent, object);
  if (r == 0) return std::nullopt;
  return r;
}

Matching Matching::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  Matching m(n);
  for (const auto& [a, o] : pairs) m.add(a, o);
  return m;
}

void Matching::add(int agent, int object) {
  if (agent < 0 || agent >= n() || object < 0 || object >= n())
    throw std::out_of_range("matching: index out of bounds");
  if (agent_to_object_[agent] != -1)
    throw std::invalid_argument("agent " + std::to_string(agent + 1) + " already matched");
  if (object_to_agent_[object] != -1)
    throw std::invalid_argument("object " + std::to_string(object + 1) + " already matched");
  agent_to_object_[agent] = object;
  object_to_agent_[object] = agent;
  ++size_;
}

void Matching::erase_agent(int agent) {
  const int o = agent_to_object_[agent];
  if (o < 0) return;
  agent_to_object_[agent] = -1;
  object_to_agent_[o] = -1;
  --size_;
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(size_);
  for (int a = 0; a < n(); ++a)
    if (agent_to_object_[a] >= 0) out.emplace_back(a, agent_to_object_[a]);
  return out;
}

std::vector<std::string> matching_violations(const Instance& instance, const Matching& m) {
  std::vector<std::string> out;
  if (m.n() != instance.n()) {
    out.push_back("matching sized for " + std::to_string(m.n()) + " agents, instance has " +
                  std::to_string(instance.n()));
    return out;
  }
  for (int a = 0; a < instance.n(); ++a) {
    const int o = m.object_of(a);
    if (o >= 0 && !instance.is_acceptable(a, o))
      out.push_back("agent " + std::to_string(a + 1) + " matched to unacceptable object " +
                    std::to_string(o + 1));
  }
  return out;
}

void require_valid_matching(const Instance& instance, const Matching& m) {
  const auto v = matching_violations(instance, m);
  if (!v.empty()) throw std::invalid_argument("invalid matching: " + v.front());
}

std::string Signature::to_string() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < key.size(); ++i) {
    if (i) os << ',';
    os << key[i];
  }
  os << ')';
  return os.str();
}

Signature signature(const Instance& instance, const Matching& m, PriorityKind kind) {
  if (kind == PriorityKind::ParetoOnly)
    throw std::invalid_argument("signatures are undefined for the Pareto-only criterion");
  require_valid_matching(instance, m);
  const int n = instance.n();
  std::vector<long long> s(n, 0);
  long long total = 0;
  for (int a = 0; a < n; ++a) {
    const int o = m.object_of(a);
    if (o < 0) continue;
    ++s[instance.rank_or_zero(a, o) - 1];
    ++total;
  }
  Signature sig;
  switch (kind) {
    case PriorityKind::RankMaximal:
      sig.key = s;
      break;
    case PriorityKind::MaxCardRankMaximal:
      sig.key.push_back(total);
      sig.key.insert(sig.key.end(), s.begin(), s.end());
      break;
    case PriorityKind::Fair:
      sig.key.push_back(total);
      for (int r = n; r >= 1; --r) sig.key.push_back(-s[r - 1]);
      break;
    default:
      break;
  }
  return sig;
}

double welfare(const Matching& m, const ValuationProfile& v) {
  double total = 0.0;
  for (int a = 0; a < m.n(); ++a) {
    const int o = m.object_of(a);
    if (o >= 0) total += v.values[a][o];
  }
  return total;
}

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> out;
  for (int a = 0; a < instance.n(); ++a)
    if (instance.acceptable(a).empty())
      out.push_back("agent " + std::to_string(a + 1) + " has an empty acceptable set");
  return out;
}

std::vector<std::string> validate(const Instance& instance, const ValuationProfile& v) {
  std::vector<std::string> out = validate(instance);
  const int n = instance.n();
  if (static_cast<int>(v.values.size()) != n) {
    out.push_back("valuation matrix has " + std::to_string(v.values.size()) + " rows, expected " +
                  std::to_string(n));
    return out;
  }
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(v.values[a].size()) != n) {
      out.push_back("valuation row " + std::to_string(a + 1) + " has wrong length");
      continue;
    }
    double sum = 0.0, max_v = 0.0, min_v = 1.0;
    for (int o = 0; o < n; ++o) {
      const double x = v.values[a][o];
      if (x < 0.0 || x > 1.0)
        out.push_back("agent " + std::to_string(a + 1) + " values object " + std::to_string(o + 1) +
                      " outside [0,1]: " + std::to_string(x));
      if (!instance.is_acceptable(a, o)) {
        if (x != 0.0)
          out.push_back("agent " + std::to_string(a + 1) + " has nonzero value for unacceptable object " +
                        std::to_string(o + 1));
        continue;
      }
      sum += x;
      max_v = std::max(max_v, x);
      min_v = std::min(min_v, x);
    }
    // Consistency: equal value within a tier, strictly decreasing across tiers.
    const auto& tiers = instance.preferences(a).tiers;
    for (size_t t = 0; t < tiers.size(); ++t) {
      const double head = v.values[a][tiers[t].front()];
      for (int o : tiers[t])
        if (v.values[a][o] != head)
          out.push_back("agent " + std::to_string(a + 1) + ": tied objects " +
                        std::to_string(tiers[t].front() + 1) + " and " + std::to_string(o + 1) +
                        " have different values");
      if (t + 1 < tiers.size() && !(head > v.values[a][tiers[t + 1].front()]))
        out.push_back("agent " + std::to_string(a + 1) + ": value does not decrease from tier " +
                      std::to_string(t + 1) + " to tier " + std::to_string(t + 2));
    }
    if (v.kind == ValuationKind::UnitSum) {
      if (std::abs(sum - 1.0) > kNormalizationTolerance)
        out.push_back("agent " + std::to_string(a + 1) + ": unit-sum violated, sum = " +
                      std::to_string(sum));
    } else {
      if (std::abs(max_v - 1.0) > kNormalizationTolerance)
        out.push_back("agent " + std::to_string(a + 1) + ": unit-range violated, max != 1");
      if (std::abs(min_v) > kNormalizationTolerance)
        out.push_back("agent " + std::to_string(a + 1) + ": unit-range violated, min != 0");
      if (tiers.size() < 2)
        out.push_back("agent " + std::to_string(a + 1) +
                      ": unit-range requires a strictly preferred pair");
    }
  }
  return out;
}

}  // namespace omatch
