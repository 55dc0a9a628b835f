#include "omatch/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "omatch/assignment.hpp"

namespace omatch {

namespace {

// ---------------------------------------------------------------------------
// Dense solver weight: priority slots, value, then per-agent tie-break slots.
// All weights within one solve share the same layout.

struct FlatWeight {
  std::vector<long long> slots;  // [0, split) priority, [split, ...) tie-break
  double value = 0.0;
  int split = 0;
};

struct SparseArcWeight {
  std::vector<std::pair<int, long long>> slot_deltas;
  double value = 0.0;
};

void weight_add(FlatWeight& a, const FlatWeight& b) {
  for (size_t i = 0; i < a.slots.size(); ++i) a.slots[i] += b.slots[i];
  a.value += b.value;
}

void weight_sub(FlatWeight& a, const FlatWeight& b) {
  for (size_t i = 0; i < a.slots.size(); ++i) a.slots[i] -= b.slots[i];
  a.value -= b.value;
}

void weight_add_arc(FlatWeight& a, const SparseArcWeight& b) {
  for (const auto& [slot, delta] : b.slot_deltas) a.slots[slot] += delta;
  a.value += b.value;
}

void weight_sub_arc(FlatWeight& a, const SparseArcWeight& b) {
  for (const auto& [slot, delta] : b.slot_deltas) a.slots[slot] -= delta;
  a.value -= b.value;
}

bool weight_less(const FlatWeight& a, const FlatWeight& b) {
  const size_t split = static_cast<size_t>(a.split);
  for (size_t i = 0; i < split; ++i)
    if (a.slots[i] != b.slots[i]) return a.slots[i] < b.slots[i];
  if (a.value != b.value) return a.value < b.value;
  for (size_t i = split; i < a.slots.size(); ++i)
    if (a.slots[i] != b.slots[i]) return a.slots[i] < b.slots[i];
  return false;
}

// ---------------------------------------------------------------------------
// Plain-value path for empty keys: solve once for the optimal total value,
// then fix pairs greedily in (agent, object) order so the returned matching
// is the lexicographically smallest optimum. Feasibility of each candidate
// pair is checked with a residual solve over the still-undecided agents.

constexpr double kRefineTolerance = 1e-9;

double solve_value(int n, const std::vector<std::tuple<int, int, double>>& arcs,
                   std::vector<int>* match_out = nullptr) {
  auto match = detail::max_weight_assignment<double, double>(n, n, arcs, 0.0);
  double total = 0.0;
  for (const auto& [a, o, w] : arcs)
    if (match[a] == o) total += w;
  if (match_out) *match_out = std::move(match);
  return total;
}

Matching refine_lexicographic(int n, const std::vector<WeightedEdge>& edges) {
  std::vector<std::tuple<int, int, double>> arcs;
  arcs.reserve(edges.size());
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : edges) {
    arcs.emplace_back(e.agent, e.object, e.w.value);
    adj[e.agent].emplace_back(e.object, e.w.value);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());

  const double best = solve_value(n, arcs);
  Matching result(n);
  std::vector<char> object_used(n, 0);
  double fixed_weight = 0.0;

  for (int a = 0; a < n; ++a) {
    if (fixed_weight >= best - kRefineTolerance) break;
    for (const auto& [o, w] : adj[a]) {
      if (object_used[o]) continue;
      std::vector<std::tuple<int, int, double>> residual;
      for (const auto& [ra, ro, rw] : arcs)
        if (ra > a && !object_used[ro] && ro != o) residual.emplace_back(ra, ro, rw);
      const double rest = solve_value(n, residual);
      if (fixed_weight + w + rest >= best - kRefineTolerance) {
        result.add(a, o);
        object_used[o] = 1;
        fixed_weight += w;
        break;
      }
    }
  }
  return result;
}

Matching solve_with_priority_keys(int n, const std::vector<WeightedEdge>& edges, int key_len) {
  // Tie-break slots after the value: slot per agent holding n - object for
  // its matched object. Matchings of equal priority key have equal size, so
  // maximizing these slots lexicographically yields exactly the matching with
  // the smallest sorted pair list.
  FlatWeight zero;
  zero.split = key_len;
  zero.slots.assign(static_cast<size_t>(key_len + n), 0);

  std::vector<std::tuple<int, int, SparseArcWeight>> arcs;
  arcs.reserve(edges.size());
  for (const auto& e : edges) {
    SparseArcWeight w;
    for (int i = 0; i < key_len; ++i)
      if (e.w.key[i] != 0) w.slot_deltas.emplace_back(i, e.w.key[i]);
    w.slot_deltas.emplace_back(key_len + e.agent, static_cast<long long>(n - e.object));
    w.value = e.w.value;
    arcs.emplace_back(e.agent, e.object, std::move(w));
  }

  const auto match = detail::max_weight_assignment(n, n, arcs, zero);
  Matching result(n);
  for (int a = 0; a < n; ++a)
    if (match[a] >= 0) result.add(a, match[a]);
  return result;
}

// Kuhn's augmenting-path matching; returns false if some required agent
// cannot be saturated.
bool saturate_all(const std::vector<std::vector<int>>& adj, int num_objects,
                  std::vector<int>& agent_to_object) {
  const int num_agents = static_cast<int>(adj.size());
  agent_to_object.assign(num_agents, -1);
  std::vector<int> object_to_agent(num_objects, -1);
  std::vector<char> visited(num_objects);

  const std::function<bool(int)> try_augment = [&](int a) -> bool {
    for (int o : adj[a]) {
      if (visited[o]) continue;
      visited[o] = 1;
      if (object_to_agent[o] == -1 || try_augment(object_to_agent[o])) {
        object_to_agent[o] = a;
        agent_to_object[a] = o;
        return true;
      }
    }
    return false;
  };

  for (int a = 0; a < num_agents; ++a) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_augment(a)) return false;
  }
  return true;
}

// One Pareto-improvement pass restricted to the given agent/object scope.
// Returns true and rewrites `m` if some matching makes every scoped agent
// weakly better off (by rank) and at least one strictly better.
bool improve_once(const Instance& instance, Matching& m, const std::vector<char>& agent_in,
                  const std::vector<char>& object_in) {
  const int n = instance.n();

  std::vector<int> required;  // agents that must stay matched
  for (int a = 0; a < n; ++a)
    if (agent_in[a] && m.agent_matched(a)) required.push_back(a);

  const auto weak_objects = [&](int a) {
    std::vector<int> out;
    for (int o : instance.acceptable(a))
      if (object_in[o] && instance.weakly_prefers(a, o, m.object_of(a))) out.push_back(o);
    return out;
  };

  const auto attempt = [&](int strict_agent, bool strict_is_unmatched) -> bool {
    std::vector<int> agents = required;
    if (strict_is_unmatched) agents.push_back(strict_agent);
    std::vector<std::vector<int>> adj(agents.size());
    for (size_t i = 0; i < agents.size(); ++i) {
      const int a = agents[i];
      if (a == strict_agent && !strict_is_unmatched) {
        for (int o : instance.acceptable(a))
          if (object_in[o] && instance.strictly_prefers(a, o, m.object_of(a))) adj[i].push_back(o);
      } else if (a == strict_agent) {
        for (int o : instance.acceptable(a))
          if (object_in[o]) adj[i].push_back(o);
      } else {
        adj[i] = weak_objects(a);
      }
      if (adj[i].empty()) return false;
    }
    std::vector<int> assignment;
    if (!saturate_all(adj, n, assignment)) return false;
    Matching next(n);
    for (size_t i = 0; i < agents.size(); ++i) next.add(agents[i], assignment[i]);
    m = next;
    return true;
  };

  for (int a = 0; a < n; ++a)
    if (agent_in[a] && !m.agent_matched(a) && !instance.acceptable(a).empty())
      if (attempt(a, /*strict_is_unmatched=*/true)) return true;
  for (int a : required)
    if (attempt(a, /*strict_is_unmatched=*/false)) return true;
  return false;
}

Matching repair_in_scope(const Instance& instance, Matching m, const std::vector<char>& agent_in,
                         const std::vector<char>& object_in) {
  while (improve_once(instance, m, agent_in, object_in)) {
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

CompositeWeight& CompositeWeight::operator+=(const CompositeWeight& other) {
  if (other.key.size() > key.size()) key.resize(other.key.size(), 0);
  for (size_t i = 0; i < other.key.size(); ++i) key[i] += other.key[i];
  value += other.value;
  return *this;
}

CompositeWeight& CompositeWeight::operator-=(const CompositeWeight& other) {
  if (other.key.size() > key.size()) key.resize(other.key.size(), 0);
  for (size_t i = 0; i < other.key.size(); ++i) key[i] -= other.key[i];
  value -= other.value;
  return *this;
}

int CompositeWeight::compare(const CompositeWeight& other) const {
  const size_t len = std::max(key.size(), other.key.size());
  for (size_t i = 0; i < len; ++i) {
    const long long a = i < key.size() ? key[i] : 0;
    const long long b = i < other.key.size() ? other.key[i] : 0;
    if (a != b) return a < b ? -1 : 1;
  }
  if (value != other.value) return value < other.value ? -1 : 1;
  return 0;
}

CompositeWeight edge_weight(PriorityKind kind, int n, int r, double value_part) {
  if (r < 1 || r > n) throw std::invalid_argument("edge_weight: rank out of range");
  if (value_part < 0.0 || value_part > 1.0)
    throw std::invalid_argument("edge_weight: value part outside [0,1]");
  CompositeWeight w;
  w.value = value_part;
  switch (kind) {
    case PriorityKind::ParetoOnly:
      break;
    case PriorityKind::RankMaximal:
      w.key.assign(n, 0);
      w.key[r - 1] = 1;
      break;
    case PriorityKind::MaxCardRankMaximal:
      w.key.assign(n + 1, 0);
      w.key[0] = 1;
      w.key[r] = 1;
      break;
    case PriorityKind::Fair:
      // slots: total, -s_n, ..., -s_1
      w.key.assign(n + 1, 0);
      w.key[0] = 1;
      w.key[1 + (n - r)] = -1;
      break;
  }
  return w;
}

Matching max_weight_matching(int n, const std::vector<WeightedEdge>& edges) {
  if (edges.empty()) return Matching(n);
  const size_t key_len = edges.front().w.key.size();
  const CompositeWeight zero;
  for (const auto& e : edges) {
    if (e.w.key.size() != key_len)
      throw std::invalid_argument("max_weight_matching: mixed key lengths");
    if (e.w < zero) throw std::invalid_argument("max_weight_matching: negative edge weight");
    if (e.agent < 0 || e.agent >= n || e.object < 0 || e.object >= n)
      throw std::out_of_range("max_weight_matching: edge index out of bounds");
  }
  if (key_len == 0) return refine_lexicographic(n, edges);
  return solve_with_priority_keys(n, edges, static_cast<int>(key_len));
}

Matching max_cardinality_rank_bounded(const Instance& instance, int max_rank) {
  const int n = instance.n();
  if (max_rank < 1 || max_rank > n)
    throw std::invalid_argument("max_cardinality_rank_bounded: rank bound out of range");
  std::vector<WeightedEdge> edges;
  for (int a = 0; a < n; ++a)
    for (int o : instance.acceptable(a))
      if (instance.rank_or_zero(a, o) <= max_rank)
        edges.push_back({a, o, CompositeWeight{{1}, 0.0}});
  return max_weight_matching(n, edges);
}

Matching ttc(const Instance& instance, const Matching& endowment) {
  require_valid_matching(instance, endowment);
  const int n = instance.n();

  std::vector<char> in_market_agent(n, 0), in_market_object(n, 0);
  for (int a = 0; a < n; ++a)
    if (endowment.agent_matched(a)) {
      in_market_agent[a] = 1;
      in_market_object[endowment.object_of(a)] = 1;
    }

  std::vector<char> active_agent = in_market_agent;
  std::vector<char> active_object = in_market_object;
  Matching result(n);

  int remaining = endowment.size();
  std::vector<int> target(n, -1);
  while (remaining > 0) {
    for (int a = 0; a < n; ++a) {
      if (!active_agent[a]) continue;
      const int own = endowment.object_of(a);
      int best = -1;
      for (const auto& tier : instance.preferences(a).tiers) {
        for (int o : tier) {
          if (!active_object[o]) continue;
          if (o == own) {
            best = own;  // keep own endowment when it ties for best
            break;
          }
          if (best == -1 || o < best) best = o;
        }
        if (best != -1) break;
      }
      target[a] = best;  // own endowment is active, so best != -1
    }

    // Follow agent -> target object -> owner until a node repeats; trade the
    // cycle and retire its members.
    int start = 0;
    while (!active_agent[start]) ++start;
    std::vector<int> stamp(n, 0);
    int cur = start;
    int step = 1;
    while (stamp[cur] == 0) {
      stamp[cur] = step++;
      cur = endowment.agent_of(target[cur]);
    }
    std::vector<int> cycle;
    int walk = cur;
    do {
      cycle.push_back(walk);
      walk = endowment.agent_of(target[walk]);
    } while (walk != cur);
    for (int a : cycle) {
      result.add(a, target[a]);
      active_agent[a] = 0;
      active_object[target[a]] = 0;
      --remaining;
    }
  }

  return repair_in_scope(instance, result, in_market_agent, in_market_object);
}

Matching pareto_repair(const Instance& instance, Matching m) {
  require_valid_matching(instance, m);
  const std::vector<char> all(instance.n(), 1);
  return repair_in_scope(instance, std::move(m), all, all);
}

}  // namespace omatch
