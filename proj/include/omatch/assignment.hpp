#pragma once

#include <tuple>
#include <vector>

// Maximum-weight bipartite matching over an ordered additive weight type,
// via successive shortest augmenting paths with node potentials. The weight
// type only needs a total order and exact group arithmetic, so the same
// solver runs on plain doubles, lexicographic slot vectors, and
// arbitrary-precision integers.
//
// Requirements, found by ADL:
//   void   weight_add(DW&, const DW&);
//   void   weight_sub(DW&, const DW&);
//   void   weight_add_arc(DW&, const AW&);   // DW += dense form of arc weight
//   void   weight_sub_arc(DW&, const AW&);
//   bool   weight_less(const DW&, const DW&);
// All arc weights must be >= the zero prototype; the returned matching is a
// maximum-weight (not necessarily perfect) matching.

namespace omatch::detail {

inline void weight_add(double& a, const double& b) { a += b; }
inline void weight_sub(double& a, const double& b) { a -= b; }
inline void weight_add_arc(double& a, const double& b) { a += b; }
inline void weight_sub_arc(double& a, const double& b) { a -= b; }
inline bool weight_less(const double& a, const double& b) { return a < b; }

template <class DW, class AW>
std::vector<int> max_weight_assignment(int num_agents, int num_objects,
                                       const std::vector<std::tuple<int, int, AW>>& arcs,
                                       const DW& zero) {
  std::vector<int> agent_match(num_agents, -1);
  if (arcs.empty() || num_agents == 0 || num_objects == 0) return agent_match;

  // Adjacency: arc indices per agent.
  std::vector<std::vector<int>> adj(num_agents);
  for (size_t i = 0; i < arcs.size(); ++i) adj[std::get<0>(arcs[i])].push_back(static_cast<int>(i));

  std::vector<int> object_match(num_objects, -1);
  std::vector<int> matched_arc(num_objects, -1);  // arc index of the matched edge per object

  // Potentials keep reduced costs nonnegative: pi_object starts at -w_max.
  DW w_max = zero;
  for (const auto& [a, o, w] : arcs) {
    DW d = zero;
    weight_add_arc(d, w);
    if (weight_less(w_max, d)) w_max = d;
  }
  std::vector<DW> pi_agent(num_agents, zero);
  DW neg_wmax = zero;
  weight_sub(neg_wmax, w_max);
  std::vector<DW> pi_object(num_objects, neg_wmax);
  DW pi_sink = neg_wmax;

  const int num_nodes = num_agents + num_objects + 1;  // agents, objects, sink
  const int sink = num_nodes - 1;
  std::vector<DW> dist(num_nodes, zero);
  std::vector<char> reached(num_nodes), done(num_nodes);
  std::vector<int> prev_node(num_nodes), prev_arc(num_nodes);

  const auto object_node = [&](int o) { return num_agents + o; };

  for (int round = 0; round <= std::min(num_agents, num_objects); ++round) {
    std::fill(reached.begin(), reached.end(), 0);
    std::fill(done.begin(), done.end(), 0);
    for (int a = 0; a < num_agents; ++a) {
      if (agent_match[a] == -1) {
        dist[a] = zero;
        reached[a] = 1;
        prev_node[a] = -1;
      }
    }

    while (true) {
      int u = -1;
      for (int v = 0; v < num_nodes; ++v)
        if (reached[v] && !done[v] && (u == -1 || weight_less(dist[v], dist[u]))) u = v;
      if (u == -1 || u == sink) break;
      done[u] = 1;

      const auto relax = [&](int v, DW cand, int arc_idx) {
        // done nodes stay frozen so the predecessor pointers form a tree even
        // when rounding makes a reduced cost fractionally negative
        if (done[v]) return;
        if (!reached[v] || weight_less(cand, dist[v])) {
          dist[v] = std::move(cand);
          reached[v] = 1;
          prev_node[v] = u;
          prev_arc[v] = arc_idx;
        }
      };

      if (u < num_agents) {
        for (int idx : adj[u]) {
          const auto& [a, o, w] = arcs[idx];
          if (object_match[o] == a) continue;
          // reduced cost of a->o is (-w) + pi_a - pi_o
          DW cand = dist[u];
          weight_sub_arc(cand, w);
          weight_add(cand, pi_agent[u]);
          weight_sub(cand, pi_object[o]);
          relax(object_node(o), std::move(cand), idx);
        }
      } else {
        const int o = u - num_agents;
        if (object_match[o] == -1) {
          DW cand = dist[u];
          weight_add(cand, pi_object[o]);
          weight_sub(cand, pi_sink);
          relax(sink, std::move(cand), -1);
        } else {
          const int a = object_match[o];
          const auto& w = std::get<2>(arcs[matched_arc[o]]);
          DW cand = dist[u];
          weight_add_arc(cand, w);
          weight_add(cand, pi_object[o]);
          weight_sub(cand, pi_agent[a]);
          relax(a, std::move(cand), matched_arc[o]);
        }
      }
    }

    if (!reached[sink]) break;
    // True path cost is dist[sink] + pi_sink (source potential is fixed 0);
    // stop once the best augmenting path no longer improves total weight.
    DW true_cost = dist[sink];
    weight_add(true_cost, pi_sink);
    if (!weight_less(true_cost, zero)) break;

    const DW& d_sink = dist[sink];
    for (int v = 0; v < num_nodes; ++v) {
      const DW& delta = (reached[v] && weight_less(dist[v], d_sink)) ? dist[v] : d_sink;
      if (v < num_agents)
        weight_add(pi_agent[v], delta);
      else if (v < sink)
        weight_add(pi_object[v - num_agents], delta);
    }
    weight_add(pi_sink, d_sink);

    // Flip matched status along the augmenting path (sink back to a free agent).
    int v = prev_node[sink];
    while (v != -1) {
      const int u = prev_node[v];
      const int idx = prev_arc[v];
      if (v >= num_agents && v < sink) {
        // arc u(agent) -> v(object): becomes matched
        const int o = v - num_agents;
        agent_match[u] = o;
        object_match[o] = u;
        matched_arc[o] = idx;
      } else {
        // arc u(object) -> v(agent): previously matched, now released; a later
        // step of the walk rebinds both endpoints.
        if (agent_match[v] == u - num_agents) agent_match[v] = -1;
      }
      v = u;
    }
  }

  return agent_match;
}

}  // namespace omatch::detail
