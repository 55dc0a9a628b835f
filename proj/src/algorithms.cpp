#include "omatch/algorithms.hpp"

#include <cmath>
#include <stdexcept>

namespace omatch {

namespace {

QueryLedger empty_ledger(int n) { return QueryLedger(LedgerMode::Adaptive, n); }

int integer_cbrt(int n) {
  int r = static_cast<int>(std::llround(std::cbrt(static_cast<double>(n))));
  while (r > 0 && static_cast<long long>(r) * r * r > n) --r;
  while (static_cast<long long>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Queries in agent order, acceptable objects ascending, one per pair, each at
// the threshold of the pair's rank.
std::vector<ThresholdQuery> one_query_per_pair(const Instance& instance,
                                               const std::vector<double>& by_rank) {
  std::vector<ThresholdQuery> queries;
  for (int a = 0; a < instance.n(); ++a)
    for (int o : instance.acceptable(a))
      queries.push_back({a, o, by_rank[instance.rank_or_zero(a, o) - 1]});
  return queries;
}

std::vector<WeightedEdge> threshold_edges(const Instance& instance, PriorityKind kind,
                                          const std::vector<ThresholdQuery>& queries,
                                          const std::vector<char>& answers) {
  std::vector<WeightedEdge> edges;
  edges.reserve(queries.size());
  for (size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    const int r = instance.rank_or_zero(q.agent, q.object);
    edges.push_back(
        {q.agent, q.object, edge_weight(kind, instance.n(), r, answers[i] ? q.threshold : 0.0)});
  }
  return edges;
}

AlgoResult finish(const Instance& instance, PriorityKind kind, Matching m, QueryLedger ledger) {
  if (kind == PriorityKind::ParetoOnly) m = pareto_repair(instance, ttc(instance, m));
  return {std::move(m), std::move(ledger), kind};
}

}  // namespace

int adaptive_band_count(int n, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  const double c = std::ceil(std::log(static_cast<double>(n) * n / epsilon) /
                             std::log(1.0 + epsilon / 2.0));
  return std::max(1, static_cast<int>(c));
}

std::vector<double> adaptive_thresholds(int n, double epsilon) {
  const int c = adaptive_band_count(n, epsilon);
  std::vector<double> t(c);
  for (int k = 1; k <= c; ++k) t[k - 1] = std::pow(2.0 / (2.0 + epsilon), k);
  return t;
}

std::vector<double> nonadaptive_unit_sum_thresholds(int n) {
  const double n13 = std::cbrt(static_cast<double>(n));
  std::vector<double> t(n);
  t[0] = 1.0 / n13;
  for (int i = 2; i <= n; ++i) t[i - 1] = 1.0 / (std::min(static_cast<double>(i), n13) * n13 * n13);
  return t;
}

std::vector<double> nonadaptive_unit_range_thresholds(int n) {
  std::vector<double> t(n, 1.0 / std::sqrt(static_cast<double>(n)));
  t[0] = 1.0;
  return t;
}

AlgoResult welfare_optimal_priority(const Instance& instance, PriorityKind kind,
                                    const ValuationProfile& v) {
  const auto violations = validate(instance, v);
  if (!violations.empty())
    throw std::invalid_argument("welfare_optimal_priority: " + violations.front());
  const int n = instance.n();
  std::vector<WeightedEdge> edges;
  for (int a = 0; a < n; ++a)
    for (int o : instance.acceptable(a))
      edges.push_back({a, o, edge_weight(kind, n, instance.rank_or_zero(a, o), v.value(a, o))});
  Matching m = max_weight_matching(n, edges);
  if (kind == PriorityKind::ParetoOnly) m = pareto_repair(instance, std::move(m));
  return {std::move(m), empty_ledger(n), kind};
}

AlgoResult adaptive_approx(const Instance& instance, PriorityKind kind, double epsilon,
                           QuerySource& source) {
  const int n = instance.n();
  const auto thresholds = adaptive_thresholds(n, epsilon);

  std::vector<WeightedEdge> edges;
  for (int a = 0; a < n; ++a) {
    const auto bands = locate_bands(source, instance, a, thresholds);
    for (int o : instance.acceptable(a)) {
      const double value_part = bands[o] > 0 ? thresholds[bands[o] - 1] : 0.0;
      edges.push_back({a, o, edge_weight(kind, n, instance.rank_or_zero(a, o), value_part)});
    }
  }
  Matching m = max_weight_matching(n, edges);
  return finish(instance, kind, std::move(m), source.ledger());
}

AlgoResult nonadaptive_priority_unit_sum(const Instance& instance, PriorityKind kind,
                                         QuerySource& source) {
  if (kind == PriorityKind::ParetoOnly)
    throw std::invalid_argument(
        "nonadaptive_priority_unit_sum needs a signature-based kind; use nonadaptive_po_unit_sum");
  const auto queries = one_query_per_pair(instance, nonadaptive_unit_sum_thresholds(instance.n()));
  const auto answers = source.ask_batch(queries);
  Matching m = max_weight_matching(instance.n(), threshold_edges(instance, kind, queries, answers));
  return {std::move(m), source.ledger(), kind};
}

AlgoResult nonadaptive_po_unit_sum(const Instance& instance, QuerySource& source) {
  const int n = instance.n();
  if (n < 8)
    throw std::invalid_argument("nonadaptive_po_unit_sum requires n >= 8");
  const int aux_bound = integer_cbrt(n) / 2;  // floor(n^(1/3) / 2) >= 1

  const auto queries = one_query_per_pair(instance, nonadaptive_unit_sum_thresholds(n));
  const auto answers = source.ask_batch(queries);
  const Matching main_full = max_weight_matching(
      n, threshold_edges(instance, PriorityKind::ParetoOnly, queries, answers));

  // Keep only positively weighted pairs of the max-weight matching.
  std::vector<char> answered(static_cast<size_t>(n) * n, 0);
  for (size_t i = 0; i < queries.size(); ++i)
    if (answers[i]) answered[static_cast<size_t>(queries[i].agent) * n + queries[i].object] = 1;
  Matching main(n);
  bool has_rank1 = false;
  for (const auto& [a, o] : main_full.pairs()) {
    if (!answered[static_cast<size_t>(a) * n + o]) continue;
    main.add(a, o);
    if (instance.rank_or_zero(a, o) == 1) has_rank1 = true;
  }

  const Matching aux_full = max_cardinality_rank_bounded(instance, has_rank1 ? 1 : aux_bound);
  Matching endowment = main;
  for (const auto& [a, o] : aux_full.pairs())
    if (!endowment.agent_matched(a) && !endowment.object_matched(o)) endowment.add(a, o);
  // Greedy completion: each still-free agent takes its lowest-index free
  // acceptable object.
  for (int a = 0; a < n; ++a) {
    if (endowment.agent_matched(a)) continue;
    for (int o : instance.acceptable(a)) {
      if (!endowment.object_matched(o)) {
        endowment.add(a, o);
        break;
      }
    }
  }
  Matching m = pareto_repair(instance, ttc(instance, endowment));
  return {std::move(m), source.ledger(), PriorityKind::ParetoOnly};
}

AlgoResult nonadaptive_unit_range(const Instance& instance, PriorityKind kind,
                                  QuerySource& source) {
  const auto queries = one_query_per_pair(instance, nonadaptive_unit_range_thresholds(instance.n()));
  std::vector<char> forced(queries.size(), 0);
  for (size_t i = 0; i < queries.size(); ++i)
    if (instance.rank_or_zero(queries[i].agent, queries[i].object) == 1) forced[i] = 1;
  const auto answers = source.ask_batch(queries, &forced);
  Matching m = max_weight_matching(instance.n(), threshold_edges(instance, kind, queries, answers));
  return finish(instance, kind, std::move(m), source.ledger());
}

AlgoResult ordinal_baseline(const Instance& instance, PriorityKind kind) {
  const int n = instance.n();
  const PriorityKind weight_kind =
      kind == PriorityKind::ParetoOnly ? PriorityKind::RankMaximal : kind;
  std::vector<WeightedEdge> edges;
  for (int a = 0; a < n; ++a)
    for (int o : instance.acceptable(a))
      edges.push_back({a, o, edge_weight(weight_kind, n, instance.rank_or_zero(a, o), 0.0)});
  Matching m = max_weight_matching(n, edges);
  return finish(instance, kind, std::move(m), empty_ledger(n));
}

}  // namespace omatch
