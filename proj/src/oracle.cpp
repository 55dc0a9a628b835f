#include "omatch/oracle.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "omatch/assignment.hpp"
#include "omatch/engine.hpp"

namespace omatch {
namespace oracle {

namespace {

using boost::multiprecision::cpp_int;

void check_enum_guard(const Instance& instance) {
  if (instance.n() > kMaxEnumerationSize)
    throw std::invalid_argument("oracle enumeration limited to n <= " +
                                std::to_string(kMaxEnumerationSize));
}

bool enumerate_rec(const Instance& instance, int agent, Matching& current,
                   const std::function<bool(const Matching&)>& visit) {
  if (agent == instance.n()) return visit(current);
  if (!enumerate_rec(instance, agent + 1, current, visit)) return false;  // agent unmatched
  for (int o : instance.acceptable(agent)) {
    if (current.object_matched(o)) continue;
    current.add(agent, o);
    const bool keep_going = enumerate_rec(instance, agent + 1, current, visit);
    current.erase_agent(agent);
    if (!keep_going) return false;
  }
  return true;
}

// nu makes every agent weakly better off than mu and someone strictly better.
bool dominates(const Instance& instance, const Matching& nu, const Matching& mu) {
  bool strict = false;
  for (int a = 0; a < instance.n(); ++a) {
    const int oa = nu.object_of(a);
    const int ob = mu.object_of(a);
    if (!instance.weakly_prefers(a, oa, ob)) return false;
    if (instance.strictly_prefers(a, oa, ob)) strict = true;
  }
  return strict;
}

Signature best_signature(const Instance& instance, PriorityKind kind) {
  Signature best;
  bool have = false;
  enumerate_matchings(instance, [&](const Matching& m) {
    Signature sig = signature(instance, m, kind);
    if (!have || best < sig) {
      best = std::move(sig);
      have = true;
    }
  });
  return best;
}

// Literal priority vector entries for the signature-based criteria.
std::vector<cpp_int> literal_priorities(PriorityKind kind, int n) {
  const auto pow_n = [&](int e) {
    cpp_int p = 1;
    for (int i = 0; i < e; ++i) p *= n;
    return p;
  };
  std::vector<cpp_int> p(n + 1);
  for (int j = 1; j <= n; ++j) {
    switch (kind) {
      case PriorityKind::RankMaximal: p[j] = pow_n(2 * (n - j + 1)); break;
      case PriorityKind::MaxCardRankMaximal: p[j] = pow_n(2 * n) + pow_n(2 * (n - j)); break;
      case PriorityKind::Fair: p[j] = 4 * pow_n(2 * n) - 2 * pow_n(j - 1); break;
      default: throw std::invalid_argument("literal priorities need a signature-based kind");
    }
  }
  return p;
}

struct BigWeight {
  cpp_int priority;
  double value = 0.0;
};

void weight_add(BigWeight& a, const BigWeight& b) {
  a.priority += b.priority;
  a.value += b.value;
}
void weight_sub(BigWeight& a, const BigWeight& b) {
  a.priority -= b.priority;
  a.value -= b.value;
}
void weight_add_arc(BigWeight& a, const BigWeight& b) { weight_add(a, b); }
void weight_sub_arc(BigWeight& a, const BigWeight& b) { weight_sub(a, b); }
bool weight_less(const BigWeight& a, const BigWeight& b) {
  if (a.priority != b.priority) return a.priority < b.priority;
  return a.value < b.value;
}

}  // namespace

void enumerate_matchings(const Instance& instance,
                         const std::function<void(const Matching&)>& visit) {
  enumerate_matchings_until(instance, [&](const Matching& m) {
    visit(m);
    return true;
  });
}

void enumerate_matchings_until(const Instance& instance,
                               const std::function<bool(const Matching&)>& visit) {
  check_enum_guard(instance);
  Matching current(instance.n());
  enumerate_rec(instance, 0, current, visit);
}

std::vector<Matching> all_matchings(const Instance& instance) {
  std::vector<Matching> out;
  enumerate_matchings(instance, [&](const Matching& m) { out.push_back(m); });
  return out;
}

bool is_pareto_optimal(const Instance& instance, const Matching& m) {
  check_enum_guard(instance);
  require_valid_matching(instance, m);
  bool dominated = false;
  enumerate_matchings_until(instance, [&](const Matching& nu) {
    dominated = dominates(instance, nu, m);
    return !dominated;
  });
  return !dominated;
}

ClassOptimum optimal_within_class(const Instance& instance, const ValuationProfile& v,
                                  PriorityKind kind) {
  check_enum_guard(instance);
  ClassOptimum out;
  out.kind = kind;
  out.best_matching = Matching(instance.n());

  if (kind == PriorityKind::ParetoOnly) {
    // The welfare maximum over all matchings is attained by some Pareto
    // optimal matching: any dominating matching has weakly larger welfare.
    double best = -1.0;
    enumerate_matchings(instance, [&](const Matching& m) {
      best = std::max(best, welfare(m, v));
    });
    std::vector<Matching> candidates;
    enumerate_matchings(instance, [&](const Matching& m) {
      if (welfare(m, v) >= best - 1e-12) candidates.push_back(m);
    });
    bool found = false;
    for (const auto& m : candidates) {
      if (is_pareto_optimal(instance, m)) {
        out.best_matching = m;
        out.best_welfare = welfare(m, v);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no Pareto optimal matching among welfare maximizers");
    if (instance.n() <= kMaxQuadraticSize) {
      long long count = 0;
      enumerate_matchings(instance, [&](const Matching& m) {
        if (is_pareto_optimal(instance, m)) ++count;
      });
      out.class_size = count;
    } else {
      out.class_size = -1;  // counting the Pareto class is quadratic
    }
    return out;
  }

  out.class_signature = best_signature(instance, kind);
  double best = -1.0;
  long long count = 0;
  Matching arg(instance.n());
  enumerate_matchings(instance, [&](const Matching& m) {
    if (signature(instance, m, kind) != out.class_signature) return;
    ++count;
    const double w = welfare(m, v);
    if (w > best) {
      best = w;
      arg = m;
    }
  });
  out.best_matching = arg;
  out.best_welfare = best;
  out.class_size = count;
  return out;
}

bool in_class(const Instance& instance, PriorityKind kind, const Matching& m) {
  if (kind == PriorityKind::ParetoOnly) return is_pareto_optimal(instance, m);
  return signature(instance, m, kind) == best_signature(instance, kind);
}

double welfare_loss_ratio(const Instance& instance, const ValuationProfile& v, PriorityKind kind,
                          const Matching& m) {
  check_enum_guard(instance);
  if (!in_class(instance, kind, m))
    throw std::invalid_argument("welfare_loss_ratio: matching does not satisfy its class");
  const ClassOptimum opt = optimal_within_class(instance, v, kind);
  const double w = welfare(m, v);
  if (opt.best_welfare == 0.0 && w == 0.0) return 1.0;
  if (w == 0.0) return std::numeric_limits<double>::infinity();
  return opt.best_welfare / w;
}

std::vector<std::string> literal_priority_strings(PriorityKind kind, int n) {
  const auto p = literal_priorities(kind, n);
  std::vector<std::string> out;
  for (int j = 1; j <= n; ++j) out.push_back(p[j].str());
  return out;
}

bool bigint_priority_check(const Instance& instance, const ValuationProfile& v,
                           PriorityKind kind) {
  if (instance.n() > kMaxQuadraticSize)
    throw std::invalid_argument("bigint check limited to n <= " +
                                std::to_string(kMaxQuadraticSize));
  if (kind == PriorityKind::ParetoOnly)
    throw std::invalid_argument("bigint check needs a signature-based kind");
  const int n = instance.n();
  const auto p = literal_priorities(kind, n);

  std::vector<std::tuple<int, int, BigWeight>> arcs;
  std::vector<WeightedEdge> edges;
  for (int a = 0; a < n; ++a) {
    for (int o : instance.acceptable(a)) {
      const int r = instance.rank_or_zero(a, o);
      arcs.emplace_back(a, o, BigWeight{p[r], v.value(a, o)});
      edges.push_back({a, o, edge_weight(kind, n, r, v.value(a, o))});
    }
  }
  const auto match = detail::max_weight_assignment(n, n, arcs, BigWeight{});
  Matching reference(n);
  for (int a = 0; a < n; ++a)
    if (match[a] >= 0) reference.add(a, match[a]);

  const Matching composite = max_weight_matching(n, edges);
  return signature(instance, reference, kind) == signature(instance, composite, kind) &&
         std::abs(welfare(reference, v) - welfare(composite, v)) <= 1e-9;
}

}  // namespace oracle
}  // namespace omatch
