#include "omatch/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace omatch {
namespace adversary {

namespace {

Instance build_skeleton(int n) {
  if (n < kMinLowerBoundSize)
    throw std::invalid_argument("lower-bound instance requires n >= " +
                                std::to_string(kMinLowerBoundSize));
  const BlockDesign d = block_design(n);
  std::vector<WeakOrder> prefs(n);
  for (int a = 0; a < n; ++a) {
    const int block = d.block_of(a);
    const int second = block >= 0 ? d.second_choice_object(block) : n - 2;  // h_{n-1}
    WeakOrder order;
    order.tiers.push_back({0});
    order.tiers.push_back({second});
    // The utility bank gives every remaining object one shared value, so the
    // tail is a single indifference tier (ascending by index).
    std::vector<int> tail;
    for (int o = 1; o < n; ++o)
      if (o != second) tail.push_back(o);
    order.tiers.push_back(std::move(tail));
    prefs[a] = std::move(order);
  }
  return Instance(n, std::move(prefs));
}

void check_eps(int n, double eps) {
  const double limit = 1.0 / (static_cast<double>(n) * n * n * n);
  if (!(eps > 0.0) || !(eps < limit))
    throw std::invalid_argument("bank epsilon must lie in (0, 1/n^4)");
}

UtilityBank bank_for(ValuationKind kind, int n, double eps) {
  return kind == ValuationKind::UnitSum ? utility_bank_unit_sum(n, eps)
                                        : utility_bank_unit_range(n, eps);
}

ValuationProfile profile_from_functions(const Instance& instance, const UtilityBank& bank,
                                        const std::vector<int>& function_of,
                                        ValuationKind kind) {
  const int n = instance.n();
  ValuationProfile v;
  v.kind = kind;
  v.values.assign(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    const auto& u = bank[function_of[a]];
    const auto& tiers = instance.preferences(a).tiers;
    v.values[a][tiers[0][0]] = u.top;
    v.values[a][tiers[1][0]] = u.second;
    for (size_t t = 2; t < tiers.size(); ++t)
      for (int o : tiers[t]) v.values[a][o] = u.tail;
  }
  return v;
}

// Seed member of the profile family: in each block the lower-indexed special
// agent holds u_{2j-1} and the higher one u_{2j}.
std::vector<int> seed_functions(const Instance& instance, const std::vector<BlockInfo>& blocks) {
  std::vector<int> f(instance.n(), 0);
  for (const auto& b : blocks) {
    const int j = static_cast<int>(b.type);
    f[b.special_low] = 2 * j - 1;
    f[b.special_high] = 2 * j;
  }
  return f;
}

std::vector<int> adversarial_functions(const Instance& instance, const ThresholdMatrix& t,
                                       const Matching& m) {
  const BlockDesign d = block_design(instance.n());
  const auto blocks = classify_blocks(instance, t);
  std::vector<int> f = seed_functions(instance, blocks);
  for (size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const int j = static_cast<int>(b.type);
    const int prize = d.second_choice_object(static_cast<int>(i));
    if (m.object_of(b.special_high) == prize) {
      f[b.special_high] = 2 * j - 1;
      f[b.special_low] = 2 * j;
    }
    // If the lower special (or nobody) received the prize, the seed
    // assignment already matches the adversary's choice.
  }
  return f;
}

// Answers a query batch from a profile fixed only after the batch is known.
class DeferredSource final : public QuerySource {
 public:
  DeferredSource(const Instance& instance, ValuationKind bank_kind, double eps)
      : instance_(instance),
        bank_kind_(bank_kind),
        eps_(eps),
        ledger_(LedgerMode::NonAdaptiveOnePerPair, instance.n()) {}

  bool ask(const ThresholdQuery&) override {
    throw std::logic_error("adversary harness admits only one-shot query batches");
  }

  std::vector<char> ask_batch(const std::vector<ThresholdQuery>& queries,
                              const std::vector<char>* forced) override {
    queries_ = queries;
    matrix_ = threshold_matrix_from_queries(instance_, queries);
    const auto blocks = classify_blocks(instance_, matrix_);
    const auto bank = bank_for(bank_kind_, instance_.n(), eps_);
    seed_ = profile_from_functions(instance_, bank, seed_functions(instance_, blocks), bank_kind_);

    std::vector<char> bits(queries.size(), 0);
    for (size_t i = 0; i < queries.size(); ++i) {
      bits[i] = answer(seed_, queries[i]) ? 1 : 0;
      ledger_.record({queries[i], bits[i] != 0, forced && (*forced)[i] != 0});
    }
    ledger_.seal();
    return bits;
  }

  const QueryLedger& ledger() const override { return ledger_; }
  int n() const override { return instance_.n(); }

  const ThresholdMatrix& matrix() const { return matrix_; }
  const std::vector<ThresholdQuery>& queries() const { return queries_; }

 private:
  const Instance& instance_;
  ValuationKind bank_kind_;
  double eps_;
  QueryLedger ledger_;
  std::vector<ThresholdQuery> queries_;
  ThresholdMatrix matrix_;
  ValuationProfile seed_;
};

Matching benchmark_matching(const Instance& instance, const std::vector<int>& function_of) {
  const int n = instance.n();
  const BlockDesign d = block_design(n);
  Matching m(n);
  for (int block = 0; block < d.num_blocks; ++block) {
    const int j_even_target = d.second_choice_object(block);
    for (int a = d.first_agent(block); a < d.first_agent(block) + 5; ++a) {
      if (function_of[a] != 0 && function_of[a] % 2 == 0) {
        m.add(a, j_even_target);
        break;
      }
    }
  }
  if (d.remainder > 0) m.add(5 * d.num_blocks, n - 2);
  for (int a = 0, o = 0; a < n; ++a) {
    if (m.agent_matched(a)) continue;
    while (m.object_matched(o)) ++o;
    m.add(a, o);
  }
  return m;
}

}  // namespace

BlockDesign block_design(int n) {
  BlockDesign d;
  d.n = n;
  d.num_blocks = n / 5;
  d.remainder = n - 5 * d.num_blocks;
  return d;
}

ThresholdMatrix threshold_matrix_from_queries(const Instance& instance,
                                              const std::vector<ThresholdQuery>& queries) {
  const int n = instance.n();
  ThresholdMatrix t;
  t.by_rank.assign(n, std::vector<double>(n, kNeverAskedThreshold));
  // Tied objects share a rank; the slot keeps the lowest-indexed one.
  std::vector<std::vector<int>> slot_object(n, std::vector<int>(n, n));
  for (const auto& q : queries) {
    const int r = instance.rank_or_zero(q.agent, q.object);
    if (r == 0) throw std::invalid_argument("query on an unacceptable pair");
    if (q.object < slot_object[q.agent][r - 1]) {
      slot_object[q.agent][r - 1] = q.object;
      t.by_rank[q.agent][r - 1] = q.threshold;
    }
  }
  return t;
}

AgentType classify_agent(double t1, double t2, int n) {
  const double root = 1.0 / std::sqrt(static_cast<double>(n));
  if (t2 <= root) return t1 < 0.5 ? AgentType::Type1 : AgentType::Type2;
  return t1 < root ? AgentType::Type3 : AgentType::Type4;
}

UtilityBank utility_bank_unit_sum(int n, double eps) {
  check_eps(n, eps);
  const double c1 = 1.0 / std::sqrt(static_cast<double>(n));
  const double c2 = 1.0 / (2.0 * (n - 2));
  const double c3 = (1.0 - c1) / (n - 2);
  UtilityBank u;
  u[0] = {c1 * c1 + eps / 2.0, c1 * c1, c1 * c1 - c2 * eps};
  u[1] = {1.0 - c1, c1, 0.0};
  u[2] = {0.5 + eps, 0.5 - eps, 0.0};
  u[3] = {0.5 - c1 - eps, c1 + eps, c2};
  u[4] = {0.25 + eps, 0.25 - eps, c2};
  u[5] = {1.0 - c1 * c1, c1 * c1, 0.0};
  u[6] = {1.0 - c1 + eps, c1 - eps, 0.0};
  u[7] = {c1 - c1 * c1, c1 * c1, c3};
  u[8] = {3.0 * c1 / 4.0, c1 / 4.0, c3};
  return u;
}

UtilityBank utility_bank_unit_range(int n, double eps) {
  check_eps(n, eps);
  const double c1 = 1.0 / std::sqrt(static_cast<double>(n));
  UtilityBank u;
  u[0] = {1.0, c1 * c1, 0.0};
  u[1] = {1.0, c1, 0.0};
  u[2] = {1.0, 0.5, 0.0};
  u[3] = {1.0, c1 + eps, 0.0};
  u[4] = {1.0, 0.25 - eps, 0.0};
  u[5] = {1.0, c1 * c1, 0.0};
  u[6] = {1.0, c1 - eps, 0.0};
  u[7] = {1.0, c1 * c1, 0.0};
  u[8] = {1.0, c1 / 4.0, 0.0};
  return u;
}

Instance build_lb_instance_unit_sum(int n) { return build_skeleton(n); }

std::pair<Instance, UtilityBank> build_lb_instance_unit_range(int n, double eps) {
  return {build_skeleton(n), utility_bank_unit_range(n, eps)};
}

std::vector<BlockInfo> classify_blocks(const Instance& instance, const ThresholdMatrix& t) {
  const int n = instance.n();
  const BlockDesign d = block_design(n);
  std::vector<BlockInfo> blocks(d.num_blocks);
  for (int block = 0; block < d.num_blocks; ++block) {
    std::array<std::vector<int>, 5> by_type;  // index 1..4 used
    for (int a = d.first_agent(block); a < d.first_agent(block) + 5; ++a) {
      const AgentType ty = classify_agent(t.at(a, 1), t.at(a, 2), n);
      by_type[static_cast<int>(ty)].push_back(a);
    }
    for (int j = 1; j <= 4; ++j) {
      if (by_type[j].size() >= 2) {
        blocks[block].type = static_cast<AgentType>(j);
        blocks[block].special_low = by_type[j][0];
        blocks[block].special_high = by_type[j][1];
        break;
      }
    }
  }
  return blocks;
}

ValuationProfile adversarial_profile(const Instance& instance, const ThresholdMatrix& t,
                                     const Matching& m, ValuationKind bank_kind, double eps) {
  require_valid_matching(instance, m);
  const auto bank = bank_for(bank_kind, instance.n(), eps);
  return profile_from_functions(instance, bank, adversarial_functions(instance, t, m), bank_kind);
}

AdversaryReport run_adversary(const OneShotAlgorithm& algorithm, int n, ValuationKind bank_kind,
                              double eps) {
  if (eps == 0.0) {
    const double n4 = static_cast<double>(n) * n * n * n;
    eps = 1.0 / (2.0 * n4);
  }
  const Instance instance = build_skeleton(n);
  const BlockDesign d = block_design(n);

  DeferredSource seed_source(instance, bank_kind, eps);
  const AlgoResult first = algorithm(instance, seed_source);
  require_valid_matching(instance, first.matching);

  const ThresholdMatrix& t = seed_source.matrix();
  const auto functions = adversarial_functions(instance, t, first.matching);
  const auto bank = bank_for(bank_kind, n, eps);
  const ValuationProfile picked = profile_from_functions(instance, bank, functions, bank_kind);

  ValueOracle replay_source(instance, picked, LedgerMode::NonAdaptiveOnePerPair);
  const AlgoResult replay = algorithm(instance, replay_source);

  const auto& a_entries = seed_source.ledger().entries();
  const auto& b_entries = replay_source.ledger().entries();
  bool indistinguishable = a_entries.size() == b_entries.size();
  for (size_t i = 0; indistinguishable && i < a_entries.size(); ++i) {
    indistinguishable = a_entries[i].query.agent == b_entries[i].query.agent &&
                        a_entries[i].query.object == b_entries[i].query.object &&
                        a_entries[i].query.threshold == b_entries[i].query.threshold &&
                        a_entries[i].response == b_entries[i].response;
  }

  const Matching benchmark = benchmark_matching(instance, functions);
  require_valid_matching(instance, benchmark);

  AdversaryReport report;
  report.n = n;
  report.bank_kind = bank_kind;
  report.eps = eps;
  report.num_blocks = d.num_blocks;
  report.remainder = d.remainder;
  for (const auto& b : classify_blocks(instance, t))
    ++report.block_type_counts[static_cast<int>(b.type) - 1];
  report.benchmark_welfare = welfare(benchmark, picked);
  report.algorithm_welfare = welfare(first.matching, picked);
  report.ratio = report.algorithm_welfare > 0.0
                     ? report.benchmark_welfare / report.algorithm_welfare
                     : std::numeric_limits<double>::infinity();
  report.welfare_floor = std::sqrt(static_cast<double>(n)) / 28.0;
  report.indistinguishable = indistinguishable;
  report.replay_matching_equal = replay.matching == first.matching;
  report.total_queries = seed_source.ledger().total();
  return report;
}

}  // namespace adversary
}  // namespace omatch
