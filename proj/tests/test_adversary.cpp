#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "omatch/adversary.hpp"
#include "omatch/algorithms.hpp"

using namespace omatch;
using namespace omatch::adversary;

TEST_CASE("block instance layout") {
  const Instance inst = build_lb_instance_unit_sum(20);
  const BlockDesign d = block_design(20);
  CHECK(d.num_blocks == 4);
  CHECK(d.remainder == 0);
  for (int a = 0; a < 20; ++a) CHECK(inst.rank_or_zero(a, 0) == 1);  // everyone tops h_1
  // second block (agents 6..10, 1-based) ranks h_3 second
  for (int a = 5; a < 10; ++a) CHECK(inst.rank_or_zero(a, 2) == 2);
  // the tail is one shared indifference tier at rank 3
  CHECK(inst.rank_or_zero(5, 1) == 3);
  CHECK(inst.rank_or_zero(5, 3) == 3);
  CHECK(inst.preferences(5).tiers.size() == 3);

  const Instance odd = build_lb_instance_unit_sum(23);
  const BlockDesign d23 = block_design(23);
  CHECK(d23.num_blocks == 4);
  CHECK(d23.remainder == 3);
  for (int a = 20; a < 23; ++a) CHECK(odd.rank_or_zero(a, 21) == 2);  // h_{n-1}

  CHECK_THROWS_AS(build_lb_instance_unit_sum(17), std::invalid_argument);
}

TEST_CASE("unit-sum utility bank") {
  const int n = 25;
  const double eps = 1e-7;  // < 1/n^4 = 2.56e-6
  const auto bank = utility_bank_unit_sum(n, eps);
  CHECK(bank[2].top == doctest::Approx(0.5 + eps));
  CHECK(bank[5].top == doctest::Approx(0.96));   // 1 - c1^2 with c1 = 0.2
  CHECK(bank[5].second == doctest::Approx(0.04));

  // every function laid onto every agent slot gives a valid unit-sum row
  const Instance inst = build_lb_instance_unit_sum(n);
  for (int f = 0; f <= 8; ++f) {
    std::vector<int> all_f(n, f);
    ValuationProfile v;
    v.kind = ValuationKind::UnitSum;
    v.values.assign(n, std::vector<double>(n, 0.0));
    for (int a = 0; a < n; ++a) {
      const auto& tiers = inst.preferences(a).tiers;
      v.values[a][tiers[0][0]] = bank[f].top;
      v.values[a][tiers[1][0]] = bank[f].second;
      for (int o : tiers[2]) v.values[a][o] = bank[f].tail;
    }
    CHECK(validate(inst, v).empty());
  }

  CHECK_THROWS_AS(utility_bank_unit_sum(n, 1.0 / 8.0), std::invalid_argument);
  CHECK_THROWS_AS(utility_bank_unit_sum(n, 0.0), std::invalid_argument);
}

TEST_CASE("unit-range utility bank") {
  const int n = 25;
  const double eps = 1e-7;
  const auto bank = utility_bank_unit_range(n, eps);
  CHECK(bank[4].second == doctest::Approx(0.25 - eps));
  for (int f = 0; f <= 8; ++f) {
    CHECK(bank[f].top == 1.0);
    CHECK(bank[f].tail == 0.0);
    CHECK(bank[f].second > 0.0);
    CHECK(bank[f].second < 1.0);
  }
}

TEST_CASE("agent type regions") {
  const int n = 25;  // 1/sqrt(n) = 0.2
  CHECK(classify_agent(0.4, 0.1, n) == AgentType::Type1);
  CHECK(classify_agent(0.4, 0.2, n) == AgentType::Type1);   // boundary t2 = 1/sqrt(n)
  CHECK(classify_agent(0.5, 0.2, n) == AgentType::Type2);   // boundary t1 = 1/2
  CHECK(classify_agent(0.1, 0.3, n) == AgentType::Type3);
  CHECK(classify_agent(0.2, 0.3, n) == AgentType::Type4);   // boundary t1 = 1/sqrt(n)
  // never-asked sentinels land in the high intervals
  CHECK(classify_agent(kNeverAskedThreshold, 0.1, n) == AgentType::Type2);
  CHECK(classify_agent(0.1, kNeverAskedThreshold, n) == AgentType::Type3);
}

TEST_CASE("special agents answer identically within each type region") {
  const int n = 20;
  const double eps = 1e-7;
  const auto bank = utility_bank_unit_sum(n, eps);
  const double root = 1.0 / std::sqrt(static_cast<double>(n));

  struct Region {
    double t1, t2;
    bool yes1, yes2;  // expected answers on the rank-1 and rank-2 queries
  };
  const Region regions[] = {
      {0.25, root / 2, true, true},    // type 1
      {0.75, root / 2, false, true},   // type 2
      {root / 2, 2 * root, true, false},  // type 3
      {0.9, 2 * root, false, false},   // type 4
  };
  for (int j = 1; j <= 4; ++j) {
    const auto& r = regions[j - 1];
    CHECK(static_cast<int>(classify_agent(r.t1, r.t2, n)) == j);
    for (int f : {2 * j - 1, 2 * j}) {
      CHECK((bank[f].top >= r.t1) == r.yes1);
      CHECK((bank[f].second >= r.t2) == r.yes2);
    }
  }
}

TEST_CASE("adversarial profile construction") {
  const int n = 20;
  const Instance inst = build_lb_instance_unit_sum(n);
  const double eps = 1.0 / (2.0 * std::pow(static_cast<double>(n), 4.0));
  // a threshold matrix that makes every agent Type-1
  ThresholdMatrix t;
  t.by_rank.assign(n, std::vector<double>(n, 0.05));

  const auto blocks = classify_blocks(inst, t);
  REQUIRE(blocks.size() == 4);
  for (const auto& b : blocks) {
    CHECK(b.type == AgentType::Type1);
    CHECK(b.special_low % 5 == 0);
    CHECK(b.special_high % 5 == 1);
  }

  // nobody received a block's second-choice object: default family member
  Matching m(n);
  const auto v0 = adversarial_profile(inst, t, m, ValuationKind::UnitSum, eps);
  const auto bank = utility_bank_unit_sum(n, eps);
  CHECK(v0.values[0][0] == doctest::Approx(bank[1].top));   // u_1 on the low special
  CHECK(v0.values[1][0] == doctest::Approx(bank[2].top));   // u_2 on the high special
  CHECK(v0.values[2][0] == doctest::Approx(bank[0].top));   // u_0 elsewhere

  // the high special of block 1 received h_2: functions swap inside the block
  Matching taken(n);
  taken.add(1, 1);
  const auto v1 = adversarial_profile(inst, t, taken, ValuationKind::UnitSum, eps);
  CHECK(v1.values[1][1] == doctest::Approx(bank[1].second));  // recipient now u_1
  CHECK(v1.values[0][0] == doctest::Approx(bank[2].top));     // partner now u_2
}

TEST_CASE("adversary harness on the unit-sum algorithm") {
  const auto algo = [](const Instance& inst, QuerySource& src) {
    return nonadaptive_priority_unit_sum(inst, PriorityKind::RankMaximal, src);
  };
  const auto report = run_adversary(algo, 20, ValuationKind::UnitSum);
  CHECK(report.n == 20);
  CHECK(report.eps == doctest::Approx(1.0 / (2.0 * 160000.0)));
  CHECK(report.num_blocks == 4);
  CHECK(report.indistinguishable);
  CHECK(report.replay_matching_equal);
  CHECK(report.benchmark_welfare >= report.welfare_floor);
  CHECK(report.welfare_floor == doctest::Approx(std::sqrt(20.0) / 28.0));
  CHECK(report.total_queries == 20 * 20);
  int blocks = 0;
  for (int c : report.block_type_counts) blocks += c;
  CHECK(blocks == 4);
}

TEST_CASE("adversarial welfare respects the chain upper bound") {
  const auto algo = [](const Instance& inst, QuerySource& src) {
    return nonadaptive_priority_unit_sum(inst, PriorityKind::RankMaximal, src);
  };
  for (int n : {20, 45}) {
    const auto r = run_adversary(algo, n, ValuationKind::UnitSum);
    const double c1 = 1.0 / std::sqrt(static_cast<double>(n));
    const double bound =
        2.0 + (8.0 / std::sqrt(static_cast<double>(n))) *
                  (0.5 * r.block_type_counts[0] + (0.25 - r.eps) * r.block_type_counts[1] +
                   (c1 / 4.0) * r.block_type_counts[2] + (c1 - r.eps) * r.block_type_counts[3]);
    CHECK(r.algorithm_welfare <= bound + 1e-9);
  }
}

TEST_CASE("adversary harness on the unit-range algorithm") {
  const auto algo = [](const Instance& inst, QuerySource& src) {
    return nonadaptive_unit_range(inst, PriorityKind::Fair, src);
  };
  const auto report = run_adversary(algo, 23, ValuationKind::UnitRange);
  CHECK(report.indistinguishable);
  CHECK(report.replay_matching_equal);
  CHECK(report.remainder == 3);
  CHECK(report.benchmark_welfare > 0.0);
}
