#pragma once

#include <array>
#include <functional>
#include <utility>

#include "omatch/algorithms.hpp"
#include "omatch/elicitation.hpp"
#include "omatch/model.hpp"

// Adversarial stress harness for one-query-per-pair algorithms: block-built
// instances on which any fixed non-adaptive threshold matrix leaves two
// agents per block indistinguishable, letting an adversary pick the hidden
// valuations after seeing the algorithm's output.

namespace omatch {
namespace adversary {

inline constexpr int kMinLowerBoundSize = 18;
inline constexpr double kNeverAskedThreshold = 2.0;  // answers nothing in [0,1]

/// Thresholds asked per (agent, rank) pair, extracted from a one-per-pair
/// ledger; never-asked pairs hold kNeverAskedThreshold.
struct ThresholdMatrix {
  std::vector<std::vector<double>> by_rank;  // [agent][rank-1]

  double at(int agent, int r) const { return by_rank[agent][r - 1]; }
};

ThresholdMatrix threshold_matrix_from_queries(const Instance& instance,
                                              const std::vector<ThresholdQuery>& queries);

/// Region of an agent's first two thresholds:
///   Type1: T1 in [0, 1/2),       T2 in [0, 1/sqrt(n)]
///   Type2: T1 in [1/2, 1+],      T2 in [0, 1/sqrt(n)]
///   Type3: T1 in [0, 1/sqrt(n)), T2 in (1/sqrt(n), 1+]
///   Type4: T1 in [1/sqrt(n),1+], T2 in (1/sqrt(n), 1+]
/// (never-asked thresholds land in the high intervals.)
enum class AgentType { Type1 = 1, Type2 = 2, Type3 = 3, Type4 = 4 };

AgentType classify_agent(double t1, double t2, int n);

/// Values a utility function takes on an agent's first, second, and every
/// remaining acceptable object.
struct UtilityTemplate {
  double top = 0.0;
  double second = 0.0;
  double tail = 0.0;
};

/// u_0 .. u_8 by index.
using UtilityBank = std::array<UtilityTemplate, 9>;

/// Unit-sum bank with c1 = 1/sqrt(n), c2 = 1/(2(n-2)), c3 = (1-c1)/(n-2);
/// requires 0 < eps < 1/n^4. Every entry sums to 1 over a full preference
/// list of length n.
UtilityBank utility_bank_unit_sum(int n, double eps);

/// Unit-range bank: all tops 1, all tails 0.
UtilityBank utility_bank_unit_range(int n, double eps);

/// Block instance: floor(n/5) blocks of five agents, block i preferring
/// h_1 then h_{i+1}, a remainder block preferring h_1 then h_{n-1}, tails in
/// one fixed ascending order. Requires n >= kMinLowerBoundSize.
Instance build_lb_instance_unit_sum(int n);

/// Same preference skeleton paired with the unit-range bank.
std::pair<Instance, UtilityBank> build_lb_instance_unit_range(int n, double eps);

struct BlockDesign {
  int n = 0;
  int num_blocks = 0;  // k = floor(n/5)
  int remainder = 0;   // agents in the final partial block

  int block_of(int agent) const { return agent / 5 < num_blocks ? agent / 5 : -1; }
  int first_agent(int block) const { return block * 5; }
  int second_choice_object(int block) const { return block + 1; }  // h_{block+2} 0-based
};

BlockDesign block_design(int n);

/// Per-block classification plus the two special (indistinguishable) agents.
struct BlockInfo {
  AgentType type = AgentType::Type1;
  int special_low = -1;
  int special_high = -1;
};

std::vector<BlockInfo> classify_blocks(const Instance& instance, const ThresholdMatrix& t);

/// The valuation profile an adversary commits to after seeing the output
/// matching: in each block, whichever special agent received the block's
/// second-choice object gets the low-second-value function u_{2j-1}, the
/// other special gets u_{2j}, everyone else u_0. Both choices answer the
/// threshold matrix identically.
ValuationProfile adversarial_profile(const Instance& instance, const ThresholdMatrix& t,
                                     const Matching& m, ValuationKind bank_kind, double eps);

using OneShotAlgorithm = std::function<AlgoResult(const Instance&, QuerySource&)>;

struct AdversaryReport {
  int n = 0;
  ValuationKind bank_kind = ValuationKind::UnitSum;
  double eps = 0.0;
  int num_blocks = 0;
  int remainder = 0;
  std::array<int, 4> block_type_counts{};  // n_1 .. n_4
  double benchmark_welfare = 0.0;          // SW of the planted high-welfare matching
  double algorithm_welfare = 0.0;          // SW of the algorithm's output, adversarial values
  double ratio = 0.0;
  double welfare_floor = 0.0;              // sqrt(n) / 28
  bool indistinguishable = false;          // replay ledger bit-identical
  bool replay_matching_equal = false;
  int total_queries = 0;
};

/// Runs the algorithm against a canonical member of the profile family,
/// extracts its threshold matrix and output, picks the adversarial profile,
/// replays to confirm indistinguishability, and reports the welfare ratio
/// with the construction's intermediate quantities. eps defaults to
/// 1/(2 n^4).
AdversaryReport run_adversary(const OneShotAlgorithm& algorithm, int n, ValuationKind bank_kind,
                              double eps = 0.0);

}  // namespace adversary
}  // namespace omatch
