#include "omatch/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "omatch/adversary.hpp"
#include "omatch/algorithms.hpp"
#include "omatch/oracle.hpp"
#include "omatch/random_gen.hpp"

namespace omatch {

namespace {

using nlohmann::json;

std::uint64_t sub_seed(std::uint64_t seed, int n, int trial) {
  std::uint64_t x = seed;
  x ^= static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL;
  x ^= static_cast<std::uint64_t>(trial + 1) * 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 31;
  return x * 0x94d049bb133111ebULL + 1;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool algorithm_applies(const std::string& name, PriorityKind kind, ValuationKind vkind, int n) {
  if (name == "welfare_optimal" || name == "adaptive" || name == "ordinal_baseline") return true;
  if (name == "nonadaptive_priority")
    return vkind == ValuationKind::UnitSum && kind != PriorityKind::ParetoOnly;
  if (name == "nonadaptive_po")
    return vkind == ValuationKind::UnitSum && kind == PriorityKind::ParetoOnly && n >= 8;
  if (name == "nonadaptive_unit_range") return vkind == ValuationKind::UnitRange;
  throw std::invalid_argument("unknown algorithm: " + name);
}

AlgoResult run_algorithm(const std::string& name, const Instance& instance,
                         const ValuationProfile& v, PriorityKind kind, double epsilon) {
  if (name == "welfare_optimal") return welfare_optimal_priority(instance, kind, v);
  if (name == "ordinal_baseline") return ordinal_baseline(instance, kind);
  if (name == "adaptive") {
    ValueOracle source(instance, v, LedgerMode::Adaptive);
    return adaptive_approx(instance, kind, epsilon, source);
  }
  ValueOracle source(instance, v, LedgerMode::NonAdaptiveOnePerPair);
  if (name == "nonadaptive_priority") return nonadaptive_priority_unit_sum(instance, kind, source);
  if (name == "nonadaptive_po") return nonadaptive_po_unit_sum(instance, source);
  if (name == "nonadaptive_unit_range") return nonadaptive_unit_range(instance, kind, source);
  throw std::invalid_argument("unknown algorithm: " + name);
}

// Class-optimal comparator; at oracle scale also certifies that the output
// satisfies its class, failing the whole run with a diagnostic otherwise.
double comparator_welfare(const Instance& instance, const ValuationProfile& v, PriorityKind kind,
                          const Matching& produced, const std::string& algorithm) {
  if (instance.n() <= oracle::kMaxEnumerationSize) {
    if (!oracle::in_class(instance, kind, produced))
      throw std::runtime_error("invariant failure: " + algorithm + " output violates its " +
                               std::string(to_string(kind)) + " class");
    return oracle::optimal_within_class(instance, v, kind).best_welfare;
  }
  return welfare(welfare_optimal_priority(instance, kind, v).matching, v);
}

}  // namespace

void ExperimentConfig::check() const {
  if (sizes.empty()) throw std::invalid_argument("config: sizes must be nonempty");
  for (int n : sizes)
    if (n < 1) throw std::invalid_argument("config: sizes must be >= 1");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  for (double e : epsilons)
    if (!(e > 0.0)) throw std::invalid_argument("config: epsilon entries must be > 0");
}

ExperimentConfig config_from_json(const std::string& text) {
  const json doc = json::parse(text);
  ExperimentConfig c;
  if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("sizes")) c.sizes = doc.at("sizes").get<std::vector<int>>();
  if (doc.contains("trials")) c.trials = doc.at("trials").get<int>();
  if (doc.contains("valuation_kind"))
    c.valuation_kind = valuation_kind_from_string(doc.at("valuation_kind").get<std::string>());
  if (doc.contains("algorithms")) c.algorithms = doc.at("algorithms").get<std::vector<std::string>>();
  if (doc.contains("kinds")) {
    c.kinds.clear();
    for (const auto& k : doc.at("kinds"))
      c.kinds.push_back(priority_kind_from_string(k.get<std::string>()));
  }
  if (doc.contains("epsilons")) c.epsilons = doc.at("epsilons").get<std::vector<double>>();
  if (doc.contains("tie_prob")) c.tie_prob = doc.at("tie_prob").get<double>();
  if (doc.contains("acceptability_prob"))
    c.acceptability_prob = doc.at("acceptability_prob").get<double>();
  if (doc.contains("out")) c.out_path = doc.at("out").get<std::string>();
  c.check();
  return c;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

std::string run_suite(const ExperimentConfig& config) {
  config.check();
  std::ostringstream csv;
  csv << "n,trial,algorithm,kind,valuation_kind,epsilon,c,welfare,opt_welfare,ratio,"
         "max_queries_per_agent,total_queries,millis\n";

  for (int n : config.sizes) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t s = sub_seed(config.seed, n, trial);
      const Instance instance = gen_random_instance_for(s, n, config.tie_prob,
                                                        config.acceptability_prob,
                                                        config.valuation_kind);
      const ValuationProfile vals =
          gen_random_valuations(s, instance, config.valuation_kind);

      for (const auto& name : config.algorithms) {
        for (PriorityKind kind : config.kinds) {
          if (!algorithm_applies(name, kind, config.valuation_kind, n)) continue;
          const std::vector<double> eps_list =
              name == "adaptive" ? config.epsilons : std::vector<double>{0.0};
          for (double eps : eps_list) {
            const auto start = std::chrono::steady_clock::now();
            const AlgoResult result = run_algorithm(name, instance, vals, kind, eps);
            const double millis =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();

            const double w = welfare(result.matching, vals);
            const double opt = comparator_welfare(instance, vals, kind, result.matching, name);
            double ratio = 1.0;
            if (w > 0.0)
              ratio = opt / w;
            else if (opt > 0.0)
              ratio = std::numeric_limits<double>::infinity();
            int max_per_agent = 0;
            for (int count : result.ledger.per_agent_counts())
              max_per_agent = std::max(max_per_agent, count);

            csv << n << ',' << trial << ',' << name << ',' << to_string(kind) << ','
                << to_string(config.valuation_kind) << ',';
            csv << (name == "adaptive" ? fmt(eps) : "") << ',';
            csv << (name == "adaptive" ? std::to_string(adaptive_band_count(n, eps)) : "") << ',';
            csv << fmt(w) << ',' << fmt(opt) << ',' << fmt(ratio) << ',' << max_per_agent << ','
                << result.ledger.total() << ',' << fmt(millis) << '\n';
          }
        }
      }
    }
  }
  return csv.str();
}

std::string run_adversary_suite(const ExperimentConfig& config) {
  config.check();
  std::ostringstream csv;
  csv << "n,valuation_kind,kind,eps,n1,n2,n3,n4,benchmark_welfare,algorithm_welfare,ratio,"
         "welfare_floor,indistinguishable,replay_matching_equal,total_queries\n";

  PriorityKind kind = PriorityKind::RankMaximal;
  for (PriorityKind k : config.kinds)
    if (k != PriorityKind::ParetoOnly) {
      kind = k;
      break;
    }

  for (int n : config.sizes) {
    adversary::OneShotAlgorithm algo;
    if (config.valuation_kind == ValuationKind::UnitSum) {
      algo = [kind](const Instance& inst, QuerySource& src) {
        return nonadaptive_priority_unit_sum(inst, kind, src);
      };
    } else {
      algo = [kind](const Instance& inst, QuerySource& src) {
        return nonadaptive_unit_range(inst, kind, src);
      };
    }
    const auto report = adversary::run_adversary(algo, n, config.valuation_kind);
    csv << report.n << ',' << to_string(report.bank_kind) << ',' << to_string(kind) << ','
        << fmt(report.eps) << ',' << report.block_type_counts[0] << ','
        << report.block_type_counts[1] << ',' << report.block_type_counts[2] << ','
        << report.block_type_counts[3] << ',' << fmt(report.benchmark_welfare) << ','
        << fmt(report.algorithm_welfare) << ',' << fmt(report.ratio) << ','
        << fmt(report.welfare_floor) << ',' << (report.indistinguishable ? 1 : 0) << ','
        << (report.replay_matching_equal ? 1 : 0) << ',' << report.total_queries << '\n';
  }
  return csv.str();
}

int run_oracle_check(const ExperimentConfig& config, std::string& csv) {
  config.check();
  std::ostringstream os;
  os << "n,trial,valuation_kind,kind,signatures_match,bigint_ok,welfare_gap\n";
  int mismatches = 0;

  const PriorityKind kinds[] = {PriorityKind::RankMaximal, PriorityKind::MaxCardRankMaximal,
                                PriorityKind::Fair};
  for (int n : config.sizes) {
    if (n > oracle::kMaxQuadraticSize) continue;
    for (int trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t s = sub_seed(config.seed, n, trial);
      const Instance instance = gen_random_instance_for(s, n, config.tie_prob,
                                                        config.acceptability_prob,
                                                        config.valuation_kind);
      const ValuationProfile vals =
          gen_random_valuations(s, instance, config.valuation_kind);
      for (PriorityKind kind : kinds) {
        const AlgoResult solved = welfare_optimal_priority(instance, kind, vals);
        const auto opt = oracle::optimal_within_class(instance, vals, kind);
        const bool sig_ok =
            signature(instance, solved.matching, kind) == opt.class_signature;
        const bool big_ok = oracle::bigint_priority_check(instance, vals, kind);
        const double gap = std::abs(welfare(solved.matching, vals) - opt.best_welfare);
        if (!sig_ok || !big_ok || gap > 1e-9) ++mismatches;
        os << n << ',' << trial << ',' << to_string(config.valuation_kind) << ','
           << to_string(kind) << ',' << (sig_ok ? 1 : 0) << ',' << (big_ok ? 1 : 0) << ','
           << fmt(gap) << '\n';
      }
    }
  }
  csv = os.str();
  return mismatches;
}

}  // namespace omatch
