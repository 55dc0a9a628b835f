#include "omatch/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace omatch {

using nlohmann::json;

InstanceDocument load_instance_json(const std::string& text) {
  const json doc = json::parse(text);
  const int n = doc.at("n").get<int>();
  std::vector<WeakOrder> prefs;
  for (const auto& agent_tiers : doc.at("preferences")) {
    WeakOrder order;
    for (const auto& tier : agent_tiers) {
      std::vector<int> objects;
      for (const auto& o : tier) objects.push_back(o.get<int>() - 1);
      order.tiers.push_back(std::move(objects));
    }
    prefs.push_back(std::move(order));
  }
  InstanceDocument out{Instance(n, std::move(prefs)), std::nullopt};
  if (doc.contains("valuations")) {
    const auto& val = doc.at("valuations");
    ValuationProfile v;
    v.kind = valuation_kind_from_string(val.at("kind").get<std::string>());
    v.values = val.at("values").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(v.values.size()) != n)
      throw std::invalid_argument("valuation matrix must have one row per agent");
    out.valuations = std::move(v);
  }
  return out;
}

InstanceDocument load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_instance_json(buffer.str());
}

std::string instance_to_json(const Instance& instance, const ValuationProfile* valuations) {
  json doc;
  doc["n"] = instance.n();
  json prefs = json::array();
  for (int a = 0; a < instance.n(); ++a) {
    json tiers = json::array();
    for (const auto& tier : instance.preferences(a).tiers) {
      json t = json::array();
      for (int o : tier) t.push_back(o + 1);
      tiers.push_back(std::move(t));
    }
    prefs.push_back(std::move(tiers));
  }
  doc["preferences"] = std::move(prefs);
  if (valuations) {
    doc["valuations"] = {{"kind", to_string(valuations->kind)}, {"values", valuations->values}};
  }
  return doc.dump(2);
}

std::string result_to_json(const AlgoResult& result, const ValuationProfile* score_against) {
  json doc;
  doc["kind"] = to_string(result.kind);
  json pairs = json::array();
  for (const auto& [a, o] : result.matching.pairs()) pairs.push_back(json::array({a + 1, o + 1}));
  doc["matching"] = std::move(pairs);
  int forced = 0;
  for (const auto& e : result.ledger.entries())
    if (e.forced) ++forced;
  doc["ledger"] = {
      {"mode", result.ledger.mode() == LedgerMode::Adaptive ? "adaptive" : "nonadaptive_one_per_pair"},
      {"total", result.ledger.total()},
      {"forced", forced},
      {"per_agent", result.ledger.per_agent_counts()}};
  if (score_against) doc["welfare"] = welfare(result.matching, *score_against);
  return doc.dump(2);
}

}  // namespace omatch
