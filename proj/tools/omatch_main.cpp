#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "omatch/experiment.hpp"

namespace {

void write_report(const std::string& report, const std::string& path) {
  if (path.empty()) {
    std::cout << report;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to " + path);
  out << report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"welfare-aware one-sided matching experiments"};

  std::string config_path;
  std::string mode = "suite";
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;

  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--mode", mode, "suite | adversary | oracle-check")
      ->check(CLI::IsMember({"suite", "adversary", "oracle-check"}));
  app.add_option("--out", out_path, "report path (default: config's out, else stdout)");
  app.add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
    seed_given = true;
  });

  CLI11_PARSE(app, argc, argv);

  try {
    omatch::ExperimentConfig config;
    if (!config_path.empty()) config = omatch::config_from_file(config_path);
    if (mode == "adversary" && config_path.empty()) config.sizes = {20, 45, 80, 125, 180};
    if (seed_given) config.seed = seed;
    if (!out_path.empty()) config.out_path = out_path;

    if (mode == "suite") {
      write_report(omatch::run_suite(config), config.out_path);
    } else if (mode == "adversary") {
      write_report(omatch::run_adversary_suite(config), config.out_path);
    } else {
      std::string csv;
      const int mismatches = omatch::run_oracle_check(config, csv);
      write_report(csv, config.out_path);
      if (mismatches > 0) {
        std::cerr << "oracle check failed: " << mismatches << " mismatching rows\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
