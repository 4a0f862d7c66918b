// Command-line front end for the three experiments.
#include "dfnnc/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Relay-channel rate experiments"};
  std::string config_path;
  app.add_option("-c,--config", config_path, "key=value config file");

  // Every flag maps onto the config key of the same name.
  std::map<std::string, std::optional<std::string>> flags;
  const auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  flag("--experiment", "experiment", "oneway-sweep | twrc-sum-sweep | twrc-region");
  flag("--p", "p", "power budget P");
  flag("--gamma", "gamma", "path-loss exponent");
  flag("--d-min", "d_min", "first relay position");
  flag("--d-max", "d_max", "last relay position");
  flag("--d-steps", "d_steps", "number of relay positions");
  for (const char* g : {"g12", "g1r", "g21", "g2r", "gr1", "gr2"}) {
    flag(std::string("--") + g, g, "region-experiment gain");
  }
  flag("--coarse-steps", "coarse_steps", "grid points per search coordinate");
  flag("--refine-rounds", "refine_rounds", "pattern-search rounds");
  flag("--refine-shrink", "refine_shrink", "step shrink per round");
  flag("--tol", "tol", "search accuracy target in bits");
  flag("--combined-coarse-steps", "combined_coarse_steps", "grid points per coordinate, TWRC combined scheme");
  flag("--combined-refine-rounds", "combined_refine_rounds", "pattern-search rounds, TWRC combined scheme");
  flag("--jobs", "jobs", "worker threads");
  flag("--out", "out", "output CSV path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::map<std::string, std::string> settings;
    if (!config_path.empty()) settings = dfnnc::read_config_file(config_path);
    for (const auto& [key, value] : flags) {
      if (value) settings[key] = *value;
    }
    dfnnc::run_experiment(dfnnc::make_config(settings));
  } catch (const dfnnc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const dfnnc::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
