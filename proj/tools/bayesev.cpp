// Command-line harness for the numerical experiments.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bayesev/config.hpp"
#include "bayesev/core.hpp"
#include "bayesev/experiments.hpp"

namespace {

std::string flag_name(const std::string& key) {
  std::string name = key.substr(key.find('.') + 1);
  for (char& c : name) {
    if (c == '_') {
      c = '-';
    }
  }
  return "--" + name;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian evidence, Bayes factors and objective-prior experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  std::map<std::string, std::optional<std::string>> global_flags = {
      {"seed", std::nullopt}, {"out", std::nullopt}, {"threads", std::nullopt}};
  app.add_option("--config", config_path, "settings file (key = value, [section] headers)");
  app.add_option("--seed", global_flags["seed"], "base seed for simulated data");
  app.add_option("--out", global_flags["out"], "output directory (default .)");
  app.add_option("--threads", global_flags["threads"], "worker threads (default 1)");
  app.footer(
      "Precedence: built-in defaults < --config file < BAYESEV_* environment < flags.\n"
      "Environment names upper-case the key, e.g. BAYESEV_SEED, BAYESEV_EXP1_SIGMA0_VALUES.");

  std::map<std::string, std::map<std::string, std::optional<std::string>>> flags;
  std::map<std::string, CLI::App*> subs;
  for (const std::string& cmd : bayesev::experiment_commands()) {
    CLI::App* sub = app.add_subcommand(cmd, "run " + cmd);
    subs[cmd] = sub;
    for (const bayesev::Knob& k : bayesev::experiment_knobs(cmd)) {
      if (k.key.find('.') == std::string::npos) {
        continue;
      }
      std::string help = k.help;
      if (!k.default_value.empty()) {
        help += " (default " + k.default_value + ")";
      }
      sub->add_option(flag_name(k.key), flags[cmd][k.key], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string command;
  for (const auto& [cmd, sub] : subs) {
    if (sub->parsed()) {
      command = cmd;
    }
  }

  try {
    bayesev::Config cfg = bayesev::default_config(command);
    if (config_path) {
      cfg.merge(bayesev::Config::load(*config_path));
    }
    std::vector<std::string> keys;
    for (const bayesev::Knob& k : bayesev::experiment_knobs(command)) {
      keys.push_back(k.key);
    }
    cfg.apply_env(keys, [](const char* name) { return std::getenv(name); });
    for (const auto& [key, value] : global_flags) {
      if (value) {
        cfg.set(key, *value);
      }
    }
    for (const auto& [key, value] : flags[command]) {
      if (value) {
        cfg.set(key, *value);
      }
    }
    for (const auto& path : bayesev::run_experiment(command, cfg)) {
      std::cout << path.string() << '\n';
    }
  } catch (const bayesev::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
