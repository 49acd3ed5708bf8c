#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bayesev/config.hpp"

namespace bayesev {

/// One tunable setting of a command: config key, default ("" = required or unset), help.
struct Knob {
  std::string key;
  std::string default_value;
  std::string help;
};

/// Commands: exp1, exp2, exp3, exp4, criteria.
const std::vector<std::string>& experiment_commands();

/// Global knobs (seed, out, threads) followed by the command's own.
std::vector<Knob> experiment_knobs(std::string_view command);

/// Config holding every knob's default.
Config default_config(std::string_view command);

/// Runs a command on fully resolved settings and returns the files written.
std::vector<std::filesystem::path> run_experiment(std::string_view command, const Config& cfg);

std::vector<std::filesystem::path> cmd_exp1(const Config& cfg);
std::vector<std::filesystem::path> cmd_exp2(const Config& cfg);
std::vector<std::filesystem::path> cmd_exp3(const Config& cfg);
std::vector<std::filesystem::path> cmd_exp4(const Config& cfg);
std::vector<std::filesystem::path> cmd_criteria(const Config& cfg);

}  // namespace bayesev
