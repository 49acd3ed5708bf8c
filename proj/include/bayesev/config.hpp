#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bayesev {

/// Flat key/value settings. Keys inside a `[section]` are stored as
/// "section.key"; keys before the first section are global.
///
/// File grammar, one entry per line:
///   # comment            (also ';')
///   [exp1]
///   sigma0_values = 3, 10, 100
class Config {
 public:
  static Config parse(std::string_view text, std::string_view origin = "<config>");
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  /// Values from `over` replace ours.
  void merge(const Config& over);

  /// For every known key, takes BAYESEV_<KEY> from the environment, with '.'
  /// mapped to '_' and letters upper-cased (exp1.sigma0 -> BAYESEV_EXP1_SIGMA0).
  void apply_env(const std::vector<std::string>& keys,
                 const std::function<const char*(const char*)>& getenv);

  [[nodiscard]] bool has(const std::string& key) const;
  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
  [[nodiscard]] std::string get_string(const std::string& key) const;
  [[nodiscard]] double get_double(const std::string& key) const;
  [[nodiscard]] std::uint64_t get_u64(const std::string& key) const;
  [[nodiscard]] std::size_t get_size(const std::string& key) const;
  [[nodiscard]] std::vector<double> get_doubles(const std::string& key) const;
  [[nodiscard]] std::vector<std::size_t> get_sizes(const std::string& key) const;

  [[nodiscard]] const std::map<std::string, std::string>& entries() const { return values_; }
  [[nodiscard]] std::string text() const;

  static std::string env_name(const std::string& key);

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace bayesev
