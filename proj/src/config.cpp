#include "bayesev/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "bayesev/core.hpp"

namespace bayesev {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool valid_key(std::string_view k) {
  if (k.empty()) {
    return false;
  }
  for (const char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw std::invalid_argument(s);
    }
    return v;
  } catch (const std::exception&) {
    throw UsageError(fmt::format("{}: '{}' is not a number", key, s));
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("{}: '{}' is not a non-negative integer", key, s));
  }
  return v;
}

}  // namespace

Config Config::parse(std::string_view text, std::string_view origin) {
  Config cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw UsageError(fmt::format("{}:{}: unterminated section header", origin, line_no));
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!valid_key(section)) {
        throw UsageError(fmt::format("{}:{}: bad section name '{}'", origin, line_no, section));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("{}:{}: expected 'key = value'", origin, line_no));
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (!valid_key(key)) {
      throw UsageError(fmt::format("{}:{}: bad key '{}'", origin, line_no, key));
    }
    cfg.set(section.empty() ? key : section + "." + key, std::move(value));
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError(fmt::format("cannot open config file {}", path.string()));
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::set(const std::string& key, std::string value) { values_[key] = std::move(value); }

void Config::merge(const Config& over) {
  for (const auto& [k, v] : over.values_) {
    values_[k] = v;
  }
}

std::string Config::env_name(const std::string& key) {
  std::string name = "BAYESEV_";
  for (const char c : key) {
    name += (c == '.' || c == '-') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return name;
}

void Config::apply_env(const std::vector<std::string>& keys,
                       const std::function<const char*(const char*)>& getenv) {
  for (const std::string& key : keys) {
    if (const char* v = getenv(env_name(key).c_str())) {
      set(key, trim(v));
    }
  }
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::string Config::get_string(const std::string& key) const {
  auto v = get(key);
  if (!v) {
    throw UsageError(fmt::format("missing setting '{}'", key));
  }
  return *v;
}

double Config::get_double(const std::string& key) const {
  return parse_double(key, get_string(key));
}

std::uint64_t Config::get_u64(const std::string& key) const {
  return parse_u64(key, get_string(key));
}

std::size_t Config::get_size(const std::string& key) const {
  return static_cast<std::size_t>(get_u64(key));
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(get_string(key))) {
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::vector<std::size_t> Config::get_sizes(const std::string& key) const {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(get_string(key))) {
    out.push_back(static_cast<std::size_t>(parse_u64(key, item)));
  }
  return out;
}

std::string Config::text() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    out += k + " = " + v + "\n";
  }
  return out;
}

}  // namespace bayesev
