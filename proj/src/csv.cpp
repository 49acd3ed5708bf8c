#include "bayesev/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

#include "bayesev/core.hpp"

namespace bayesev {

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

CsvTable::CsvTable(std::vector<std::string> header) : n_cols_(header.size()) {
  if (header.empty()) {
    throw UsageError("CSV header must have at least one column");
  }
  row(header);
  n_rows_ = 0;
}

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_) {
    throw UsageError(fmt::format("CSV row has {} cells, expected {}", cells.size(), n_cols_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].find_first_of(",\n\r\"") != std::string::npos) {
      throw UsageError(fmt::format("CSV cell '{}' needs quoting, which is not supported", cells[i]));
    }
    if (i > 0) {
      text_ += ',';
    }
    text_ += cells[i];
  }
  text_ += '\n';
  ++n_rows_;
  return *this;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(fmt::format("cannot open {} for writing", tmp.string()));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(fmt::format("failed writing {}", tmp.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(fmt::format("cannot move {} into place: {}", path.string(), ec.message()));
  }
}

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(fmt::format("cannot open {}", path.string()));
  }
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
      cells.emplace_back();
    }
    return cells;
  };
  CsvData data;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (first) {
      data.header = split(line);
      first = false;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != data.header.size()) {
      throw UsageError(fmt::format("{}: row has {} cells, header has {}", path.string(),
                                   cells.size(), data.header.size()));
    }
    data.rows.push_back(std::move(cells));
  }
  if (first) {
    throw UsageError(fmt::format("{} is empty", path.string()));
  }
  return data;
}

}  // namespace bayesev
