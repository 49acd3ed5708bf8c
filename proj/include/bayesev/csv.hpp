#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bayesev {

/// 17 significant digits, enough to round-trip a double.
std::string format_double(double value);

/// Comma-separated table with LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row(const std::vector<std::string>& cells);
  [[nodiscard]] std::size_t rows() const { return n_rows_; }
  [[nodiscard]] const std::string& text() const { return text_; }

 private:
  std::size_t n_cols_;
  std::size_t n_rows_ = 0;
  std::string text_;
};

/// Writes to a temporary file beside `path` and renames it into place, so a
/// failure never leaves a truncated file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvData read_csv(const std::filesystem::path& path);

}  // namespace bayesev
