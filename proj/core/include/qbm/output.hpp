#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace qbm {

/// Ten significant digits, scientific notation, '.' decimal point.
std::string format_number(double value);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// CSV file with a '#'-prefixed header block:
///   # qbm_slit <file title>
///   # <key> = <value>           (resolved configuration, one per line)
///   # units: hbar = 1 ...
///   # columns: a,b,c
/// followed by one header row and the data rows.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& title, const KeyValues& config,
            std::vector<std::string> columns);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  /// Row whose first cell is text.
  void row(const std::string& label, std::initializer_list<double> values);
  void comment(const std::string& line);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace qbm
