#include "qbm/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qbm {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  std::array<char, 48> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::scientific, 9);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& title,
                     const KeyValues& config, std::vector<std::string> columns)
    : path_(path), out_(path), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out_ << "# qbm_slit " << title << '\n';
  for (const auto& [key, value] : config) out_ << "# " << key << " = " << value << '\n';
  out_ << "# units: hbar = 1; lengths, times and masses in the dimensionless units of the preset\n";
  out_ << "# columns:";
  for (std::size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : " ") << columns[k];
  out_ << '\n';
  for (std::size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : "") << columns[k];
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::logic_error("csv row width mismatch in " + path_.string());
  for (std::size_t k = 0; k < values.size(); ++k) out_ << (k ? "," : "") << format_number(values[k]);
  out_ << '\n';
}

void CsvWriter::row(const std::string& label, std::initializer_list<double> values) {
  if (values.size() + 1 != columns_) {
    throw std::logic_error("csv row width mismatch in " + path_.string());
  }
  out_ << label;
  for (double v : values) out_ << ',' << format_number(v);
  out_ << '\n';
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << '\n'; }

}  // namespace qbm
