#include "hdtest/csv.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "hdtest/errors.hpp"

namespace hdtest {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

SampleMatrix read_csv_matrix(const std::string& path,
                             const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open '" + path + "'");
  }
  std::vector<double> data;
  std::size_t n = 0;
  std::size_t p = 0;
  std::string line;
  std::size_t line_no = 0;
  bool skipped_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (options.header && !skipped_header) {
      skipped_header = true;
      continue;
    }
    std::size_t col = 0;
    std::string_view rest = line;
    for (;;) {
      const auto sep = rest.find(options.delimiter);
      const std::string_view cell = trim(rest.substr(0, sep));
      ++col;
      double value = 0.0;
      const auto res =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || res.ec != std::errc{} ||
          res.ptr != cell.data() + cell.size()) {
        throw parse_error(path + ": row " + std::to_string(line_no) +
                          ", column " + std::to_string(col) +
                          ": cannot parse '" + std::string(cell) +
                          "' as a real number");
      }
      if (!std::isfinite(value)) {
        throw parse_error(path + ": row " + std::to_string(line_no) +
                          ", column " + std::to_string(col) +
                          ": non-finite value");
      }
      data.push_back(value);
      if (sep == std::string_view::npos) break;
      rest.remove_prefix(sep + 1);
    }
    if (n == 0) {
      p = col;
    } else if (col != p) {
      throw parse_error(path + ": row " + std::to_string(line_no) + " has " +
                        std::to_string(col) + " columns, expected " +
                        std::to_string(p));
    }
    ++n;
  }
  if (n == 0) {
    throw parse_error(path + ": no data rows");
  }
  return SampleMatrix(n, p, std::move(data));
}

}  // namespace hdtest
