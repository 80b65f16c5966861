#include "hdtest/sample_matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hdtest/errors.hpp"

namespace hdtest {

SampleMatrix::SampleMatrix(std::size_t n_rows, std::size_t n_cols,
                           std::vector<double> data)
    : n_(n_rows), p_(n_cols), data_(std::move(data)) {
  if (n_ < 1 || p_ < 1) {
    throw shape_error("sample matrix needs n >= 1 rows and p >= 1 columns");
  }
  if (data_.size() != n_ * p_) {
    throw shape_error("sample matrix data has " + std::to_string(data_.size()) +
                      " entries, expected " + std::to_string(n_ * p_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw shape_error("non-finite entry at row " + std::to_string(i / p_) +
                        ", column " + std::to_string(i % p_));
    }
  }
}

SampleMatrix SampleMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw shape_error("sample matrix needs at least one row");
  }
  const std::size_t p = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != p) {
      throw shape_error("row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) +
                        " entries, expected " + std::to_string(p));
    }
    data.insert(data.end(), rows[i].begin(), rows[i].end());
  }
  return SampleMatrix(rows.size(), p, std::move(data));
}

}  // namespace hdtest
