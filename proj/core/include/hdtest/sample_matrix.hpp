#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hdtest {

/// An n x p observation matrix, rows are observations, columns variables.
/// Entries are validated finite on construction and immutable afterwards.
class SampleMatrix {
 public:
  /// Takes ownership of row-major data; data.size() must equal n_rows*n_cols.
  SampleMatrix(std::size_t n_rows, std::size_t n_cols,
               std::vector<double> data);

  static SampleMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return p_; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * p_, p_};
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * p_ + j];
  }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> data_;
};

}  // namespace hdtest
