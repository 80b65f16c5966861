#pragma once

#include <string>

#include "hdtest/sample_matrix.hpp"

namespace hdtest {

struct CsvOptions {
  char delimiter = ',';
  bool header = false;  // skip the first line
};

/// Reads a CSV of finite reals into a SampleMatrix (rows = observations,
/// columns = variables). Throws parse_error naming the row and column of the
/// first offending cell.
SampleMatrix read_csv_matrix(const std::string& path,
                             const CsvOptions& options = {});

}  // namespace hdtest
