#pragma once

#include <stdexcept>
#include <string>

namespace hdtest {

// Too few observations for the requested statistic or test.
class insufficient_sample_error : public std::invalid_argument {
 public:
  explicit insufficient_sample_error(const std::string& what)
      : std::invalid_argument(what) {}
};

// The data admit no variance estimate (e.g. all pairwise products identical),
// so the studentized statistic is undefined.
class degenerate_data_error : public std::runtime_error {
 public:
  explicit degenerate_data_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Matrix dimensions do not line up.
class shape_error : public std::invalid_argument {
 public:
  explicit shape_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file (CSV cell, manifest line, ...).
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent or incomplete simulation configuration.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hdtest
