#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hdtest/two_sample.hpp"
#include "hdtest/types.hpp"

namespace hdtest {

/// One screening unit: a named pair of samples to compare. Units that could
/// not be loaded carry a load_error and empty matrices; they still count
/// toward the Bonferroni family size m.
struct ScreeningUnit {
  std::string name;
  std::optional<SampleMatrix> group1;
  std::optional<SampleMatrix> group2;
  std::string load_error;
};

/// Per-unit entry of a screening report. Units whose test failed carry an
/// error message instead of an outcome.
struct ScreeningEntry {
  std::string name;
  std::optional<TwoSampleOutcome> outcome;
  std::string error;               // empty when the test ran
  bool reject_bonferroni = false;  // p_value < alpha / m
};

/// Family-wise screening result: entries sorted by ascending p-value,
/// failures last.
struct ScreeningReport {
  double family_alpha;
  std::size_t m;     // number of units (including failed ones)
  double threshold;  // family_alpha / m
  std::vector<ScreeningEntry> entries;
};

/// Runs the two-sample test on every unit and applies the Bonferroni rule at
/// level family_alpha / m. Units that fail to load or fail test
/// preconditions are reported per unit, never aborted on.
ScreeningReport screen_units(const std::vector<ScreeningUnit>& units,
                             Probability family_alpha);

}  // namespace hdtest
