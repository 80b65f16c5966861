#include "hdtest/screening.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdtest {

ScreeningReport screen_units(const std::vector<ScreeningUnit>& units,
                             Probability family_alpha) {
  if (units.empty()) {
    throw std::invalid_argument("screening needs at least one unit");
  }
  ScreeningReport report{
      .family_alpha = family_alpha.value(),
      .m = units.size(),
      .threshold = family_alpha.value() / static_cast<double>(units.size()),
      .entries = {},
  };
  report.entries.reserve(units.size());
  for (const ScreeningUnit& unit : units) {
    ScreeningEntry entry{.name = unit.name,
                         .outcome = std::nullopt,
                         .error = "",
                         .reject_bonferroni = false};
    if (!unit.load_error.empty() || !unit.group1 || !unit.group2) {
      entry.error = unit.load_error.empty() ? "unit has no data" : unit.load_error;
    } else {
      try {
        // The per-unit alpha fed to the test is the Bonferroni threshold, so
        // the outcome's own reject flag matches the family-wise decision.
        entry.outcome = two_sample_test(*unit.group1, *unit.group2,
                                        Probability(report.threshold));
        entry.reject_bonferroni =
            entry.outcome->p_value.value() < report.threshold;
      } catch (const std::exception& e) {
        entry.error = e.what();
      }
    }
    report.entries.push_back(std::move(entry));
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const ScreeningEntry& a, const ScreeningEntry& b) {
                     if (a.outcome.has_value() != b.outcome.has_value()) {
                       return a.outcome.has_value();
                     }
                     if (!a.outcome) return false;
                     return a.outcome->p_value.value() <
                            b.outcome->p_value.value();
                   });
  return report;
}

}  // namespace hdtest
