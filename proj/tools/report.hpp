#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hdtest/mc_harness.hpp"
#include "hdtest/one_sample.hpp"
#include "hdtest/screening.hpp"
#include "hdtest/sim_config.hpp"
#include "hdtest/two_sample.hpp"

namespace hdtest::report {

nlohmann::json one_sample_json(const OneSampleOutcome& out,
                               const std::string& input, std::size_t n,
                               std::size_t p);

nlohmann::json two_sample_json(const TwoSampleOutcome& out,
                               const std::string& input1,
                               const std::string& input2, std::size_t n1,
                               std::size_t n2, std::size_t p, double alpha);

nlohmann::json screening_json(const ScreeningReport& report);
std::string screening_table(const ScreeningReport& report);

/// One simulate campaign cell: the grid value it covers plus its outcomes.
struct CampaignCell {
  std::size_t n = 0;        // n (one-sample) or n1 (two-sample)
  std::vector<SimOutcome> outcomes;  // one entry, or one per r for power
  // Null histogram scenarios only:
  bool has_null_stats = false;
  NullStatistics null_stats{{}, DegreesOfFreedom(1), {}};
  std::string csv_filename;
};

/// Machine-readable campaign report. Deterministic for a given config: no
/// timings or environment data are included.
nlohmann::json campaign_json(const SimCampaign& campaign,
                             const std::vector<CampaignCell>& cells);

/// Aligned text table of the campaign (methods x grid).
std::string campaign_table(const SimCampaign& campaign,
                           const std::vector<CampaignCell>& cells);

}  // namespace hdtest::report
