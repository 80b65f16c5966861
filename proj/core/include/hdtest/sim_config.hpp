#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "hdtest/mc_harness.hpp"

namespace hdtest {

/// A parsed simulation config file. A file describes one scenario evaluated
/// over a grid of sample sizes (size scenarios) and/or signal strengths
/// (power scenarios); each grid point becomes one experiment cell.
struct SimCampaign {
  SimConfig base;
  std::vector<std::size_t> n_values;   // one-sample / null-histogram grid
  std::vector<std::size_t> n1_values;  // two-sample grid (n2 is fixed)
  std::vector<double> r_grid;          // power scenarios
};

/// Parses the key = value config format documented in the README. Throws
/// config_error with the offending key on any problem.
SimCampaign parse_sim_config(std::istream& in);
SimCampaign parse_sim_config_file(const std::string& path);

std::string_view scenario_token(Scenario s);
std::string_view method_token(Method m);
std::string_view covariance_token(CovarianceKind k);
std::string_view innovation_token(InnovationKind k);

Scenario parse_scenario(std::string_view token);
Method parse_method(std::string_view token);

}  // namespace hdtest
