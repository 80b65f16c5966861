#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "hdtest/datagen.hpp"
#include "hdtest/ks.hpp"
#include "hdtest/types.hpp"

namespace hdtest {

enum class Scenario {
  kOneSampleSize,
  kOneSamplePower,
  kTwoSampleSize,
  kTwoSamplePower,
  kNullHistogram,
};

/// Tests the harness can run. kT is the finite-sample t-test built here; the
/// others are the normal-reference competitors.
enum class Method { kT, kCQ, kBS, kSD };

/// One Monte Carlo experiment cell. Replication r draws its own substream
/// from (master_seed, r), so outcomes are independent of worker count and
/// execution order.
struct SimConfig {
  Scenario scenario = Scenario::kOneSampleSize;
  std::vector<Method> methods = {Method::kT};
  CovarianceSpec cov = CovarianceSpec::identity();
  InnovationSpec innov;
  std::size_t p = 0;
  std::size_t n = 0;   // one-sample scenarios
  std::size_t n1 = 0;  // two-sample scenarios
  std::size_t n2 = 0;
  double beta = 0.0;   // power scenarios: sparsity exponent of the mean
  std::size_t reps = 1000;
  double alpha = 0.05;
  std::uint64_t master_seed = 1;
  // Whether the random sparse covariance (and the sparse mean support) are
  // redrawn each replication or realized once per experiment.
  bool redraw_cov_per_rep = true;
  bool redraw_mean_support_per_rep = true;
  std::size_t workers = 0;  // 0 = hardware concurrency; result-invariant
};

struct MethodResult {
  Method method;
  double rejection_rate;  // over successful replications
  double mc_stderr;       // sqrt(rate (1-rate) / reps_used)
  std::size_t reps_used;
  std::size_t reps_failed;  // degenerate-data replications, never resampled
};

struct SimOutcome {
  double r = 0.0;  // signal value of the cell (0 for size scenarios)
  std::vector<MethodResult> results;
  // Average asymptotic power of the t-test over the realized populations;
  // NaN outside power scenarios.
  double theoretical_power = std::numeric_limits<double>::quiet_NaN();
  double runtime_seconds = 0.0;
};

struct NullStatistics {
  std::vector<double> t_stats;  // one per replication, replication order
  DegreesOfFreedom df;
  KsResult ks;  // distance and p-value against t(df)
};

/// Validates a config, naming the offending method or field.
void validate_config(const SimConfig& config);

/// Rejection rates under the null. Scenario must be a size scenario.
SimOutcome run_size_experiment(const SimConfig& config);

/// Rejection rates across a grid of signal strengths; one outcome per r.
/// Scenario must be a power scenario.
std::vector<SimOutcome> run_power_experiment(const SimConfig& config,
                                             const std::vector<double>& r_grid);

/// Null t-statistics plus their KS comparison against t(k). Scenario must be
/// kNullHistogram.
NullStatistics collect_null_statistics(const SimConfig& config);

}  // namespace hdtest
