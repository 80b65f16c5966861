#include "hdtest/mc_harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "hdtest/competitors.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/one_sample.hpp"
#include "hdtest/special_fn.hpp"
#include "hdtest/two_sample.hpp"

namespace hdtest {

namespace {

constexpr std::size_t kMaxMethods = 4;

std::string method_label(Method m) {
  switch (m) {
    case Method::kT: return "t";
    case Method::kCQ: return "cq";
    case Method::kBS: return "bs";
    case Method::kSD: return "sd";
  }
  return "?";
}

enum class Vote : signed char { kNotRun = -1, kRetain = 0, kReject = 1, kFailed = 2 };

struct RepRecord {
  std::array<Vote, kMaxMethods> votes{Vote::kNotRun, Vote::kNotRun,
                                      Vote::kNotRun, Vote::kNotRun};
  double t_stat = 0.0;
  double overlay = 0.0;
};

// Runs body(i) for i in [0, count) across the requested number of workers.
// Bodies write only to their own index, so the schedule cannot change
// results. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
  if (workers == 0) {
    workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

bool is_two_sample(Scenario s) {
  return s == Scenario::kTwoSampleSize || s == Scenario::kTwoSamplePower;
}

bool is_power(Scenario s) {
  return s == Scenario::kOneSamplePower || s == Scenario::kTwoSamplePower;
}

// Minimum sample size each method supports.
std::size_t min_n_one_sample(Method m) {
  switch (m) {
    case Method::kT: return 3;
    case Method::kCQ: return 4;
    case Method::kBS: return 3;
    case Method::kSD: return 4;
  }
  return 3;
}

// Covariance factor shared by all replications when the spec is
// deterministic or the redraw flag is off.
std::optional<FactorMatrix> shared_factor(const SimConfig& config) {
  if (config.cov.kind == CovarianceKind::kRandomSparse &&
      config.redraw_cov_per_rep) {
    return std::nullopt;
  }
  Rng rng = Rng::stream(config.master_seed, Rng::Purpose::kSharedCov, 0);
  return make_factor(config.cov, config.p, rng);
}

struct CellPlan {
  const SimConfig& config;
  Probability alpha;
  std::optional<FactorMatrix> fixed_factor;
  std::optional<std::vector<double>> fixed_mean;  // power with fixed support
  MeanSpec mean_spec;                             // power scenarios
};

// One replication: realize the covariance factor and mean (either shared or
// from this replication's stream, in a fixed order), generate data, then run
// every configured method. Degenerate-data errors are recorded, not thrown.
RepRecord run_replication(const CellPlan& plan, std::size_t rep) {
  const SimConfig& cfg = plan.config;
  Rng rng = Rng::stream(cfg.master_seed, Rng::Purpose::kReplication, rep);

  std::optional<FactorMatrix> local_factor;
  const FactorMatrix* factor;
  if (plan.fixed_factor) {
    factor = &*plan.fixed_factor;
  } else {
    local_factor = make_factor(cfg.cov, cfg.p, rng);
    factor = &*local_factor;
  }

  const bool power = is_power(cfg.scenario);
  std::vector<double> zero_mean;
  std::vector<double> local_mean;
  std::span<const double> mean;
  if (power) {
    if (plan.fixed_mean) {
      mean = *plan.fixed_mean;
    } else {
      local_mean = sparse_mean(plan.mean_spec, rng);
      mean = local_mean;
    }
  } else {
    zero_mean.assign(cfg.p, 0.0);
    mean = zero_mean;
  }

  RepRecord record;
  if (is_two_sample(cfg.scenario)) {
    const SampleMatrix x1 =
        generate_sample(mean, *factor, cfg.innov, cfg.n1, rng);
    zero_mean.assign(cfg.p, 0.0);
    const SampleMatrix x2 =
        generate_sample(zero_mean, *factor, cfg.innov, cfg.n2, rng);
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      try {
        switch (cfg.methods[m]) {
          case Method::kT:
            record.votes[m] = two_sample_test(x1, x2, plan.alpha).reject
                                  ? Vote::kReject
                                  : Vote::kRetain;
            break;
          case Method::kCQ:
            record.votes[m] = cq_two_sample_test(x1, x2, plan.alpha).reject
                                  ? Vote::kReject
                                  : Vote::kRetain;
            break;
          default:
            break;  // rejected by validate_config
        }
      } catch (const degenerate_data_error&) {
        record.votes[m] = Vote::kFailed;
      }
    }
    if (power) {
      const std::size_t a = std::min(cfg.n1, cfg.n2);
      const std::size_t b = std::max(cfg.n1, cfg.n2);
      const double c = static_cast<double>(a) / static_cast<double>(b);
      const double tr2 = factor->tr_sigma2();
      const TwoSamplePopulationDescriptor pop{
          .tr_mix2 = (1.0 + c) * (1.0 + c) * tr2,
          .diff_sq_norm = plan.mean_spec.mu_sq_norm(),
          .diff_mix_diff = (1.0 + c) * factor->quad_form(mean),
          .n1 = a,
          .n2 = b,
      };
      record.overlay = theoretical_power_two(pop, plan.alpha).value();
    }
  } else {
    const SampleMatrix x = generate_sample(mean, *factor, cfg.innov, cfg.n, rng);
    for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
      try {
        switch (cfg.methods[m]) {
          case Method::kT: {
            const OneSampleOutcome out = one_sample_test(x, plan.alpha);
            record.votes[m] = out.reject ? Vote::kReject : Vote::kRetain;
            record.t_stat = out.t_stat;
            break;
          }
          case Method::kCQ:
            record.votes[m] = cq_one_sample_test(x, plan.alpha).reject
                                  ? Vote::kReject
                                  : Vote::kRetain;
            break;
          case Method::kBS:
            record.votes[m] = bs_one_sample_test(x, plan.alpha).reject
                                  ? Vote::kReject
                                  : Vote::kRetain;
            break;
          case Method::kSD:
            record.votes[m] = sd_one_sample_test(x, plan.alpha).reject
                                  ? Vote::kReject
                                  : Vote::kRetain;
            break;
        }
      } catch (const degenerate_data_error&) {
        record.votes[m] = Vote::kFailed;
      }
    }
    if (power) {
      const PopulationDescriptor pop{
          .tr_sigma2 = factor->tr_sigma2(),
          .mu_sq_norm = plan.mean_spec.mu_sq_norm(),
          .mu_sigma_mu = factor->quad_form(mean),
          .n = cfg.n,
      };
      record.overlay = theoretical_power_one(pop, plan.alpha).value();
    }
  }
  return record;
}

// Runs all replications of one cell and aggregates in replication order.
SimOutcome run_cell(const SimConfig& config, const MeanSpec& mean_spec,
                    double r) {
  const auto start = std::chrono::steady_clock::now();
  CellPlan plan{
      .config = config,
      .alpha = Probability(config.alpha),
      .fixed_factor = shared_factor(config),
      .fixed_mean = std::nullopt,
      .mean_spec = mean_spec,
  };
  if (is_power(config.scenario) && !config.redraw_mean_support_per_rep) {
    Rng rng = Rng::stream(config.master_seed, Rng::Purpose::kSharedMean, 0);
    plan.fixed_mean = sparse_mean(mean_spec, rng);
  }

  std::vector<RepRecord> records(config.reps);
  parallel_for(config.reps, config.workers,
               [&](std::size_t rep) { records[rep] = run_replication(plan, rep); });

  SimOutcome outcome;
  outcome.r = r;
  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    std::size_t rejects = 0;
    std::size_t used = 0;
    std::size_t failed = 0;
    for (const RepRecord& rec : records) {
      switch (rec.votes[m]) {
        case Vote::kReject:
          ++rejects;
          ++used;
          break;
        case Vote::kRetain:
          ++used;
          break;
        case Vote::kFailed:
          ++failed;
          break;
        case Vote::kNotRun:
          break;
      }
    }
    const double rate =
        used > 0 ? static_cast<double>(rejects) / static_cast<double>(used)
                 : 0.0;
    outcome.results.push_back(MethodResult{
        .method = config.methods[m],
        .rejection_rate = rate,
        .mc_stderr =
            used > 0 ? std::sqrt(rate * (1.0 - rate) / static_cast<double>(used))
                     : 0.0,
        .reps_used = used,
        .reps_failed = failed,
    });
  }
  if (is_power(config.scenario)) {
    double sum = 0.0;
    for (const RepRecord& rec : records) sum += rec.overlay;
    outcome.theoretical_power = sum / static_cast<double>(config.reps);
  }
  outcome.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return outcome;
}

}  // namespace

void validate_config(const SimConfig& config) {
  if (config.reps < 1) {
    throw config_error("reps must be >= 1");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw config_error("alpha must lie strictly inside (0,1)");
  }
  if (config.p < 1) {
    throw config_error("dimension p must be >= 1");
  }
  if (config.cov.kind == CovarianceKind::kRandomSparse && config.p < 4) {
    throw config_error("the random sparse covariance needs p >= 4");
  }
  if (config.methods.empty()) {
    throw config_error("at least one method must be selected");
  }
  for (std::size_t i = 0; i < config.methods.size(); ++i) {
    for (std::size_t j = i + 1; j < config.methods.size(); ++j) {
      if (config.methods[i] == config.methods[j]) {
        throw config_error("method " + method_label(config.methods[i]) +
                           " is listed twice");
      }
    }
  }
  if (is_two_sample(config.scenario)) {
    const std::size_t lo = std::min(config.n1, config.n2);
    for (Method m : config.methods) {
      switch (m) {
        case Method::kT:
          if (lo < 3) {
            throw config_error(
                "method t requires both two-sample sizes >= 3 (configured " +
                std::to_string(config.n1) + ", " + std::to_string(config.n2) +
                ")");
          }
          break;
        case Method::kCQ:
          if (lo < 4) {
            throw config_error(
                "method cq requires both two-sample sizes >= 4 (configured " +
                std::to_string(config.n1) + ", " + std::to_string(config.n2) +
                ")");
          }
          break;
        default:
          throw config_error("method " + method_label(m) +
                             " has no two-sample version");
      }
    }
  } else {
    for (Method m : config.methods) {
      if (config.n < min_n_one_sample(m)) {
        throw config_error("method " + method_label(m) + " requires n >= " +
                           std::to_string(min_n_one_sample(m)) +
                           " (configured n = " + std::to_string(config.n) +
                           ")");
      }
    }
  }
  if (is_power(config.scenario) && config.beta < 0.0) {
    throw config_error("beta must be >= 0");
  }
}

SimOutcome run_size_experiment(const SimConfig& config) {
  if (is_power(config.scenario) || config.scenario == Scenario::kNullHistogram) {
    throw config_error("run_size_experiment needs a size scenario");
  }
  validate_config(config);
  // Size scenarios pin the mean to zero signal.
  const MeanSpec zero{.p = config.p, .beta = 0.0, .r = 0.0};
  return run_cell(config, zero, 0.0);
}

std::vector<SimOutcome> run_power_experiment(
    const SimConfig& config, const std::vector<double>& r_grid) {
  if (!is_power(config.scenario)) {
    throw config_error("run_power_experiment needs a power scenario");
  }
  if (r_grid.empty()) {
    throw config_error("the signal grid must contain at least one r value");
  }
  validate_config(config);
  std::vector<SimOutcome> outcomes;
  outcomes.reserve(r_grid.size());
  for (double r : r_grid) {
    const MeanSpec spec{.p = config.p, .beta = config.beta, .r = r};
    outcomes.push_back(run_cell(config, spec, r));
  }
  return outcomes;
}

NullStatistics collect_null_statistics(const SimConfig& config) {
  if (config.scenario != Scenario::kNullHistogram) {
    throw config_error("collect_null_statistics needs the null histogram "
                       "scenario");
  }
  SimConfig inner = config;
  inner.methods = {Method::kT};
  validate_config(inner);

  CellPlan plan{
      .config = inner,
      .alpha = Probability(inner.alpha),
      .fixed_factor = shared_factor(inner),
      .fixed_mean = std::nullopt,
      .mean_spec = MeanSpec{.p = inner.p, .beta = 0.0, .r = 0.0},
  };
  std::vector<RepRecord> records(inner.reps);
  parallel_for(inner.reps, inner.workers,
               [&](std::size_t rep) { records[rep] = run_replication(plan, rep); });

  NullStatistics out{
      .t_stats = {},
      .df = DegreesOfFreedom(
          static_cast<std::int64_t>(inner.n * (inner.n - 1) / 2) - 1),
      .ks = {},
  };
  out.t_stats.reserve(inner.reps);
  for (const RepRecord& rec : records) out.t_stats.push_back(rec.t_stat);
  const DegreesOfFreedom df = out.df;
  out.ks = ks_distance(out.t_stats,
                       [df](double x) { return t_cdf(x, df).value(); });
  return out;
}

}  // namespace hdtest
