#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hdtest::report {

namespace {

using nlohmann::json;

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

json cov_json(const CovarianceSpec& cov) {
  json j;
  j["kind"] = std::string(covariance_token(cov.kind));
  if (cov.kind == CovarianceKind::kAr1) j["rho"] = cov.rho;
  return j;
}

json method_results_json(const SimOutcome& outcome) {
  json arr = json::array();
  for (const MethodResult& mr : outcome.results) {
    json j;
    j["method"] = std::string(method_token(mr.method));
    j["rejection_rate"] = mr.rejection_rate;
    j["mc_stderr"] = mr.mc_stderr;
    j["reps_used"] = mr.reps_used;
    j["reps_failed"] = mr.reps_failed;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

json one_sample_json(const OneSampleOutcome& out, const std::string& input,
                     std::size_t n, std::size_t p) {
  json j;
  j["test"] = "one_sample";
  j["input"] = input;
  j["n"] = n;
  j["p"] = p;
  j["alpha"] = out.alpha.value();
  j["u_stat"] = out.u_stat;
  j["tr_sigma2_hat"] = out.tr_sigma2_hat;
  j["sigma_hat0"] = out.sigma_hat0;
  j["t_stat"] = out.t_stat;
  j["df"] = out.df.value();
  j["p_value"] = out.p_value.value();
  j["reject"] = out.reject;
  return j;
}

json two_sample_json(const TwoSampleOutcome& out, const std::string& input1,
                     const std::string& input2, std::size_t n1, std::size_t n2,
                     std::size_t p, double alpha) {
  json j;
  j["test"] = "two_sample";
  j["input1"] = input1;
  j["input2"] = input2;
  j["n1"] = n1;
  j["n2"] = n2;
  j["p"] = p;
  j["alpha"] = alpha;
  j["v_stat"] = out.v_stat;
  j["sigma_yy_hat"] = out.sigma_yy_hat;
  j["sigma_hat0"] = out.sigma_hat0;
  j["t_stat"] = out.t_stat;
  j["df"] = out.df.value();
  j["p_value"] = out.p_value.value();
  j["reject"] = out.reject;
  j["swapped"] = out.swapped;
  return j;
}

json screening_json(const ScreeningReport& report) {
  json j;
  j["family_alpha"] = report.family_alpha;
  j["m"] = report.m;
  j["threshold"] = report.threshold;
  json units = json::array();
  for (const ScreeningEntry& entry : report.entries) {
    json u;
    u["name"] = entry.name;
    if (entry.outcome) {
      u["t_stat"] = entry.outcome->t_stat;
      u["df"] = entry.outcome->df.value();
      u["p_value"] = entry.outcome->p_value.value();
      u["swapped"] = entry.outcome->swapped;
      u["reject_bonferroni"] = entry.reject_bonferroni;
    } else {
      u["error"] = entry.error;
    }
    units.push_back(std::move(u));
  }
  j["units"] = std::move(units);
  return j;
}

std::string screening_table(const ScreeningReport& report) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "family-wise alpha %.4g over %zu units, threshold %.6g\n",
                report.family_alpha, report.m, report.threshold);
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-20s %12s %12s  %s\n", "unit", "t_stat",
                "p_value", "decision");
  out << buf;
  for (const ScreeningEntry& entry : report.entries) {
    if (entry.outcome) {
      std::snprintf(buf, sizeof(buf), "%-20s %12.4f %12.6g  %s\n",
                    entry.name.c_str(), entry.outcome->t_stat,
                    entry.outcome->p_value.value(),
                    entry.reject_bonferroni ? "reject" : "retain");
    } else {
      std::snprintf(buf, sizeof(buf), "%-20s %12s %12s  error: %s\n",
                    entry.name.c_str(), "-", "-", entry.error.c_str());
    }
    out << buf;
  }
  return out.str();
}

json campaign_json(const SimCampaign& campaign,
                   const std::vector<CampaignCell>& cells) {
  const SimConfig& base = campaign.base;
  json config;
  config["scenario"] = std::string(scenario_token(base.scenario));
  json methods = json::array();
  for (Method m : base.methods) methods.push_back(std::string(method_token(m)));
  config["methods"] = std::move(methods);
  config["cov"] = cov_json(base.cov);
  config["innovation"] = std::string(innovation_token(base.innov.kind));
  config["p"] = base.p;
  config["reps"] = base.reps;
  config["alpha"] = base.alpha;
  config["seed"] = base.master_seed;
  config["redraw_cov"] = base.redraw_cov_per_rep;
  config["redraw_mean_support"] = base.redraw_mean_support_per_rep;
  const bool two_sample = base.scenario == Scenario::kTwoSampleSize ||
                          base.scenario == Scenario::kTwoSamplePower;
  const bool power = base.scenario == Scenario::kOneSamplePower ||
                     base.scenario == Scenario::kTwoSamplePower;
  if (two_sample) config["n2"] = base.n2;
  if (power) {
    config["beta"] = base.beta;
    config["r"] = campaign.r_grid;
  }

  json cell_array = json::array();
  for (const CampaignCell& cell : cells) {
    json c;
    c[two_sample ? "n1" : "n"] = cell.n;
    if (cell.has_null_stats) {
      c["df"] = cell.null_stats.df.value();
      c["ks_distance"] = cell.null_stats.ks.distance;
      c["ks_p_value"] = cell.null_stats.ks.p_value;
      c["statistics_csv"] = cell.csv_filename;
    } else if (power) {
      json points = json::array();
      for (const SimOutcome& outcome : cell.outcomes) {
        json pt;
        pt["r"] = outcome.r;
        pt["results"] = method_results_json(outcome);
        pt["theoretical_power_t"] = outcome.theoretical_power;
        points.push_back(std::move(pt));
      }
      c["points"] = std::move(points);
    } else {
      c["results"] = method_results_json(cell.outcomes.front());
    }
    cell_array.push_back(std::move(c));
  }

  json j;
  j["config"] = std::move(config);
  j["cells"] = std::move(cell_array);
  return j;
}

std::string campaign_table(const SimCampaign& campaign,
                           const std::vector<CampaignCell>& cells) {
  const SimConfig& base = campaign.base;
  const bool two_sample = base.scenario == Scenario::kTwoSampleSize ||
                          base.scenario == Scenario::kTwoSamplePower;
  const bool power = base.scenario == Scenario::kOneSamplePower ||
                     base.scenario == Scenario::kTwoSamplePower;
  std::ostringstream out;
  out << "scenario " << scenario_token(base.scenario) << "  cov "
      << covariance_token(base.cov.kind);
  if (base.cov.kind == CovarianceKind::kAr1) out << "(" << base.cov.rho << ")";
  out << "  innovation " << innovation_token(base.innov.kind) << "  p "
      << base.p;
  if (two_sample) out << "  n2 " << base.n2;
  out << "  reps " << base.reps << "  alpha " << base.alpha << "  seed "
      << base.master_seed << "\n";

  char buf[64];
  if (base.scenario == Scenario::kNullHistogram) {
    out << "\n     n    df  ks_distance  ks_p_value\n";
    for (const CampaignCell& cell : cells) {
      std::snprintf(buf, sizeof(buf), "%6zu %5lld %12.4f %11.4f\n", cell.n,
                    static_cast<long long>(cell.null_stats.df.value()),
                    cell.null_stats.ks.distance, cell.null_stats.ks.p_value);
      out << buf;
    }
    return out.str();
  }

  if (!power) {
    // methods x n grid of empirical sizes.
    out << "\nmethod";
    for (const CampaignCell& cell : cells) {
      std::snprintf(buf, sizeof(buf), "  %s=%-5zu", two_sample ? "n1" : "n",
                    cell.n);
      out << buf;
    }
    out << "\n";
    for (std::size_t m = 0; m < base.methods.size(); ++m) {
      std::snprintf(buf, sizeof(buf), "%-6s",
                    std::string(method_token(base.methods[m])).c_str());
      out << buf;
      for (const CampaignCell& cell : cells) {
        const MethodResult& mr = cell.outcomes.front().results[m];
        out << "  " << fixed3(mr.rejection_rate);
        out << std::string(std::max<int>(0, 5 - 5), ' ');
      }
      out << "\n";
    }
    return out.str();
  }

  // Power: one block per n, rows per r.
  for (const CampaignCell& cell : cells) {
    out << "\n" << (two_sample ? "n1" : "n") << " = " << cell.n << "\n";
    out << "     r";
    for (Method m : base.methods) {
      std::snprintf(buf, sizeof(buf), " %8s",
                    std::string(method_token(m)).c_str());
      out << buf;
    }
    out << "   theory(t)\n";
    for (const SimOutcome& outcome : cell.outcomes) {
      std::snprintf(buf, sizeof(buf), "%6.2f", outcome.r);
      out << buf;
      for (const MethodResult& mr : outcome.results) {
        out << "    " << fixed3(mr.rejection_rate);
      }
      out << "       " << fixed3(outcome.theoretical_power) << "\n";
    }
  }
  return out.str();
}

}  // namespace hdtest::report
