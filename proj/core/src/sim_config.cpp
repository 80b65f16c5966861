#include "hdtest/sim_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hdtest/errors.hpp"

namespace hdtest {

namespace {

std::string trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_list(std::string_view value) {
  std::string body = trim(value);
  if (!body.empty() && body.front() == '[' && body.back() == ']') {
    body = trim(std::string_view(body).substr(1, body.size() - 2));
  }
  std::vector<std::string> items;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw config_error("key '" + key + "': cannot parse '" + value +
                       "' as a number");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw config_error("key '" + key + "': cannot parse '" + value +
                       "' as a nonnegative integer");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lowercase(value);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw config_error("key '" + key + "': expected true or false, got '" +
                     value + "'");
}

}  // namespace

std::string_view scenario_token(Scenario s) {
  switch (s) {
    case Scenario::kOneSampleSize: return "one_sample_size";
    case Scenario::kOneSamplePower: return "one_sample_power";
    case Scenario::kTwoSampleSize: return "two_sample_size";
    case Scenario::kTwoSamplePower: return "two_sample_power";
    case Scenario::kNullHistogram: return "null_histogram";
  }
  return "?";
}

std::string_view method_token(Method m) {
  switch (m) {
    case Method::kT: return "t";
    case Method::kCQ: return "cq";
    case Method::kBS: return "bs";
    case Method::kSD: return "sd";
  }
  return "?";
}

std::string_view covariance_token(CovarianceKind k) {
  switch (k) {
    case CovarianceKind::kIdentity: return "identity";
    case CovarianceKind::kAr1: return "ar1";
    case CovarianceKind::kRandomSparse: return "sparse";
  }
  return "?";
}

std::string_view innovation_token(InnovationKind k) {
  return k == InnovationKind::kGaussian ? "gaussian" : "t4";
}

Scenario parse_scenario(std::string_view token) {
  const std::string t = lowercase(std::string(token));
  if (t == "one_sample_size") return Scenario::kOneSampleSize;
  if (t == "one_sample_power") return Scenario::kOneSamplePower;
  if (t == "two_sample_size") return Scenario::kTwoSampleSize;
  if (t == "two_sample_power") return Scenario::kTwoSamplePower;
  if (t == "null_histogram") return Scenario::kNullHistogram;
  throw config_error("unknown scenario '" + std::string(token) + "'");
}

Method parse_method(std::string_view token) {
  const std::string t = lowercase(std::string(token));
  if (t == "t") return Method::kT;
  if (t == "cq") return Method::kCQ;
  if (t == "bs") return Method::kBS;
  if (t == "sd") return Method::kSD;
  throw config_error("unknown method '" + std::string(token) +
                     "' (expected t, cq, bs or sd)");
}

SimCampaign parse_sim_config(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw config_error("line " + std::to_string(line_no) +
                         ": expected 'key = value', got '" + body + "'");
    }
    const std::string key = lowercase(trim(body.substr(0, eq)));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw config_error("line " + std::to_string(line_no) +
                         ": empty key or value");
    }
    if (!entries.emplace(key, value).second) {
      throw config_error("key '" + key + "' appears twice");
    }
  }

  const auto take = [&entries](const std::string& key) {
    std::optional<std::string> out;
    if (const auto it = entries.find(key); it != entries.end()) {
      out = it->second;
      entries.erase(it);
    }
    return out;
  };

  SimCampaign campaign;
  SimConfig& cfg = campaign.base;

  const auto scenario = take("scenario");
  if (!scenario) throw config_error("missing required key 'scenario'");
  cfg.scenario = parse_scenario(*scenario);

  const auto p = take("p");
  if (!p) throw config_error("missing required key 'p'");
  cfg.p = parse_u64("p", *p);

  if (const auto methods = take("methods")) {
    cfg.methods.clear();
    for (const std::string& item : split_list(*methods)) {
      cfg.methods.push_back(parse_method(item));
    }
    if (cfg.methods.empty()) {
      throw config_error("key 'methods': list is empty");
    }
  }

  if (const auto cov = take("cov")) {
    const std::string t = lowercase(*cov);
    if (t == "identity") {
      cfg.cov = CovarianceSpec::identity();
    } else if (t == "ar1") {
      const auto rho = take("rho");
      if (!rho) throw config_error("cov = ar1 requires key 'rho'");
      cfg.cov = CovarianceSpec::ar1(parse_double("rho", *rho));
    } else if (t == "sparse" || t == "random_sparse") {
      cfg.cov = CovarianceSpec::random_sparse();
    } else {
      throw config_error("unknown covariance '" + *cov +
                         "' (expected identity, ar1 or sparse)");
    }
  }

  if (const auto innov = take("innovation")) {
    const std::string t = lowercase(*innov);
    if (t == "gaussian") {
      cfg.innov.kind = InnovationKind::kGaussian;
    } else if (t == "t4") {
      cfg.innov.kind = InnovationKind::kStandardizedT4;
    } else {
      throw config_error("unknown innovation '" + *innov +
                         "' (expected gaussian or t4)");
    }
  }

  if (const auto reps = take("reps")) cfg.reps = parse_u64("reps", *reps);
  if (const auto alpha = take("alpha")) cfg.alpha = parse_double("alpha", *alpha);
  if (const auto seed = take("seed")) cfg.master_seed = parse_u64("seed", *seed);
  if (const auto workers = take("workers")) {
    cfg.workers = parse_u64("workers", *workers);
  }
  if (const auto redraw = take("redraw_cov")) {
    cfg.redraw_cov_per_rep = parse_bool("redraw_cov", *redraw);
  }
  if (const auto redraw = take("redraw_mean_support")) {
    cfg.redraw_mean_support_per_rep =
        parse_bool("redraw_mean_support", *redraw);
  }
  if (const auto beta = take("beta")) cfg.beta = parse_double("beta", *beta);

  const bool two_sample = cfg.scenario == Scenario::kTwoSampleSize ||
                          cfg.scenario == Scenario::kTwoSamplePower;
  const bool power = cfg.scenario == Scenario::kOneSamplePower ||
                     cfg.scenario == Scenario::kTwoSamplePower;

  if (two_sample) {
    const auto n1 = take("n1");
    const auto n2 = take("n2");
    if (!n1 || !n2) {
      throw config_error("two-sample scenarios require keys 'n1' and 'n2'");
    }
    for (const std::string& item : split_list(*n1)) {
      campaign.n1_values.push_back(parse_u64("n1", item));
    }
    if (campaign.n1_values.empty()) throw config_error("key 'n1': empty list");
    cfg.n2 = parse_u64("n2", *n2);
    cfg.n1 = campaign.n1_values.front();
  } else {
    const auto n = take("n");
    if (!n) throw config_error("one-sample scenarios require key 'n'");
    for (const std::string& item : split_list(*n)) {
      campaign.n_values.push_back(parse_u64("n", item));
    }
    if (campaign.n_values.empty()) throw config_error("key 'n': empty list");
    cfg.n = campaign.n_values.front();
  }

  if (power) {
    const auto r = take("r");
    if (!r) throw config_error("power scenarios require key 'r'");
    for (const std::string& item : split_list(*r)) {
      campaign.r_grid.push_back(parse_double("r", item));
    }
    if (campaign.r_grid.empty()) throw config_error("key 'r': empty list");
  } else if (const auto r = take("r")) {
    throw config_error("key 'r' only applies to power scenarios");
  }

  if (!entries.empty()) {
    throw config_error("unknown key '" + entries.begin()->first + "'");
  }
  return campaign;
}

SimCampaign parse_sim_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file '" + path + "'");
  }
  return parse_sim_config(in);
}

}  // namespace hdtest
