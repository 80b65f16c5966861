#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdtest/csv.hpp"
#include "hdtest/errors.hpp"
#include "hdtest/mc_harness.hpp"
#include "hdtest/one_sample.hpp"
#include "hdtest/rng.hpp"
#include "hdtest/screening.hpp"
#include "hdtest/sim_config.hpp"
#include "hdtest/two_sample.hpp"
#include "report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct IoOptions {
  double alpha = 0.05;
  std::string delimiter = ",";
  bool header = false;
  std::string output;
};

void add_io_options(CLI::App* cmd, IoOptions& opts) {
  cmd->add_option("--alpha", opts.alpha, "Significance level")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  cmd->add_option("--delimiter", opts.delimiter, "CSV delimiter (one character)")
      ->check(CLI::Validator(
          [](std::string& s) {
            return s.size() == 1 ? std::string{}
                                 : std::string{"must be a single character"};
          },
          "CHAR"));
  cmd->add_flag("--header", opts.header, "Skip the first CSV line");
  cmd->add_option("--output", opts.output, "Write the JSON report here "
                                           "instead of stdout");
}

hdtest::CsvOptions csv_options(const IoOptions& opts) {
  return hdtest::CsvOptions{.delimiter = opts.delimiter[0],
                            .header = opts.header};
}

void emit_json(const json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(output);
  if (!out) throw hdtest::parse_error("cannot write '" + output + "'");
  out << j.dump(2) << "\n";
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const hdtest::insufficient_sample_error*>(&e))
    return "insufficient_sample";
  if (dynamic_cast<const hdtest::degenerate_data_error*>(&e))
    return "degenerate_data";
  if (dynamic_cast<const hdtest::shape_error*>(&e)) return "shape";
  if (dynamic_cast<const hdtest::parse_error*>(&e)) return "parse";
  if (dynamic_cast<const hdtest::config_error*>(&e)) return "config";
  if (dynamic_cast<const std::domain_error*>(&e)) return "domain";
  return "error";
}

int run_test_one(const std::string& csv_path, const IoOptions& opts) {
  const hdtest::SampleMatrix x =
      hdtest::read_csv_matrix(csv_path, csv_options(opts));
  const hdtest::OneSampleOutcome out =
      hdtest::one_sample_test(x, hdtest::Probability(opts.alpha));
  emit_json(hdtest::report::one_sample_json(out, csv_path, x.rows(), x.cols()),
            opts.output);
  return 0;
}

int run_test_two(const std::string& csv1, const std::string& csv2,
                 const IoOptions& opts) {
  const hdtest::SampleMatrix x1 =
      hdtest::read_csv_matrix(csv1, csv_options(opts));
  const hdtest::SampleMatrix x2 =
      hdtest::read_csv_matrix(csv2, csv_options(opts));
  const hdtest::TwoSampleOutcome out =
      hdtest::two_sample_test(x1, x2, hdtest::Probability(opts.alpha));
  emit_json(hdtest::report::two_sample_json(out, csv1, csv2, x1.rows(),
                                            x2.rows(), x1.cols(), opts.alpha),
            opts.output);
  return 0;
}

void write_null_stats_csv(const fs::path& path,
                          const std::vector<double>& stats) {
  std::ofstream out(path);
  if (!out) throw hdtest::parse_error("cannot write '" + path.string() + "'");
  out << "t_stat\n";
  char buf[40];
  for (double v : stats) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out << buf;
  }
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 const CLI::App* cmd, std::uint64_t seed, std::size_t reps,
                 double alpha, std::size_t workers) {
  hdtest::SimCampaign campaign = hdtest::parse_sim_config_file(config_path);
  if (cmd->count("--seed") > 0) campaign.base.master_seed = seed;
  if (cmd->count("--reps") > 0) campaign.base.reps = reps;
  if (cmd->count("--alpha") > 0) campaign.base.alpha = alpha;
  if (cmd->count("--workers") > 0) campaign.base.workers = workers;

  const hdtest::SimConfig& base = campaign.base;
  const bool two_sample =
      base.scenario == hdtest::Scenario::kTwoSampleSize ||
      base.scenario == hdtest::Scenario::kTwoSamplePower;
  const std::vector<std::size_t>& grid =
      two_sample ? campaign.n1_values : campaign.n_values;

  fs::create_directories(out_dir);
  std::vector<hdtest::report::CampaignCell> cells;
  cells.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    hdtest::SimConfig cfg = base;
    // Each grid cell gets its own derived stream so cells are independent.
    cfg.master_seed = hdtest::mix_seed(base.master_seed, i);
    if (two_sample) {
      cfg.n1 = grid[i];
    } else {
      cfg.n = grid[i];
    }
    hdtest::report::CampaignCell cell;
    cell.n = grid[i];
    switch (base.scenario) {
      case hdtest::Scenario::kNullHistogram: {
        cell.has_null_stats = true;
        cell.null_stats = hdtest::collect_null_statistics(cfg);
        cell.csv_filename = "null_stats_n" + std::to_string(grid[i]) + ".csv";
        write_null_stats_csv(fs::path(out_dir) / cell.csv_filename,
                             cell.null_stats.t_stats);
        break;
      }
      case hdtest::Scenario::kOneSamplePower:
      case hdtest::Scenario::kTwoSamplePower:
        cell.outcomes = hdtest::run_power_experiment(cfg, campaign.r_grid);
        break;
      default:
        cell.outcomes = {hdtest::run_size_experiment(cfg)};
        break;
    }
    double runtime = 0.0;
    for (const auto& outcome : cell.outcomes)
      runtime += outcome.runtime_seconds;
    std::cerr << "cell " << (two_sample ? "n1=" : "n=") << grid[i] << " done in "
              << runtime << " s\n";
    cells.push_back(std::move(cell));
  }

  const json j = hdtest::report::campaign_json(campaign, cells);
  {
    std::ofstream out(fs::path(out_dir) / "outcome.json");
    if (!out) throw hdtest::parse_error("cannot write outcome.json");
    out << j.dump(2) << "\n";
  }
  const std::string table = hdtest::report::campaign_table(campaign, cells);
  {
    std::ofstream out(fs::path(out_dir) / "table.txt");
    if (!out) throw hdtest::parse_error("cannot write table.txt");
    out << table;
  }
  std::cout << table;
  return 0;
}

int run_screen(const std::string& manifest_path, const IoOptions& opts) {
  std::ifstream in(manifest_path);
  if (!in) throw hdtest::parse_error("cannot open '" + manifest_path + "'");
  const fs::path base_dir = fs::path(manifest_path).parent_path();
  const auto resolve = [&base_dir](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  std::vector<hdtest::ScreeningUnit> units;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      const auto b = field.find_first_not_of(" \t\r");
      const auto e = field.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos
                           ? std::string{}
                           : field.substr(b, e - b + 1));
    }
    if (fields.size() != 3 || fields[0].empty()) {
      throw hdtest::parse_error(manifest_path + ": line " +
                                std::to_string(line_no) +
                                ": expected 'name,csv1,csv2'");
    }
    hdtest::ScreeningUnit unit;
    unit.name = fields[0];
    try {
      unit.group1 = hdtest::read_csv_matrix(resolve(fields[1]).string(),
                                            csv_options(opts));
      unit.group2 = hdtest::read_csv_matrix(resolve(fields[2]).string(),
                                            csv_options(opts));
    } catch (const std::exception& e) {
      unit.group1.reset();
      unit.group2.reset();
      unit.load_error = e.what();
    }
    units.push_back(std::move(unit));
  }

  const hdtest::ScreeningReport report =
      hdtest::screen_units(units, hdtest::Probability(opts.alpha));
  emit_json(hdtest::report::screening_json(report), opts.output);
  if (!opts.output.empty()) {
    std::cout << hdtest::report::screening_table(report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-sample t-tests for high-dimensional mean vectors"};
  app.require_subcommand(1);

  IoOptions one_opts;
  std::string one_csv;
  CLI::App* test_one = app.add_subcommand(
      "test-one", "One-sample mean test on a CSV matrix (rows = observations)");
  test_one->add_option("csv", one_csv, "Input CSV")->required();
  add_io_options(test_one, one_opts);

  IoOptions two_opts;
  std::string two_csv1, two_csv2;
  CLI::App* test_two = app.add_subcommand(
      "test-two", "Two-sample mean comparison of two CSV matrices");
  test_two->add_option("csv1", two_csv1, "First sample CSV")->required();
  test_two->add_option("csv2", two_csv2, "Second sample CSV")->required();
  add_io_options(test_two, two_opts);

  std::string sim_config, sim_outdir;
  std::uint64_t sim_seed = 0;
  std::size_t sim_reps = 0, sim_workers = 0;
  double sim_alpha = 0.05;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run a Monte Carlo experiment described by a config file");
  simulate->add_option("config", sim_config, "Experiment config file")
      ->required();
  simulate->add_option("--output", sim_outdir, "Output directory")->required();
  simulate->add_option("--seed", sim_seed, "Override the master seed");
  simulate->add_option("--reps", sim_reps, "Override the replication count");
  simulate->add_option("--alpha", sim_alpha, "Override the significance level");
  simulate->add_option("--workers", sim_workers,
                       "Worker threads (0 = hardware concurrency); does not "
                       "affect results");

  IoOptions screen_opts;
  std::string screen_manifest;
  CLI::App* screen = app.add_subcommand(
      "screen", "Per-unit two-sample tests with Bonferroni correction; the "
                "manifest lists 'name,csv1,csv2' per line");
  screen->add_option("manifest", screen_manifest, "Manifest file")->required();
  add_io_options(screen, screen_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (test_one->parsed()) return run_test_one(one_csv, one_opts);
    if (test_two->parsed()) return run_test_two(two_csv1, two_csv2, two_opts);
    if (simulate->parsed()) {
      return run_simulate(sim_config, sim_outdir, simulate, sim_seed, sim_reps,
                          sim_alpha, sim_workers);
    }
    if (screen->parsed()) return run_screen(screen_manifest, screen_opts);
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"type", error_kind(e)}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
