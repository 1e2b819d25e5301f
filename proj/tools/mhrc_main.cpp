// Command-line front end: scenario/trajectory generation, statistics
// estimation, single runs and parameter sweeps, and the oracle gap report.
//
// Exit codes: 0 success, 2 configuration/input error, 3 internal invariant
// violation.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhrc/experiment.hpp"
#include "mhrc/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> out;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw mhrc::ConfigError("cannot open output file: " + path);
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MHRC mobility-aware multi-hop caching simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario_path;
  std::string traj_path;
  std::string out_path;
  std::string schedule_out;
  std::string axis_str;
  std::string values_str;
  std::string seeds_str;
  std::uint64_t seed = 1;
  int seed_count = 1;
  std::uint64_t seed_base = 1;
  int threads = 1;
  int instances = 50;

  auto* gen_scenario = app.add_subcommand("gen-scenario", "Generate a scenario JSON");
  gen_scenario->add_option("--config", config_path, "Config JSON")->required();
  gen_scenario->add_option("--seed", seed, "RNG seed");
  gen_scenario->add_option("--out", out_path, "Output scenario JSON")->required();

  auto* gen_traj = app.add_subcommand("gen-traj", "Generate synthetic trajectories CSV");
  gen_traj->add_option("--config", config_path, "Config JSON")->required();
  gen_traj->add_option("--scenario", scenario_path, "Scenario JSON (generated when absent)");
  gen_traj->add_option("--seed", seed, "RNG seed");
  gen_traj->add_option("--out", out_path, "Output trajectory CSV")->required();

  auto* stats_cmd = app.add_subcommand("stats", "Estimate hotspot statistics from trajectories");
  stats_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  stats_cmd->add_option("--traj", traj_path, "Trajectory CSV")->required();
  stats_cmd->add_option("--out", out_path, "Output stats JSON")->required();

  auto* run_cmd = app.add_subcommand("run", "Run MHRC and both baselines on one scenario");
  run_cmd->add_option("--config", config_path, "Config JSON")->required();
  run_cmd->add_option("--seed", seed, "RNG seed");
  run_cmd->add_option("--seeds", seeds_str, "Comma-separated list of seeds (overrides --seed)");
  run_cmd->add_option("--traj", traj_path, "Trajectory CSV (overrides config)");
  run_cmd->add_option("--out", out_path, "Output results CSV")->required();
  run_cmd->add_option("--schedule-out", schedule_out,
                      "Write the MHRC schedule JSON (first seed)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter axis");
  sweep_cmd->add_option("--config", config_path, "Config JSON")->required();
  sweep_cmd->add_option("--axis", axis_str,
                        "Axis: beta|hm|pt|relays|theta|sigma|k|err_var")->required();
  sweep_cmd->add_option("--values", values_str, "Comma-separated axis values")->required();
  sweep_cmd->add_option("--seeds", seed_count, "Number of seeds per value");
  sweep_cmd->add_option("--seed-base", seed_base, "First seed");
  sweep_cmd->add_option("--threads", threads, "Concurrent runs");
  sweep_cmd->add_option("--out", out_path, "Output sweep CSV")->required();

  auto* gap_cmd = app.add_subcommand("oracle-gap", "Compare MHRC with the exact oracle");
  gap_cmd->add_option("--config", config_path, "Config JSON")->required();
  gap_cmd->add_option("--instances", instances, "Number of toy instances");
  gap_cmd->add_option("--seed", seed_base, "First instance seed");
  gap_cmd->add_option("--out", out_path, "Output gap CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_scenario->parsed()) {
      const mhrc::SimConfig config = mhrc::load_config(config_path);
      const mhrc::PreparedScenario prep = mhrc::prepare_scenario(config, seed);
      mhrc::save_scenario(out_path, prep.truth);
      return kExitOk;
    }

    if (gen_traj->parsed()) {
      const mhrc::SimConfig config = mhrc::load_config(config_path);
      mhrc::Scenario scenario;
      if (!scenario_path.empty()) {
        scenario = mhrc::load_scenario(scenario_path);
      } else {
        scenario = mhrc::prepare_scenario(config, seed).truth;
      }
      const auto trajectories =
          mhrc::generate_trajectories(scenario, config.mobility, seed);
      mhrc::write_trajectories_csv(out_path, trajectories);
      return kExitOk;
    }

    if (stats_cmd->parsed()) {
      const mhrc::Scenario scenario = mhrc::load_scenario(scenario_path);
      const auto trajectories = mhrc::read_trajectories_csv(traj_path);
      const mhrc::HotspotStats stats = mhrc::estimate_stats(
          trajectories, scenario.hotspots, scenario.radio.slot_duration_s);
      mhrc::save_stats(out_path, stats);
      return kExitOk;
    }

    if (run_cmd->parsed()) {
      mhrc::SimConfig config = mhrc::load_config(config_path);
      if (!traj_path.empty()) config.trajectory_file = traj_path;
      std::vector<std::uint64_t> seeds;
      if (!seeds_str.empty()) {
        seeds = parse_seed_list(seeds_str);
      } else {
        seeds = {seed};
      }
      std::vector<mhrc::RunResult> results;
      results.reserve(seeds.size());
      for (std::uint64_t s : seeds) {
        results.push_back(mhrc::run_once(config, s));
      }
      auto out = open_output(out_path);
      mhrc::write_results_csv(out, results);
      if (!schedule_out.empty() && !results.empty()) {
        mhrc::save_schedule(schedule_out, results.front().mhrc.schedule);
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const mhrc::SimConfig config = mhrc::load_config(config_path);
      const auto axis = mhrc::parse_axis(axis_str);
      if (!axis) throw mhrc::ConfigError("unknown sweep axis: " + axis_str);
      const std::vector<double> values = parse_double_list(values_str);
      if (values.empty()) throw mhrc::ConfigError("sweep values list is empty");
      if (seed_count < 1) throw mhrc::ConfigError("seed count must be >= 1");
      std::vector<std::uint64_t> seeds;
      for (int i = 0; i < seed_count; ++i) {
        seeds.push_back(seed_base + static_cast<std::uint64_t>(i));
      }
      const auto points = mhrc::run_sweep(config, *axis, values, seeds, threads);
      auto out = open_output(out_path);
      mhrc::write_sweep_csv(out, points);
      return kExitOk;
    }

    if (gap_cmd->parsed()) {
      const mhrc::SimConfig config = mhrc::load_config(config_path);
      const auto rows = mhrc::run_oracle_gap(config, instances, seed_base);
      auto out = open_output(out_path);
      mhrc::write_gap_csv(out, rows);
      bool sound = true;
      for (const auto& r : rows) {
        if (r.mhrc_expected_bits >
            r.oracle_expected_bits * (1.0 + 1e-9) + 1e-6) {
          sound = false;
        }
      }
      if (!sound) {
        std::cerr << "oracle gap: heuristic exceeded the exhaustive optimum\n";
        return kExitInvariant;
      }
      return kExitOk;
    }
  } catch (const mhrc::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
