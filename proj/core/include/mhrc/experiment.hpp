#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhrc/baselines.hpp"
#include "mhrc/io.hpp"

namespace mhrc {

/// A schedule or outcome violated the problem constraints; maps to CLI
/// exit code 3.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunResult {
  std::uint64_t seed = 0;
  Scenario truth;
  Scenario planning;
  HotspotStats stats;
  BaselineResult mhrc;
  BaselineResult cachuni;
  CacheOutcome unicast;
};

/// Builds the scenario for a seed (topology plus user statistics) without
/// running any scheme.
struct PreparedScenario {
  Scenario truth;
  Scenario planning;
  HotspotStats stats;
};
PreparedScenario prepare_scenario(const SimConfig& config, std::uint64_t seed);

/// Full pipeline for one seed: scenario, trajectories, statistics, optional
/// hotspot-location error, all three schemes, and constraint verification
/// of the MHRC and CachUni schedules (throws InvariantViolation on
/// failure).
RunResult run_once(const SimConfig& config, std::uint64_t seed);

void write_results_csv(std::ostream& out, std::span<const RunResult> results);

enum class SweepAxis { Beta, Hm, Pt, Relays, Theta, Sigma, K, ErrVar };

std::optional<SweepAxis> parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);
SimConfig apply_axis(SimConfig config, SweepAxis axis, double value);

struct SweepPoint {
  SweepAxis axis;
  double value;
  std::string scheme;
  int seed_count = 0;
  double mean_expected_bits = 0.0;
  double std_expected_bits = 0.0;
  double mean_energy_mj = 0.0;
  double mean_efficiency = 0.0;
};

/// Cartesian product of axis values and seeds; points run concurrently up
/// to `threads` at a time, and aggregation order is fixed so the output is
/// identical for any thread count.
std::vector<SweepPoint> run_sweep(const SimConfig& config, SweepAxis axis,
                                  std::span<const double> values,
                                  std::span<const std::uint64_t> seeds, int threads);

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);

struct GapResult {
  int instance = 0;
  std::uint64_t seed = 0;
  double mhrc_expected_bits = 0.0;
  double oracle_expected_bits = 0.0;
};

/// Tiny random instances (2 hotspots, 4 relays, K = 6, hop limit 3)
/// comparing the heuristic against the exhaustive optimum.
std::vector<GapResult> run_oracle_gap(const SimConfig& base, int instances,
                                      std::uint64_t base_seed);

void write_gap_csv(std::ostream& out, std::span<const GapResult> rows);

}  // namespace mhrc
