#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "mhrc/topology.hpp"

namespace mhrc {

struct TrajectorySample {
  double t = 0.0;  // seconds, strictly increasing within a trajectory
  double x = 0.0;
  double y = 0.0;
};

struct Trajectory {
  int user_id = 0;
  std::vector<TrajectorySample> samples;
};

struct HotspotStat {
  int hotspot_id = 0;
  double pass_prob = 0.0;  // f(u), fraction of users entering the disk
  int stay_slots = 0;      // tau_u, mean dwell rounded to slots (>= 1 if f > 0)
};

struct HotspotStats {
  std::vector<HotspotStat> per_hotspot;

  const HotspotStat* find(int hotspot_id) const;
};

/// Pass/dwell statistics over the closed disks of the hotspots. A user
/// "passes" a hotspot when its piecewise-linear path touches the disk;
/// dwell is the total time inside, rounded to the nearest slot (minimum one
/// slot for passing users). Unvisited hotspots get f = 0 and tau = 0.
HotspotStats estimate_stats(std::span<const Trajectory> trajectories,
                            std::span<const Hotspot> hotspots,
                            double slot_duration_s);

struct MobilityConfig {
  int user_count = 100;
  double speed_mps = 1.4;
  double dwell_mean_s = 600.0;
  double dwell_std_s = 150.0;
  /// Per-hotspot visit probabilities, indexed by hotspot list order and
  /// cycled when shorter than the hotspot count.
  std::vector<double> visit_probs = {0.9, 0.8, 0.65, 0.5, 0.35, 0.2};
};

/// Waypoint walks: each user visits a Bernoulli-selected subset of hotspots
/// in random order, dwelling (stationary) inside each visited disk.
std::vector<Trajectory> generate_trajectories(const Scenario& scenario,
                                              const MobilityConfig& config,
                                              std::uint64_t seed);

/// Adds i.i.d. N(0, variance) offsets to each hotspot center, per axis.
/// Radii and ids are unchanged; variance 0 returns the input unchanged.
std::vector<Hotspot> perturb_hotspots(std::span<const Hotspot> hotspots,
                                      double variance_m2, std::uint64_t seed);

void write_trajectories_csv(const std::filesystem::path& path,
                            std::span<const Trajectory> trajectories);

/// Parses `user_id,t,x,y` rows. Throws std::runtime_error on a missing
/// file, bad header, malformed row or non-increasing timestamps.
std::vector<Trajectory> read_trajectories_csv(const std::filesystem::path& path);

}  // namespace mhrc
