#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "mhrc/metrics.hpp"
#include "mhrc/mobility.hpp"

namespace mhrc {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TopologyConfig {
  double region_width_m = 300.0;
  double region_height_m = 300.0;
  int relay_count = 30;
  HotspotPlacement placement;
  /// When non-empty, overrides random placement.
  std::vector<Hotspot> explicit_hotspots;
};

/// Whole-simulation configuration; defaults follow the evaluation setup
/// (2160 MHz bandwidth, -134 dBm/MHz noise, 30 dBm, 30 relays, 5400 slots,
/// beta 0.9, H_m 8, sigma 1e-10, 30 degree beamwidth, eta 0.5, 1 s slots).
struct SimConfig {
  double bandwidth_hz = 2.16e9;
  double noise_dbm_per_mhz = -134.0;
  double pathloss_exponent = 2.0;
  double tx_power_mw = 1000.0;
  double mui_factor_rho = 1.0;
  double carrier_hz = 60.0e9;
  double transceiver_efficiency = 0.5;
  double slot_duration_s = 1.0;
  double halfpower_beamwidth_deg = 30.0;

  TopologyConfig topology;
  MobilityConfig mobility;
  std::optional<std::string> trajectory_file;
  ScheduleConfig schedule;
  EnergyModel energy_model = EnergyModel::CachingPlusDelivery;
  double location_error_var_m2 = 0.0;

  RadioParams radio_params() const;
  AntennaModel antenna_model() const;
};

SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimConfig& config);
/// Throws ConfigError on a missing file, invalid JSON or invalid values.
SimConfig load_config(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);
void save_scenario(const std::filesystem::path& path, const Scenario& scenario);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json stats_to_json(const HotspotStats& stats);
HotspotStats stats_from_json(const nlohmann::json& j);
void save_stats(const std::filesystem::path& path, const HotspotStats& stats);
HotspotStats load_stats(const std::filesystem::path& path);

nlohmann::json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& j);
void save_schedule(const std::filesystem::path& path, const Schedule& schedule);
Schedule load_schedule(const std::filesystem::path& path);

/// Shortest round-trip decimal formatting, used for all CSV numbers.
std::string format_double(double value);

}  // namespace mhrc
