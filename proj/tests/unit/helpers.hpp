#pragma once

#include <vector>

#include "mhrc/io.hpp"
#include "mhrc/topology.hpp"

namespace mhrc::test {

inline RadioParams table_radio() {
  RadioParams p = RadioParams::with_carrier(60.0e9);
  p.bandwidth_hz = 2.16e9;
  p.noise_density_mw_per_hz = noise_density_from_dbm_per_mhz(-134.0);
  p.pathloss_exponent = 2.0;
  p.tx_power_mw = 1000.0;
  p.mui_factor_rho = 1.0;
  p.transceiver_efficiency = 0.5;
  p.slot_duration_s = 1.0;
  return p;
}

inline AntennaModel table_antenna() { return AntennaModel::from_beamwidth(30.0); }

/// Hand-built scenario: BS at `bs`, relays with ids 1..n in the given
/// order, hotspots with edge nodes already assigned by the nearest rule.
inline Scenario make_scenario(Point bs, std::vector<Point> relay_positions,
                              std::vector<Hotspot> hotspots,
                              double region = 300.0) {
  Scenario s;
  s.region_width_m = region;
  s.region_height_m = region;
  s.radio = table_radio();
  s.antenna = table_antenna();
  s.bs = Node{0, NodeKind::BaseStation, bs};
  int id = 1;
  for (Point p : relay_positions) {
    s.relays.push_back(Node{id++, NodeKind::Relay, p});
  }
  s.hotspots = std::move(hotspots);
  assign_edge_nodes(s.hotspots, s.relays);
  return s;
}

inline HotspotStats make_stats(std::vector<HotspotStat> stats) {
  HotspotStats out;
  out.per_hotspot = std::move(stats);
  return out;
}

/// Small configuration for fast end-to-end tests.
inline SimConfig small_config() {
  SimConfig c;
  c.topology.relay_count = 12;
  c.topology.placement.count = 3;
  c.topology.placement.min_bs_distance_m = 60.0;
  c.topology.placement.min_separation_m = 40.0;
  c.mobility.user_count = 30;
  c.mobility.dwell_mean_s = 60.0;
  c.mobility.dwell_std_s = 15.0;
  c.schedule.total_slots = 400;
  c.schedule.max_hops = 4;
  return c;
}

}  // namespace mhrc::test
