#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mhrc/geometry.hpp"
#include "mhrc/radio.hpp"

namespace mhrc {

enum class NodeKind { BaseStation, Relay };

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::Relay;
  Point pos;
};

struct Hotspot {
  int id = 0;
  Point center;
  double radius = 15.0;
  int edge_node = -1;  // id of the nearest relay
};

/// Random-placement rule for hotspots; used when no explicit list is given.
struct HotspotPlacement {
  int count = 6;
  double radius_m = 15.0;
  double min_bs_distance_m = 75.0;
  double min_separation_m = 50.0;
  double edge_margin_m = 20.0;
};

/// Immutable network geometry: one BS (id 0, region center by default),
/// uniformly deployed relays (ids 1..n) and the hotspots with their
/// assigned edge nodes.
struct Scenario {
  double region_width_m = 300.0;
  double region_height_m = 300.0;
  Node bs;
  std::vector<Node> relays;
  std::vector<Hotspot> hotspots;
  RadioParams radio;
  AntennaModel antenna;

  const Node& node(int id) const;
  Point position(int id) const { return node(id).pos; }
  const Hotspot& hotspot(int id) const;
};

/// Nearest relay by Euclidean distance; ties broken by lowest id.
const Node& nearest_relay(Point p, std::span<const Node> relays);

/// Re-derives every hotspot's edge node from the given relay set.
void assign_edge_nodes(std::vector<Hotspot>& hotspots, std::span<const Node>
                       relays);

Scenario generate_scenario(double region_width_m, double region_height_m,
                           int relay_count, const HotspotPlacement& placement,
                           const RadioParams& radio, const AntennaModel& antenna,
                           std::uint64_t seed);

Scenario generate_scenario(double region_width_m, double region_height_m,
                           int relay_count, std::vector<Hotspot> hotspots,
                           const RadioParams& radio, const AntennaModel& antenna,
                           std::uint64_t seed);

}  // namespace mhrc
