#include "mhrc/topology.hpp"

#include <stdexcept>
#include <string>

#include "mhrc/rng.hpp"

namespace mhrc {

namespace {

constexpr double kMinNodeSeparation = 1.0;  // m, avoids singular link budgets
constexpr int kMaxPlacementTries = 100000;

bool far_from_all(Point p, std::span<const Node> nodes, double min_dist) {
  for (const Node& n : nodes) {
    if (distance(p, n.pos) < min_dist) return false;
  }
  return true;
}

}  // namespace

const Node& Scenario::node(int id) const {
  if (id == bs.id) return bs;
  for (const Node& r : relays) {
    if (r.id == id) return r;
  }
  throw std::out_of_range("unknown node id " + std::to_string(id));
}

const Hotspot& Scenario::hotspot(int id) const {
  for (const Hotspot& h : hotspots) {
    if (h.id == id) return h;
  }
  throw std::out_of_range("unknown hotspot id " + std::to_string(id));
}

const Node& nearest_relay(Point p, std::span<const Node> relays) {
  if (relays.empty()) {
    throw std::invalid_argument("nearest_relay: empty relay set");
  }
  const Node* best = &relays[0];
  double best_d2 = squared_distance(p, relays[0].pos);
  for (const Node& r : relays.subspan(1)) {
    const double d2 = squared_distance(p, r.pos);
    if (d2 < best_d2 || (d2 == best_d2 && r.id < best->id)) {
      best = &r;
      best_d2 = d2;
    }
  }
  return *best;
}

void assign_edge_nodes(std::vector<Hotspot>& hotspots, std::span<const Node> relays) {
  for (Hotspot& h : hotspots) {
    h.edge_node = nearest_relay(h.center, relays).id;
  }
}

Scenario generate_scenario(double region_width_m, double region_height_m,
                           int relay_count, std::vector<Hotspot> hotspots,
                           const RadioParams& radio, const AntennaModel& antenna,
                           std::uint64_t seed) {
  if (region_width_m <= 0.0 || region_height_m <= 0.0) {
    throw std::invalid_argument("degenerate region");
  }
  if (relay_count < 1) {
    throw std::invalid_argument("at least one relay is required");
  }
  for (const Hotspot& h : hotspots) {
    if (h.radius <= 0.0) throw std::invalid_argument("hotspot radius must be positive");
    if (h.center.x < 0.0 || h.center.x > region_width_m || h.center.y < 0.0 ||
        h.center.y > region_height_m) {
      throw std::invalid_argument("hotspot center outside region");
    }
  }

  Scenario s;
  s.region_width_m = region_width_m;
  s.region_height_m = region_height_m;
  s.radio = radio;
  s.antenna = antenna;
  s.bs = Node{0, NodeKind::BaseStation, {region_width_m / 2.0, region_height_m / 2.0}};

  RandomStream rng = RandomStream::derive(seed, "topology");
  s.relays.reserve(static_cast<std::size_t>(relay_count));
  int tries = 0;
  while (static_cast<int>(s.relays.size()) < relay_count) {
    if (++tries > kMaxPlacementTries) {
      throw std::runtime_error("relay placement failed; region too crowded");
    }
    Point p{rng.uniform(0.0, region_width_m), rng.uniform(0.0, region_height_m)};
    if (distance(p, s.bs.pos) < kMinNodeSeparation) continue;
    if (!far_from_all(p, s.relays, kMinNodeSeparation)) continue;
    s.relays.push_back(Node{static_cast<int>(s.relays.size()) + 1, NodeKind::Relay, p});
  }

  s.hotspots = std::move(hotspots);
  assign_edge_nodes(s.hotspots, s.relays);
  return s;
}

Scenario generate_scenario(double region_width_m, double region_height_m,
                           int relay_count, const HotspotPlacement& placement,
                           const RadioParams& radio, const AntennaModel& antenna,
                           std::uint64_t seed) {
  if (placement.count < 0) {
    throw std::invalid_argument("hotspot count must be non-negative");
  }
  // Relays are drawn from the "topology" stream regardless of how hotspots
  // are specified, so explicit and random hotspot placement see the same
  // relay field for the same seed.
  Scenario base = generate_scenario(region_width_m, region_height_m, relay_count,
                                    std::vector<Hotspot>{}, radio, antenna, seed);

  RandomStream rng = RandomStream::derive(seed, "hotspots");
  const double m = placement.edge_margin_m;
  const Point bs_pos = base.bs.pos;
  std::vector<Hotspot> spots;
  spots.reserve(static_cast<std::size_t>(placement.count));
  int tries = 0;
  while (static_cast<int>(spots.size()) < placement.count) {
    if (++tries > kMaxPlacementTries) {
      throw std::runtime_error("hotspot placement failed; constraints too tight");
    }
    Point c{rng.uniform(m, region_width_m - m), rng.uniform(m, region_height_m - m)};
    if (distance(c, bs_pos) < placement.min_bs_distance_m) continue;
    bool ok = true;
    for (const Hotspot& h : spots) {
      if (distance(c, h.center) < placement.min_separation_m) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    spots.push_back(Hotspot{static_cast<int>(spots.size()), c, placement.radius_m, -1});
  }
  base.hotspots = std::move(spots);
  assign_edge_nodes(base.hotspots, base.relays);
  return base;
}

}  // namespace mhrc
