#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mhrc/topology.hpp"

namespace mhrc {

/// Directed relay path BS -> ... -> edge node, stored as node ids.
struct RelayPath {
  int hotspot_id = -1;
  std::vector<int> nodes;  // nodes.front() is the BS, nodes.back() the edge node

  int hop_count() const { return static_cast<int>(nodes.size()) - 1; }
};

struct PathPlanStats {
  int attempts = 0;        // frontier restarts after a hop-count mismatch
  long expansions = 0;     // outer-loop iterations across all attempts
};

/// Greedy frontier search for a BS -> edge path with exactly `hop_target`
/// hops. Repeatedly extends the visited set by the globally nearest
/// unvisited relay (ties by lowest id). Reaching the edge node with the
/// wrong hop count permanently disables that final link and restarts the
/// frontier; the search gives up once every link into the edge node is
/// disabled. Returned paths are node-simple with exactly `hop_target` hops.
std::optional<RelayPath> plan_relay_path(const Node& bs, std::span<const Node> relays,
                                         int hop_target, int edge_node_id,
                                         PathPlanStats* stats = nullptr);

}  // namespace mhrc
