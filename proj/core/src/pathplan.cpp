#include "mhrc/pathplan.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mhrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  int from = -1;
  int to = -1;
  double dist = kInf;
};

}  // namespace

std::optional<RelayPath> plan_relay_path(const Node& bs, std::span<const Node> relays,
                                         int hop_target, int edge_node_id,
                                         PathPlanStats* stats) {
  if (hop_target < 1) {
    throw std::invalid_argument("hop target must be at least 1");
  }
  const Node* edge = nullptr;
  for (const Node& r : relays) {
    if (r.id == edge_node_id) edge = &r;
  }
  if (edge == nullptr) {
    throw std::invalid_argument("edge node is not in the relay set");
  }

  std::unordered_map<int, Point> pos;
  pos.reserve(relays.size() + 1);
  pos[bs.id] = bs.pos;
  for (const Node& r : relays) pos[r.id] = r.pos;

  // Links into the edge node disabled by failed attempts. They stay
  // disabled across restarts within this call.
  std::unordered_set<int> disabled_from;

  auto edge_reachable = [&] {
    if (!disabled_from.contains(bs.id)) return true;
    for (const Node& r : relays) {
      if (r.id != edge_node_id && !disabled_from.contains(r.id)) return true;
    }
    return false;
  };

  PathPlanStats local;
  while (edge_reachable()) {
    ++local.attempts;
    // One frontier attempt. parent/depth describe the tree of paths grown
    // from the BS; unvisited holds the remaining relays including the edge.
    std::unordered_map<int, int> parent;
    std::unordered_map<int, int> depth;
    std::vector<int> visited{bs.id};
    std::vector<int> unvisited;
    unvisited.reserve(relays.size());
    for (const Node& r : relays) unvisited.push_back(r.id);
    depth[bs.id] = 0;

    bool restart = false;
    while (!restart) {
      ++local.expansions;
      Candidate best;
      for (int i : visited) {
        const Point pi = pos[i];
        for (int v : unvisited) {
          if (v == edge_node_id && disabled_from.contains(i)) continue;
          const double d = distance(pi, pos[v]);
          if (d < best.dist ||
              (d == best.dist && (v < best.to || (v == best.to && i < best.from)))) {
            best = {i, v, d};
          }
        }
      }
      if (best.to == -1 || best.dist == kInf) {
        // No extension exists: every remaining candidate link is disabled.
        if (stats != nullptr) *stats = local;
        return std::nullopt;
      }

      if (best.to == edge_node_id) {
        const int hops = depth[best.from] + 1;
        if (hops == hop_target) {
          RelayPath path;
          path.nodes.resize(static_cast<std::size_t>(hops) + 1);
          path.nodes.back() = edge_node_id;
          int cur = best.from;
          for (int j = hops - 1; j >= 0; --j) {
            path.nodes[static_cast<std::size_t>(j)] = cur;
            if (j > 0) cur = parent.at(cur);
          }
          if (stats != nullptr) *stats = local;
          return path;
        }
        // Wrong hop count: disable this final link and restart the frontier.
        disabled_from.insert(best.from);
        restart = true;
        continue;
      }

      parent[best.to] = best.from;
      depth[best.to] = depth[best.from] + 1;
      visited.push_back(best.to);
      unvisited.erase(std::find(unvisited.begin(), unvisited.end(), best.to));
    }
  }
  if (stats != nullptr) *stats = local;
  return std::nullopt;
}

}  // namespace mhrc
