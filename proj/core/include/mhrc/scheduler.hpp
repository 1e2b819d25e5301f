#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "mhrc/mobility.hpp"
#include "mhrc/pathplan.hpp"
#include "mhrc/topology.hpp"

namespace mhrc {

/// Directed link between node ids.
struct Link {
  int tx = -1;
  int rx = -1;

  friend bool operator==(const Link&, const Link&) = default;

  bool shares_node(const Link& other) const {
    return tx == other.tx || tx == other.rx || rx == other.tx || rx == other.rx;
  }
};

struct ScheduleConfig {
  int total_slots = 5400;               // K
  double interference_threshold = 1e-10;  // sigma
  double shrink_beta = 0.9;
  int max_hops = 8;                     // H_m
  bool cachuni_truncate = false;

  void validate() const;
};

enum class HotspotOutcome {
  Committed,  // transmissions scheduled (target possibly shrunk)
  Truncated,  // CachUni truncation mode: partial tail assignment
  Abandoned,  // target shrank to zero before any commitment
  Skipped,    // f = 0 or tau = 0; never considered
};

struct HotspotSchedule {
  int hotspot_id = -1;
  RelayPath path;
  double initial_target_bits = 0.0;  // D'' before any shrinking
  double target_bits = 0.0;          // committed D''
  /// Active slots per hop, ascending, aligned with the path's hops.
  std::vector<std::vector<int>> hop_slots;
  HotspotOutcome outcome = HotspotOutcome::Skipped;

  bool committed() const {
    return outcome == HotspotOutcome::Committed || outcome == HotspotOutcome::Truncated;
  }
};

struct Schedule {
  ScheduleConfig config;
  std::vector<std::vector<Link>> slots;  // V^k for k in [0, K)
  std::vector<HotspotSchedule> hotspots;

  const HotspotSchedule* find(int hotspot_id) const;
  /// Total scheduled link-slots, sum of |V^k|.
  long link_slot_count() const;
};

/// Memoizes pairwise link interference; geometry is immutable per scenario.
class InterferenceCache {
 public:
  explicit InterferenceCache(const Scenario& scenario);

  Point position(int node_id) const { return positions_.at(static_cast<std::size_t>(node_id)); }
  /// Interference power (mW) the interferer induces at the victim receiver.
  double interference_mw(const Link& interferer, const Link& victim);
  /// Received power (mW) of a boresight-aligned link.
  double signal_mw(const Link& link);
  /// Factual rate of `link` given the other members of its slot.
  double factual_rate_bps(const Link& link, std::span<const Link> slot_links);

  const RadioParams& radio() const { return radio_; }
  const AntennaModel& antenna() const { return antenna_; }

 private:
  std::vector<Point> positions_;
  RadioParams radio_;
  AntennaModel antenna_;
  std::unordered_map<std::uint64_t, double> pair_cache_;
  std::unordered_map<std::uint32_t, double> signal_cache_;
};

/// Concurrent-transmission test: the candidate may join the slot iff it is
/// node-disjoint from every member and, with it included, every member
/// receiver's aggregate interference stays below sigma * Pt. An empty slot
/// always admits the candidate.
bool can_add_link(const Link& candidate, std::span<const Link> slot_links,
                  double sigma, InterferenceCache& cache);

bool can_add_link(const Link& candidate, std::span<const Link> slot_links,
                  double sigma, const Scenario& scenario);

/// Noise-limited edge-to-user rate used to size a hotspot's cache target;
/// distance is measured to the hotspot center with a 1 m far-field floor.
double edge_user_rate_bps(const Scenario& scenario, const Hotspot& hotspot);

/// Aligned noise-limited rate between two points (1 m distance floor).
double aligned_rate_bps(const Scenario& scenario, Point a, Point b);

/// The MHRC caching scheduler. Hotspots are served in decreasing pass
/// probability. Each one starts from the full cache target
/// D'' = R(edge->user) * tau * Delta and the maximum hop count, planning a
/// relay path and packing each hop's worst-case-rate slot demand
/// sequentially under the concurrency condition. Failures fall back to
/// fewer hops, then to a beta-shrunk target, until the hotspot commits or
/// the target reaches zero.
Schedule schedule_caching(const Scenario& planning, const HotspotStats& stats,
                          const ScheduleConfig& config);

}  // namespace mhrc
