#pragma once

#include "mhrc/metrics.hpp"

namespace mhrc {

/// Direct BS -> user transmission while the user stays at the hotspot; no
/// caching phase, so the energy is the expected delivery energy only.
CacheOutcome run_unicast(const Scenario& truth, const HotspotStats& stats);

struct BaselineResult {
  Schedule schedule;
  CacheOutcome outcome;
};

/// Single-hop caching: hotspots in decreasing pass probability each get a
/// direct BS -> edge link over consecutive slots. The BS is half-duplex, so
/// no two links ever share a slot and every link runs noise-limited; slot
/// budgeting therefore uses the noise-limited rate. On slot exhaustion the
/// target shrinks by beta (default) or the tail is truncated at slot K.
BaselineResult run_cachuni(const Scenario& planning, const Scenario& truth,
                           const HotspotStats& stats, const ScheduleConfig& config,
                           EnergyModel model);

/// The full MHRC pipeline: schedule, data update, delivery and metrics.
BaselineResult run_mhrc(const Scenario& planning, const Scenario& truth,
                        const HotspotStats& stats, const ScheduleConfig& config,
                        EnergyModel model);

}  // namespace mhrc
