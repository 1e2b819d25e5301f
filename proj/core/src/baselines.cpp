#include "mhrc/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace mhrc {

CacheOutcome run_unicast(const Scenario& truth, const HotspotStats& stats) {
  CacheOutcome outcome;
  outcome.scheme = "unicast";
  std::unordered_map<int, double> delivered;
  for (const Hotspot& h : truth.hotspots) {
    const HotspotStat* st = stats.find(h.id);
    const int tau = (st != nullptr) ? st->stay_slots : 0;
    const double rate = aligned_rate_bps(truth, truth.bs.pos, h.center);
    const double bits = rate * tau * truth.radio.slot_duration_s;
    delivered[h.id] = bits;

    HotspotOutcomeRow row;
    row.hotspot_id = h.id;
    row.pass_prob = (st != nullptr) ? st->pass_prob : 0.0;
    row.stay_slots = tau;
    row.cached_bits = bits;
    row.delivered_bits = bits;
    outcome.rows.push_back(row);
  }
  outcome.expected_cached_bits = expected_cached(delivered, stats);
  const EnergyReport energy = energy_and_efficiency(
      nullptr, delivered, stats, truth.radio, EnergyModel::CachingPlusDelivery);
  outcome.energy_mj = energy.energy_mj;
  outcome.efficiency_bits_per_mj = energy.efficiency_bits_per_mj;
  return outcome;
}

BaselineResult run_cachuni(const Scenario& planning, const Scenario& truth,
                           const HotspotStats& stats, const ScheduleConfig& config,
                           EnergyModel model) {
  config.validate();
  Schedule schedule;
  schedule.config = config;
  schedule.slots.assign(static_cast<std::size_t>(config.total_slots), {});
  const double delta = planning.radio.slot_duration_s;

  std::vector<const Hotspot*> order;
  for (const Hotspot& h : planning.hotspots) {
    const HotspotStat* st = stats.find(h.id);
    if (st != nullptr && st->pass_prob > 0.0 && st->stay_slots > 0) {
      order.push_back(&h);
    } else {
      HotspotSchedule skipped;
      skipped.hotspot_id = h.id;
      skipped.outcome = HotspotOutcome::Skipped;
      schedule.hotspots.push_back(std::move(skipped));
    }
  }
  std::sort(order.begin(), order.end(), [&](const Hotspot* a, const Hotspot* b) {
    const double fa = stats.find(a->id)->pass_prob;
    const double fb = stats.find(b->id)->pass_prob;
    if (fa != fb) return fa > fb;
    return a->id < b->id;
  });

  int last_used = -1;
  for (const Hotspot* hotspot : order) {
    const HotspotStat* st = stats.find(hotspot->id);
    const Point edge_pos = planning.position(hotspot->edge_node);
    const double budget_rate = aligned_rate_bps(planning, planning.bs.pos, edge_pos);
    const double initial_target =
        edge_user_rate_bps(planning, *hotspot) * st->stay_slots * delta;
    double target = initial_target;

    HotspotSchedule entry;
    entry.hotspot_id = hotspot->id;
    entry.initial_target_bits = initial_target;
    entry.path.hotspot_id = hotspot->id;
    entry.path.nodes = {planning.bs.id, hotspot->edge_node};
    const Link link{planning.bs.id, hotspot->edge_node};
    bool placed = false;

    while (!placed && target > 0.0) {
      const long needed = static_cast<long>(std::ceil(target / (budget_rate * delta)));
      const long available = config.total_slots - 1 - last_used;
      if (needed <= available) {
        std::vector<int> used(static_cast<std::size_t>(needed));
        for (long i = 0; i < needed; ++i) {
          const int k = static_cast<int>(last_used + 1 + i);
          schedule.slots[static_cast<std::size_t>(k)].push_back(link);
          used[static_cast<std::size_t>(i)] = k;
        }
        last_used += static_cast<int>(needed);
        entry.target_bits = target;
        entry.hop_slots = {std::move(used)};
        entry.outcome = HotspotOutcome::Committed;
        placed = true;
      } else if (config.cachuni_truncate) {
        if (available <= 0) break;
        std::vector<int> used(static_cast<std::size_t>(available));
        for (long i = 0; i < available; ++i) {
          const int k = static_cast<int>(last_used + 1 + i);
          schedule.slots[static_cast<std::size_t>(k)].push_back(link);
          used[static_cast<std::size_t>(i)] = k;
        }
        last_used = config.total_slots - 1;
        entry.target_bits = target;
        entry.hop_slots = {std::move(used)};
        entry.outcome = HotspotOutcome::Truncated;
        placed = true;
      } else {
        target = std::floor(target * config.shrink_beta);
      }
    }
    if (!placed) {
      entry.target_bits = 0.0;
      entry.outcome = HotspotOutcome::Abandoned;
    }
    schedule.hotspots.push_back(std::move(entry));
  }

  BaselineResult result;
  result.outcome = evaluate_schedule("cachuni", schedule, planning, truth, stats, model);
  result.schedule = std::move(schedule);
  return result;
}

BaselineResult run_mhrc(const Scenario& planning, const Scenario& truth,
                        const HotspotStats& stats, const ScheduleConfig& config,
                        EnergyModel model) {
  BaselineResult result;
  result.schedule = schedule_caching(planning, stats, config);
  result.outcome =
      evaluate_schedule("mhrc", result.schedule, planning, truth, stats, model);
  return result;
}

}  // namespace mhrc
