#include "mhrc/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhrc/radio.hpp"

namespace mhrc {

void ScheduleConfig::validate() const {
  if (total_slots < 1) throw std::invalid_argument("total_slots must be >= 1");
  if (interference_threshold < 0.0)
    throw std::invalid_argument("interference threshold must be >= 0");
  if (shrink_beta <= 0.0 || shrink_beta >= 1.0)
    throw std::invalid_argument("shrink beta must be in (0, 1)");
  if (max_hops < 1) throw std::invalid_argument("max_hops must be >= 1");
}

const HotspotSchedule* Schedule::find(int hotspot_id) const {
  for (const HotspotSchedule& h : hotspots) {
    if (h.hotspot_id == hotspot_id) return &h;
  }
  return nullptr;
}

long Schedule::link_slot_count() const {
  long total = 0;
  for (const auto& slot : slots) total += static_cast<long>(slot.size());
  return total;
}

InterferenceCache::InterferenceCache(const Scenario& scenario)
    : radio_(scenario.radio), antenna_(scenario.antenna) {
  int max_id = scenario.bs.id;
  for (const Node& r : scenario.relays) max_id = std::max(max_id, r.id);
  positions_.assign(static_cast<std::size_t>(max_id) + 1, Point{});
  positions_[static_cast<std::size_t>(scenario.bs.id)] = scenario.bs.pos;
  for (const Node& r : scenario.relays) {
    positions_[static_cast<std::size_t>(r.id)] = r.pos;
  }
}

namespace {

std::uint64_t pack_pair(const Link& a, const Link& b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint16_t>(a.tx)) << 48) |
         (static_cast<std::uint64_t>(static_cast<std::uint16_t>(a.rx)) << 32) |
         (static_cast<std::uint64_t>(static_cast<std::uint16_t>(b.tx)) << 16) |
         static_cast<std::uint64_t>(static_cast<std::uint16_t>(b.rx));
}

std::uint32_t pack_link(const Link& l) {
  return (static_cast<std::uint32_t>(static_cast<std::uint16_t>(l.tx)) << 16) |
         static_cast<std::uint32_t>(static_cast<std::uint16_t>(l.rx));
}

}  // namespace

double InterferenceCache::interference_mw(const Link& interferer, const Link& victim) {
  const std::uint64_t key = pack_pair(interferer, victim);
  auto it = pair_cache_.find(key);
  if (it != pair_cache_.end()) return it->second;
  const PointLink a{position(interferer.tx), position(interferer.rx)};
  const PointLink b{position(victim.tx), position(victim.rx)};
  const double value = interference_power_mw(a, b, radio_, antenna_);
  pair_cache_.emplace(key, value);
  return value;
}

double InterferenceCache::signal_mw(const Link& link) {
  const std::uint32_t key = pack_link(link);
  auto it = signal_cache_.find(key);
  if (it != signal_cache_.end()) return it->second;
  const Point tx = position(link.tx);
  const Point rx = position(link.rx);
  const double value = received_power_mw(tx, rx, rx, tx, radio_, antenna_);
  signal_cache_.emplace(key, value);
  return value;
}

double InterferenceCache::factual_rate_bps(const Link& link,
                                           std::span<const Link> slot_links) {
  double denom = radio_.noise_power_mw();
  for (const Link& other : slot_links) {
    if (other == link) continue;
    denom += interference_mw(other, link);
  }
  return rate_from_sinr(signal_mw(link) / denom, radio_);
}

bool can_add_link(const Link& candidate, std::span<const Link> slot_links,
                  double sigma, InterferenceCache& cache) {
  for (const Link& member : slot_links) {
    if (candidate.shares_node(member)) return false;
  }
  if (slot_links.empty()) return true;

  const double limit = sigma * cache.radio().tx_power_mw;
  // Receiver-side sums over the would-be slot set, candidate included.
  auto interference_at = [&](const Link& victim) {
    double total = 0.0;
    for (const Link& other : slot_links) {
      if (other == victim) continue;
      total += cache.interference_mw(other, victim);
    }
    if (!(victim == candidate)) total += cache.interference_mw(candidate, victim);
    return total;
  };
  for (const Link& member : slot_links) {
    if (interference_at(member) >= limit) return false;
  }
  return interference_at(candidate) < limit;
}

bool can_add_link(const Link& candidate, std::span<const Link> slot_links,
                  double sigma, const Scenario& scenario) {
  InterferenceCache cache(scenario);
  return can_add_link(candidate, slot_links, sigma, cache);
}

double aligned_rate_bps(const Scenario& scenario, Point a, Point b) {
  const double d = std::max(distance(a, b), 1.0);
  return noise_limited_rate_bps(d, scenario.radio, scenario.antenna);
}

double edge_user_rate_bps(const Scenario& scenario, const Hotspot& hotspot) {
  const Point edge = scenario.position(hotspot.edge_node);
  return aligned_rate_bps(scenario, edge, hotspot.center);
}

namespace {

struct PackResult {
  bool ok = false;
  std::vector<std::vector<int>> hop_slots;
  std::unordered_map<int, std::vector<Link>> overlay;
};

/// Packs every hop of `path` into slots. Hop h starts right after hop h-1
/// finished (hop 1 right after the previous hotspot's first hop). Slots in
/// contention are skipped at the cost of one unit of the budget `r`.
PackResult pack_path(const RelayPath& path, const std::vector<long>& needed_slots,
                     double r_budget, int first_hop_start,
                     const std::vector<std::vector<Link>>& committed,
                     double sigma, InterferenceCache& cache, int total_slots) {
  PackResult result;
  result.hop_slots.resize(static_cast<std::size_t>(path.hop_count()));
  double r = r_budget;
  int prev_hop_end = -1;

  for (int h = 0; h < path.hop_count(); ++h) {
    const Link link{path.nodes[static_cast<std::size_t>(h)],
                    path.nodes[static_cast<std::size_t>(h) + 1]};
    const long needed = needed_slots[static_cast<std::size_t>(h)];
    int k = (h == 0) ? first_hop_start : prev_hop_end + 1;
    long done = 0;
    auto& slots_of_hop = result.hop_slots[static_cast<std::size_t>(h)];
    slots_of_hop.reserve(static_cast<std::size_t>(needed));
    while (k < total_slots && done < needed && r >= 0.0) {
      auto it = result.overlay.find(k);
      const std::vector<Link>& current =
          (it != result.overlay.end()) ? it->second
                                       : committed[static_cast<std::size_t>(k)];
      if (can_add_link(link, current, sigma, cache)) {
        std::vector<Link> updated = current;
        updated.push_back(link);
        result.overlay[k] = std::move(updated);
        slots_of_hop.push_back(k);
        ++done;
      } else {
        r -= 1.0;
      }
      ++k;
    }
    if (done < needed || r < 0.0) {
      return {};  // hop failed; caller retries with fewer hops
    }
    prev_hop_end = slots_of_hop.back();
  }
  result.ok = true;
  return result;
}

}  // namespace

Schedule schedule_caching(const Scenario& planning, const HotspotStats& stats,
                          const ScheduleConfig& config) {
  config.validate();
  planning.radio.validate();

  Schedule schedule;
  schedule.config = config;
  schedule.slots.assign(static_cast<std::size_t>(config.total_slots), {});

  InterferenceCache cache(planning);
  const double delta = planning.radio.slot_duration_s;
  const double sigma = config.interference_threshold;

  // Decreasing pass probability, ties by lowest hotspot id; f = 0 or
  // tau = 0 never get scheduled.
  std::vector<const Hotspot*> order;
  for (const Hotspot& h : planning.hotspots) {
    const HotspotStat* st = stats.find(h.id);
    if (st == nullptr) {
      throw std::invalid_argument("stats missing hotspot " + std::to_string(h.id));
    }
    if (st->pass_prob > 0.0 && st->stay_slots > 0) {
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

  int prev_first_hop_end = -1;  // k of the previously committed hotspot's hop 1

  for (const Hotspot* hotspot : order) {
    const HotspotStat* st = stats.find(hotspot->id);
    const double initial_target =
        edge_user_rate_bps(planning, *hotspot) * st->stay_slots * delta;
    double target = initial_target;

    HotspotSchedule entry;
    entry.hotspot_id = hotspot->id;
    entry.initial_target_bits = initial_target;
    bool committed = false;

    while (!committed && target > 0.0) {
      for (int hops = config.max_hops; hops >= 1 && !committed; --hops) {
        auto path = plan_relay_path(planning.bs, planning.relays, hops,
                                    hotspot->edge_node, nullptr);
        if (!path) continue;

        std::vector<double> wc_rate(static_cast<std::size_t>(hops));
        for (int h = 0; h < hops; ++h) {
          const PointLink pl{cache.position(path->nodes[static_cast<std::size_t>(h)]),
                             cache.position(path->nodes[static_cast<std::size_t>(h) + 1])};
          wc_rate[static_cast<std::size_t>(h)] =
              worst_case_rate_bps(pl, sigma, planning.radio, planning.antenna);
        }

        double slot_sum = 0.0;
        for (double r : wc_rate) slot_sum += target / (r * delta);
        const double r_budget =
            config.total_slots - slot_sum - (prev_first_hop_end + 1);
        if (r_budget < 0.0) continue;

        std::vector<long> needed(static_cast<std::size_t>(hops));
        for (int h = 0; h < hops; ++h) {
          needed[static_cast<std::size_t>(h)] = static_cast<long>(
              std::ceil(target / (wc_rate[static_cast<std::size_t>(h)] * delta)));
        }

        PackResult packed = pack_path(*path, needed, r_budget, prev_first_hop_end + 1,
                                      schedule.slots, sigma, cache, config.total_slots);
        if (!packed.ok) continue;

        for (auto& [k, links] : packed.overlay) {
          schedule.slots[static_cast<std::size_t>(k)] = std::move(links);
        }
        path->hotspot_id = hotspot->id;
        entry.path = std::move(*path);
        entry.target_bits = target;
        entry.hop_slots = std::move(packed.hop_slots);
        entry.outcome = HotspotOutcome::Committed;
        prev_first_hop_end = entry.hop_slots.front().back();
        committed = true;
      }
      if (!committed) {
        target = std::floor(target * config.shrink_beta);
      }
    }
    if (!committed) {
      entry.target_bits = 0.0;
      entry.outcome = HotspotOutcome::Abandoned;
    }
    schedule.hotspots.push_back(std::move(entry));
  }
  return schedule;
}

}  // namespace mhrc
