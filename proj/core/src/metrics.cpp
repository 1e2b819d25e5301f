#include "mhrc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mhrc/radio.hpp"

namespace mhrc {

namespace {

constexpr double kRelTol = 1e-9;

bool within_cap(double value, double cap) {
  return value <= cap * (1.0 + kRelTol) + 1e-6;
}

}  // namespace

std::unordered_map<int, double> data_update(const Schedule& schedule,
                                            const Scenario& planning) {
  InterferenceCache cache(planning);
  const double delta = planning.radio.slot_duration_s;

  std::unordered_map<int, double> cached;
  for (const HotspotSchedule& hs : schedule.hotspots) {
    if (!hs.committed()) {
      cached[hs.hotspot_id] = 0.0;
      continue;
    }
    double min_hop_bits = std::numeric_limits<double>::infinity();
    for (int h = 0; h < hs.path.hop_count(); ++h) {
      const Link link{hs.path.nodes[static_cast<std::size_t>(h)],
                      hs.path.nodes[static_cast<std::size_t>(h) + 1]};
      double bits = 0.0;
      for (int k : hs.hop_slots[static_cast<std::size_t>(h)]) {
        const auto& slot = schedule.slots[static_cast<std::size_t>(k)];
        if (std::find(slot.begin(), slot.end(), link) == slot.end()) {
          throw std::logic_error("schedule invariant violation: hop slot " +
                                 std::to_string(k) + " does not carry its link");
        }
        bits += cache.factual_rate_bps(link, slot) * delta;
      }
      min_hop_bits = std::min(min_hop_bits, bits);
    }
    cached[hs.hotspot_id] = hs.path.hop_count() > 0 ? min_hop_bits : 0.0;
  }
  return cached;
}

double delivery_cap_bits(const Scenario& planning, const Scenario& truth,
                         const HotspotStats& stats, int hotspot_id) {
  const HotspotStat* st = stats.find(hotspot_id);
  if (st == nullptr) return 0.0;
  const Hotspot& planned = planning.hotspot(hotspot_id);
  const Hotspot& real = truth.hotspot(hotspot_id);
  const Point edge = truth.position(planned.edge_node);
  const double rate = aligned_rate_bps(truth, edge, real.center);
  return rate * st->stay_slots * truth.radio.slot_duration_s;
}

std::unordered_map<int, double> delivered_data(
    const std::unordered_map<int, double>& cached, const HotspotStats& stats,
    const Scenario& planning, const Scenario& truth) {
  std::unordered_map<int, double> out;
  for (const Hotspot& h : truth.hotspots) {
    const auto it = cached.find(h.id);
    const double dp = (it != cached.end()) ? it->second : 0.0;
    out[h.id] = std::min(dp, delivery_cap_bits(planning, truth, stats, h.id));
  }
  return out;
}

double expected_cached(const std::unordered_map<int, double>& delivered,
                       const HotspotStats& stats) {
  double total = 0.0;
  for (const HotspotStat& st : stats.per_hotspot) {
    const auto it = delivered.find(st.hotspot_id);
    if (it != delivered.end()) total += st.pass_prob * it->second;
  }
  return total;
}

EnergyReport energy_and_efficiency(const Schedule* schedule,
                                   const std::unordered_map<int, double>& delivered,
                                   const HotspotStats& stats, const RadioParams& radio,
                                   EnergyModel model) {
  EnergyReport report;
  const double pt_delta = radio.tx_power_mw * radio.slot_duration_s;
  if (schedule != nullptr) {
    report.energy_mj += pt_delta * static_cast<double>(schedule->link_slot_count());
  }
  if (model == EnergyModel::CachingPlusDelivery || schedule == nullptr) {
    for (const HotspotStat& st : stats.per_hotspot) {
      const auto it = delivered.find(st.hotspot_id);
      if (it != delivered.end() && it->second > 0.0) {
        report.energy_mj += st.pass_prob * pt_delta * st.stay_slots;
      }
    }
  }
  const double ed = expected_cached(delivered, stats);
  report.efficiency_bits_per_mj = (report.energy_mj > 0.0) ? ed / report.energy_mj : 0.0;
  return report;
}

bool P1Report::ok() const {
  for (const ConstraintCheck& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string P1Report::summary() const {
  std::ostringstream out;
  for (const ConstraintCheck& c : checks) {
    out << c.name << ": " << (c.pass ? "pass" : "FAIL");
    if (!c.pass) out << " (" << c.witness << ")";
    out << '\n';
  }
  return out.str();
}

P1Report verify_p1(const Schedule& schedule,
                   const std::unordered_map<int, double>& delivered,
                   const HotspotStats& stats, const Scenario& planning,
                   const Scenario& truth) {
  P1Report report;
  InterferenceCache cache(planning);
  const double delta = planning.radio.slot_duration_s;
  const double sigma = schedule.config.interference_threshold;
  const double limit = sigma * planning.radio.tx_power_mw;

  // Constraint (half-duplex adjacency): no two links in a slot share a node.
  {
    ConstraintCheck check{"adjacency", true, ""};
    for (std::size_t k = 0; k < schedule.slots.size() && check.pass; ++k) {
      const auto& slot = schedule.slots[k];
      for (std::size_t i = 0; i < slot.size() && check.pass; ++i) {
        for (std::size_t j = i + 1; j < slot.size(); ++j) {
          if (slot[i].shares_node(slot[j])) {
            std::ostringstream w;
            w << "slot " << k << ": links (" << slot[i].tx << "," << slot[i].rx
              << ") and (" << slot[j].tx << "," << slot[j].rx << ") share a node";
            check = {"adjacency", false, w.str()};
            break;
          }
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Concurrency condition: per-receiver aggregate interference below the
  // threshold in every slot with at least two members.
  {
    ConstraintCheck check{"concurrency", true, ""};
    for (std::size_t k = 0; k < schedule.slots.size() && check.pass; ++k) {
      const auto& slot = schedule.slots[k];
      if (slot.size() < 2) continue;
      for (const Link& victim : slot) {
        double total = 0.0;
        for (const Link& other : slot) {
          // Node-sharing pairs are invalid and reported by the adjacency
          // check; the interference sum is defined for disjoint links only.
          if (other == victim || other.shares_node(victim)) continue;
          total += cache.interference_mw(other, victim);
        }
        if (total >= limit) {
          std::ostringstream w;
          w << "slot " << k << ": receiver " << victim.rx << " suffers " << total
            << " mW, threshold " << limit << " mW";
          check = {"concurrency", false, w.str()};
          break;
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Recorded hop slots must appear in the slot sets; hop-precedence prefix
  // dominance is then checked per path over those records.
  {
    ConstraintCheck consistency{"slot-consistency", true, ""};
    ConstraintCheck precedence{"hop-precedence", true, ""};
    for (const HotspotSchedule& hs : schedule.hotspots) {
      if (!hs.committed()) continue;
      for (int h = 0; h < hs.path.hop_count() && consistency.pass; ++h) {
        const Link link{hs.path.nodes[static_cast<std::size_t>(h)],
                        hs.path.nodes[static_cast<std::size_t>(h) + 1]};
        for (int k : hs.hop_slots[static_cast<std::size_t>(h)]) {
          if (k < 0 || k >= static_cast<int>(schedule.slots.size())) {
            consistency = {"slot-consistency", false,
                           "hotspot " + std::to_string(hs.hotspot_id) +
                               ": slot index out of range"};
            break;
          }
          const auto& slot = schedule.slots[static_cast<std::size_t>(k)];
          if (std::find(slot.begin(), slot.end(), link) == slot.end()) {
            consistency = {"slot-consistency", false,
                           "hotspot " + std::to_string(hs.hotspot_id) + " hop " +
                               std::to_string(h + 1) + " not present in slot " +
                               std::to_string(k)};
            break;
          }
        }
      }
      for (int h = 1; h < hs.path.hop_count() && precedence.pass; ++h) {
        const auto& prev = hs.hop_slots[static_cast<std::size_t>(h) - 1];
        const auto& cur = hs.hop_slots[static_cast<std::size_t>(h)];
        // A hop may transmit only after the preceding hop finished.
        const bool ok = cur.empty() || (!prev.empty() && cur.front() > prev.back());
        if (!ok) {
          std::ostringstream w;
          w << "hotspot " << hs.hotspot_id << ": hop " << h + 1
            << " starts before hop " << h << " completes";
          precedence = {"hop-precedence", false, w.str()};
        }
      }
    }
    report.checks.push_back(std::move(consistency));
    report.checks.push_back(std::move(precedence));
  }

  // Delivery cap and per-hop cached-amount cap.
  {
    ConstraintCheck cap_check{"delivery-cap", true, ""};
    ConstraintCheck hop_check{"per-hop-cap", true, ""};
    for (const Hotspot& h : truth.hotspots) {
      const auto it = delivered.find(h.id);
      const double d = (it != delivered.end()) ? it->second : 0.0;
      const double cap = delivery_cap_bits(planning, truth, stats, h.id);
      if (!within_cap(d, cap)) {
        std::ostringstream w;
        w << "hotspot " << h.id << ": delivered " << d << " exceeds cap " << cap;
        cap_check = {"delivery-cap", false, w.str()};
      }
      const HotspotSchedule* hs = schedule.find(h.id);
      if (hs == nullptr || !hs->committed()) {
        if (d > 1e-6) {
          hop_check = {"per-hop-cap", false,
                       "hotspot " + std::to_string(h.id) + " delivers without a path"};
        }
        continue;
      }
      for (int hop = 0; hop < hs->path.hop_count(); ++hop) {
        const Link link{hs->path.nodes[static_cast<std::size_t>(hop)],
                        hs->path.nodes[static_cast<std::size_t>(hop) + 1]};
        double bits = 0.0;
        for (int k : hs->hop_slots[static_cast<std::size_t>(hop)]) {
          if (k < 0 || k >= static_cast<int>(schedule.slots.size())) continue;
          bits += cache.factual_rate_bps(link, schedule.slots[static_cast<std::size_t>(k)]) *
                  delta;
        }
        if (!within_cap(d, bits)) {
          std::ostringstream w;
          w << "hotspot " << h.id << ": delivered " << d << " exceeds hop "
            << hop + 1 << " amount " << bits;
          hop_check = {"per-hop-cap", false, w.str()};
        }
      }
    }
    report.checks.push_back(std::move(cap_check));
    report.checks.push_back(std::move(hop_check));
  }

  return report;
}

CacheOutcome evaluate_schedule(std::string scheme, const Schedule& schedule,
                               const Scenario& planning, const Scenario& truth,
                               const HotspotStats& stats, EnergyModel model) {
  CacheOutcome outcome;
  outcome.scheme = std::move(scheme);
  const auto cached = data_update(schedule, planning);
  const auto delivered = delivered_data(cached, stats, planning, truth);
  outcome.expected_cached_bits = expected_cached(delivered, stats);
  const EnergyReport energy =
      energy_and_efficiency(&schedule, delivered, stats, truth.radio, model);
  outcome.energy_mj = energy.energy_mj;
  outcome.efficiency_bits_per_mj = energy.efficiency_bits_per_mj;
  for (const Hotspot& h : truth.hotspots) {
    HotspotOutcomeRow row;
    row.hotspot_id = h.id;
    if (const HotspotStat* st = stats.find(h.id)) {
      row.pass_prob = st->pass_prob;
      row.stay_slots = st->stay_slots;
    }
    if (const HotspotSchedule* hs = schedule.find(h.id)) {
      row.target_bits = hs->target_bits;
    }
    if (auto it = cached.find(h.id); it != cached.end()) row.cached_bits = it->second;
    if (auto it = delivered.find(h.id); it != delivered.end()) {
      row.delivered_bits = it->second;
    }
    outcome.rows.push_back(row);
  }
  return outcome;
}

}  // namespace mhrc
