#include "mhrc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mhrc/radio.hpp"

namespace mhrc {

namespace {

struct EligibleHotspot {
  const Hotspot* hotspot;
  double pass_prob;
  int stay_slots;
  double cap_bits;
  std::vector<std::vector<int>> paths;  // candidate node sequences BS -> edge
};

void enumerate_paths(const Scenario& scenario, int edge_id, int max_hops,
                     std::vector<int>& current, std::vector<bool>& used,
                     std::vector<std::vector<int>>& out) {
  const int last = current.back();
  if (last == edge_id) {
    out.push_back(current);
    return;
  }
  if (static_cast<int>(current.size()) - 1 >= max_hops) return;
  for (const Node& r : scenario.relays) {
    if (used[static_cast<std::size_t>(r.id)]) continue;
    used[static_cast<std::size_t>(r.id)] = true;
    current.push_back(r.id);
    enumerate_paths(scenario, edge_id, max_hops, current, used, out);
    current.pop_back();
    used[static_cast<std::size_t>(r.id)] = false;
  }
}

/// One scheduled transmission opportunity: a specific hop of a specific
/// chosen path. Two activations sharing the same physical link can never
/// share a slot (the link carries one hotspot's content at a time).
struct Activation {
  int path_index;  // index into the chosen-path list
  int hop;         // 0-based hop on that path
  Link link;
};

struct FeasibleSet {
  std::uint32_t mask;
  std::vector<double> bits_per_activation;  // aligned with set bits, ascending
};

struct SearchState {
  const std::vector<Activation>* activations;
  const std::vector<FeasibleSet>* sets;
  std::vector<double> f;                 // per chosen path
  std::vector<double> cap;               // per chosen path
  std::vector<std::vector<double>> nl_bits_per_slot;  // per path, per hop
  int total_slots;
  double best = -1.0;
  std::vector<std::uint32_t> best_masks;
  std::vector<std::uint32_t> current_masks;
  long explored = 0;
};

double evaluate(const SearchState& st, const std::vector<std::vector<double>>& hop_bits) {
  double total = 0.0;
  for (std::size_t p = 0; p < hop_bits.size(); ++p) {
    double d = st.cap[p];
    for (double b : hop_bits[p]) d = std::min(d, b);
    total += st.f[p] * d;
  }
  return total;
}

double optimistic(const SearchState& st, const std::vector<std::vector<double>>& hop_bits,
                  int slots_left) {
  double total = 0.0;
  for (std::size_t p = 0; p < hop_bits.size(); ++p) {
    double d = st.cap[p];
    for (std::size_t h = 0; h < hop_bits[p].size(); ++h) {
      d = std::min(d, hop_bits[p][h] + slots_left * st.nl_bits_per_slot[p][h]);
    }
    total += st.f[p] * d;
  }
  return total;
}

void search(SearchState& st, int slot, std::vector<std::vector<double>>& hop_bits,
            std::vector<std::vector<int>>& hop_counts) {
  ++st.explored;
  if (slot == st.total_slots) {
    const double value = evaluate(st, hop_bits);
    if (value > st.best) {
      st.best = value;
      st.best_masks = st.current_masks;
    }
    return;
  }
  if (optimistic(st, hop_bits, st.total_slots - slot) <= st.best) return;

  for (const FeasibleSet& fs : *st.sets) {
    // Apply the activation set, enforcing hop precedence incrementally: a
    // hop may transmit only while no later hop of its path has started.
    bool ok = true;
    std::size_t bit_index = 0;
    std::uint32_t mask = fs.mask;
    while (mask != 0) {
      const int a = std::countr_zero(mask);
      mask &= mask - 1;
      const Activation& act = (*st.activations)[static_cast<std::size_t>(a)];
      auto& counts = hop_counts[static_cast<std::size_t>(act.path_index)];
      for (std::size_t later = static_cast<std::size_t>(act.hop) + 1;
           later < counts.size(); ++later) {
        if (counts[later] > 0) {
          ok = false;
          break;
        }
      }
      counts[static_cast<std::size_t>(act.hop)] += 1;
      hop_bits[static_cast<std::size_t>(act.path_index)][static_cast<std::size_t>(act.hop)] +=
          fs.bits_per_activation[bit_index];
      ++bit_index;
    }
    if (ok) {
      st.current_masks[static_cast<std::size_t>(slot)] = fs.mask;
      search(st, slot + 1, hop_bits, hop_counts);
    }
    // Roll back.
    bit_index = 0;
    mask = fs.mask;
    while (mask != 0) {
      const int a = std::countr_zero(mask);
      mask &= mask - 1;
      const Activation& act = (*st.activations)[static_cast<std::size_t>(a)];
      hop_counts[static_cast<std::size_t>(act.path_index)][static_cast<std::size_t>(act.hop)] -= 1;
      hop_bits[static_cast<std::size_t>(act.path_index)][static_cast<std::size_t>(act.hop)] -=
          fs.bits_per_activation[bit_index];
      ++bit_index;
    }
  }
}

}  // namespace

OracleResult exact_schedule(const Scenario& scenario, const HotspotStats& stats,
                            int total_slots, double sigma) {
  constexpr int kMaxHotspots = 2;
  constexpr int kMaxRelays = 4;
  constexpr int kMaxSlots = 8;
  constexpr int kMaxPathHops = 3;

  if (static_cast<int>(scenario.relays.size()) > kMaxRelays) {
    throw std::invalid_argument("oracle refused: too many relays");
  }
  if (total_slots < 1 || total_slots > kMaxSlots) {
    throw std::invalid_argument("oracle refused: slot count out of bounds");
  }

  std::vector<EligibleHotspot> eligible;
  for (const Hotspot& h : scenario.hotspots) {
    const HotspotStat* st = stats.find(h.id);
    if (st == nullptr || st->pass_prob <= 0.0 || st->stay_slots <= 0) continue;
    EligibleHotspot e;
    e.hotspot = &h;
    e.pass_prob = st->pass_prob;
    e.stay_slots = st->stay_slots;
    e.cap_bits = delivery_cap_bits(scenario, scenario, stats, h.id);
    std::vector<int> current{scenario.bs.id};
    int max_id = scenario.bs.id;
    for (const Node& r : scenario.relays) max_id = std::max(max_id, r.id);
    std::vector<bool> used(static_cast<std::size_t>(max_id) + 1, false);
    used[static_cast<std::size_t>(scenario.bs.id)] = true;
    enumerate_paths(scenario, h.edge_node, kMaxPathHops, current, used, e.paths);
    eligible.push_back(std::move(e));
  }
  if (static_cast<int>(eligible.size()) > kMaxHotspots) {
    throw std::invalid_argument("oracle refused: too many hotspots");
  }

  InterferenceCache cache(scenario);
  const double delta = scenario.radio.slot_duration_s;
  const double limit = sigma * scenario.radio.tx_power_mw;

  OracleResult result;
  result.best_expected_bits = 0.0;

  // Path choice per hotspot: -1 = not served.
  std::vector<int> choice(eligible.size(), -1);
  std::vector<int> best_choice;
  std::vector<std::uint32_t> best_masks;
  Schedule best_schedule;
  best_schedule.config.total_slots = total_slots;
  best_schedule.config.interference_threshold = sigma;
  best_schedule.slots.assign(static_cast<std::size_t>(total_slots), {});
  double best_value = 0.0;
  long explored_total = 0;

  auto run_combo = [&](const std::vector<int>& combo) {
    std::vector<const std::vector<int>*> chosen;
    std::vector<double> f, cap;
    for (std::size_t i = 0; i < combo.size(); ++i) {
      if (combo[i] < 0) continue;
      chosen.push_back(&eligible[i].paths[static_cast<std::size_t>(combo[i])]);
      f.push_back(eligible[i].pass_prob);
      cap.push_back(eligible[i].cap_bits);
    }
    if (chosen.empty()) return;

    std::vector<Activation> activations;
    for (std::size_t p = 0; p < chosen.size(); ++p) {
      const auto& nodes = *chosen[p];
      for (std::size_t h = 0; h + 1 < nodes.size(); ++h) {
        activations.push_back({static_cast<int>(p), static_cast<int>(h),
                               Link{nodes[h], nodes[h + 1]}});
      }
    }
    const std::size_t n = activations.size();
    if (n > 12) return;  // cannot happen within the instance bounds

    // Feasible activation subsets: pairwise node-disjoint links satisfying
    // the interference condition. Ordered by total bits so promising sets
    // are explored first.
    std::vector<FeasibleSet> sets;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<const Link*> links;
      bool ok = true;
      int path_seen = 0;
      for (std::size_t a = 0; a < n && ok; ++a) {
        if (!(mask & (1u << a))) continue;
        // One activation per path per slot: hop windows never overlap.
        if (path_seen & (1 << activations[a].path_index)) {
          ok = false;
          break;
        }
        path_seen |= 1 << activations[a].path_index;
        for (const Link* l : links) {
          if (activations[a].link.shares_node(*l)) {
            ok = false;
            break;
          }
        }
        if (ok) links.push_back(&activations[a].link);
      }
      if (!ok) continue;
      if (links.size() >= 2) {
        for (const Link* victim : links) {
          double total = 0.0;
          for (const Link* other : links) {
            if (other == victim) continue;
            total += cache.interference_mw(*other, *victim);
          }
          if (total >= limit) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
      }
      FeasibleSet fs;
      fs.mask = mask;
      for (std::size_t a = 0; a < n; ++a) {
        if (!(mask & (1u << a))) continue;
        std::vector<Link> others;
        for (const Link* l : links) {
          if (l != &activations[a].link) others.push_back(*l);
        }
        fs.bits_per_activation.push_back(
            cache.factual_rate_bps(activations[a].link, others) * delta);
      }
      sets.push_back(std::move(fs));
    }
    std::sort(sets.begin(), sets.end(), [](const FeasibleSet& a, const FeasibleSet& b) {
      double sa = 0.0, sb = 0.0;
      for (double v : a.bits_per_activation) sa += v;
      for (double v : b.bits_per_activation) sb += v;
      return sa > sb;
    });

    SearchState st;
    st.activations = &activations;
    st.sets = &sets;
    st.f = f;
    st.cap = cap;
    st.total_slots = total_slots;
    st.best = best_value;
    st.current_masks.assign(static_cast<std::size_t>(total_slots), 0);
    st.nl_bits_per_slot.resize(chosen.size());
    std::vector<std::vector<double>> hop_bits(chosen.size());
    std::vector<std::vector<int>> hop_counts(chosen.size());
    for (std::size_t p = 0; p < chosen.size(); ++p) {
      const std::size_t hops = chosen[p]->size() - 1;
      hop_bits[p].assign(hops, 0.0);
      hop_counts[p].assign(hops, 0);
      st.nl_bits_per_slot[p].resize(hops);
      for (std::size_t h = 0; h < hops; ++h) {
        const Link link{(*chosen[p])[h], (*chosen[p])[h + 1]};
        st.nl_bits_per_slot[p][h] = cache.factual_rate_bps(link, {}) * delta;
      }
    }
    search(st, 0, hop_bits, hop_counts);
    explored_total += st.explored;

    if (st.best > best_value) {
      best_value = st.best;
      best_choice = combo;
      best_masks = st.best_masks;

      // Rebuild the winning schedule.
      Schedule sched;
      sched.config.total_slots = total_slots;
      sched.config.interference_threshold = sigma;
      sched.slots.assign(static_cast<std::size_t>(total_slots), {});
      std::vector<HotspotSchedule> entries(chosen.size());
      for (std::size_t p = 0; p < chosen.size(); ++p) {
        entries[p].path.nodes = *chosen[p];
        entries[p].hop_slots.assign(chosen[p]->size() - 1, {});
        entries[p].outcome = HotspotOutcome::Committed;
      }
      for (int k = 0; k < total_slots; ++k) {
        std::uint32_t mask = best_masks[static_cast<std::size_t>(k)];
        while (mask != 0) {
          const int a = std::countr_zero(mask);
          mask &= mask - 1;
          const Activation& act = activations[static_cast<std::size_t>(a)];
          sched.slots[static_cast<std::size_t>(k)].push_back(act.link);
          entries[static_cast<std::size_t>(act.path_index)]
              .hop_slots[static_cast<std::size_t>(act.hop)]
              .push_back(k);
        }
      }
      std::size_t chosen_index = 0;
      for (std::size_t i = 0; i < eligible.size(); ++i) {
        if (combo[i] < 0) continue;
        HotspotSchedule& e = entries[chosen_index++];
        e.hotspot_id = eligible[i].hotspot->id;
        e.path.hotspot_id = e.hotspot_id;
        // Drop hops that never got a slot only if the whole path is idle.
        bool any = false;
        for (const auto& hs : e.hop_slots) any = any || !hs.empty();
        if (!any) {
          e.outcome = HotspotOutcome::Abandoned;
          e.hop_slots.clear();
          e.path.nodes.clear();
        }
      }
      for (const Hotspot& h : scenario.hotspots) {
        bool present = false;
        for (const HotspotSchedule& e : entries) present = present || e.hotspot_id == h.id;
        if (!present) {
          HotspotSchedule skipped;
          skipped.hotspot_id = h.id;
          skipped.outcome = HotspotOutcome::Abandoned;
          entries.push_back(std::move(skipped));
        }
      }
      sched.hotspots = std::move(entries);
      best_schedule = std::move(sched);
    }
  };

  // All path combinations, including "serve nobody".
  std::vector<int> combo(eligible.size(), -1);
  const auto recurse = [&](auto&& self, std::size_t idx) -> void {
    if (idx == eligible.size()) {
      run_combo(combo);
      return;
    }
    for (int c = -1; c < static_cast<int>(eligible[idx].paths.size()); ++c) {
      combo[idx] = c;
      self(self, idx + 1);
    }
  };
  recurse(recurse, 0);

  result.best_expected_bits = best_value;
  result.best_schedule = std::move(best_schedule);
  result.explored = explored_total;
  if (result.best_schedule.hotspots.empty()) {
    for (const Hotspot& h : scenario.hotspots) {
      HotspotSchedule skipped;
      skipped.hotspot_id = h.id;
      skipped.outcome = HotspotOutcome::Abandoned;
      result.best_schedule.hotspots.push_back(std::move(skipped));
    }
  }
  return result;
}

}  // namespace mhrc
