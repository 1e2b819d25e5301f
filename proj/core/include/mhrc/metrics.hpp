#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mhrc/scheduler.hpp"

namespace mhrc {

struct HotspotOutcomeRow {
  int hotspot_id = -1;
  double pass_prob = 0.0;
  int stay_slots = 0;
  double target_bits = 0.0;     // D''
  double cached_bits = 0.0;     // D'
  double delivered_bits = 0.0;  // D
};

struct CacheOutcome {
  std::string scheme;
  std::vector<HotspotOutcomeRow> rows;
  double expected_cached_bits = 0.0;
  double energy_mj = 0.0;
  double efficiency_bits_per_mj = 0.0;
};

enum class EnergyModel { CachingPlusDelivery, CachingOnly };

/// Actual cached bits per hotspot: every scheduled link's factual rate is
/// recomputed per slot against its true concurrent set, hop amounts are
/// summed over the recorded active slots, and the path minimum is taken.
/// Throws std::logic_error when a recorded active slot does not contain its
/// hop's link.
std::unordered_map<int, double> data_update(const Schedule& schedule,
                                            const Scenario& planning);

/// Delivery cap R(edge -> user) * tau * Delta for one hotspot, evaluated at
/// the TRUE hotspot center; the edge node is the one planning chose.
double delivery_cap_bits(const Scenario& planning, const Scenario& truth,
                         const HotspotStats& stats, int hotspot_id);

/// D_u = min(D'_u, delivery cap).
std::unordered_map<int, double> delivered_data(
    const std::unordered_map<int, double>& cached, const HotspotStats& stats,
    const Scenario& planning, const Scenario& truth);

/// E(sum D_u) = sum f(u) * D_u, exact by linearity of expectation.
double expected_cached(const std::unordered_map<int, double>& delivered,
                       const HotspotStats& stats);

struct EnergyReport {
  double energy_mj = 0.0;
  double efficiency_bits_per_mj = 0.0;
};

/// Caching energy charges Pt per transmitting link per slot; expected
/// delivery energy charges f(u) * Pt * tau_u per hotspot that delivers
/// data. Pass a null schedule for schemes without a caching phase.
EnergyReport energy_and_efficiency(const Schedule* schedule,
                                   const std::unordered_map<int, double>& delivered,
                                   const HotspotStats& stats, const RadioParams& radio,
                                   EnergyModel model);

struct ConstraintCheck {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct P1Report {
  std::vector<ConstraintCheck> checks;

  bool ok() const;
  std::string summary() const;
};

/// Independent feasibility checker for a schedule and its outcomes:
/// half-duplex adjacency per slot, per-receiver aggregate interference
/// below sigma * Pt, per-path hop-precedence prefix dominance, the
/// delivery cap and the per-hop cached-amount cap. Interference and rates
/// are re-derived from raw geometry; the per-hop slot records are first
/// cross-validated against the slot sets.
P1Report verify_p1(const Schedule& schedule,
                   const std::unordered_map<int, double>& delivered,
                   const HotspotStats& stats, const Scenario& planning,
                   const Scenario& truth);

/// Shared evaluation pipeline: data update, delivery, objective and energy.
CacheOutcome evaluate_schedule(std::string scheme, const Schedule& schedule,
                               const Scenario& planning, const Scenario& truth,
                               const HotspotStats& stats, EnergyModel model);

}  // namespace mhrc
