#pragma once

#include "mhrc/metrics.hpp"

namespace mhrc {

struct OracleResult {
  double best_expected_bits = 0.0;
  Schedule best_schedule;
  long explored = 0;  // search nodes visited
};

/// Exhaustive maximization of the expected delivered data over toy
/// instances: at most 2 eligible hotspots, 4 relays and 8 slots. For every
/// combination of candidate relay paths (all simple BS -> edge paths of at
/// most 3 hops, or none) the solver enumerates per-slot activation sets
/// subject to half-duplex adjacency, the interference threshold and
/// per-path hop precedence, evaluating delivered data with factual
/// per-slot rates and the delivery cap. Branch-and-bound pruning uses
/// noise-limited rates as an optimistic completion.
///
/// Throws std::invalid_argument when the instance exceeds the bounds.
OracleResult exact_schedule(const Scenario& scenario, const HotspotStats& stats,
                            int total_slots, double sigma);

}  // namespace mhrc
