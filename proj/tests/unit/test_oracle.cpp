#include <doctest.h>

#include <cmath>

#include "mhrc/baselines.hpp"
#include "mhrc/experiment.hpp"
#include "mhrc/oracle.hpp"
#include "mhrc/rng.hpp"
#include "helpers.hpp"

using namespace mhrc;
using mhrc::test::make_scenario;
using mhrc::test::make_stats;

TEST_CASE("trivial instance schedules the only link") {
  Scenario s = make_scenario({0.0, 0.0}, {{40.0, 0.0}},
                             {{0, {42.0, 0.0}, 5.0, -1}}, 150.0);
  const HotspotStats stats = make_stats({{0, 0.8, 1}});
  const OracleResult r = exact_schedule(s, stats, 1, 1e-10);

  const double cap = delivery_cap_bits(s, s, stats, 0);
  const double link_bits =
      link_rate_bps({s.bs.pos, s.relays[0].pos}, {}, s.radio, s.antenna);
  CHECK(r.best_expected_bits ==
        doctest::Approx(0.8 * std::min(cap, link_bits)).epsilon(1e-9));
  CHECK(r.best_schedule.slots[0].size() == 1);
}

TEST_CASE("instance bounds are enforced") {
  Scenario big = make_scenario({0.0, 0.0},
                               {{30, 0}, {60, 0}, {90, 0}, {120, 0}, {150, 0}},
                               {{0, {150, 5}, 5.0, -1}}, 200.0);
  const HotspotStats stats = make_stats({{0, 0.8, 1}});
  CHECK_THROWS_AS(exact_schedule(big, stats, 4, 1e-10), std::invalid_argument);

  Scenario ok = make_scenario({0.0, 0.0}, {{30, 0}, {60, 0}},
                              {{0, {62, 0}, 5.0, -1}}, 150.0);
  CHECK_THROWS_AS(exact_schedule(ok, stats, 9, 1e-10), std::invalid_argument);

  Scenario crowded = make_scenario({0.0, 0.0}, {{30, 0}, {60, 0}},
                                   {{0, {62, 0}, 5.0, -1},
                                    {1, {30, 5}, 5.0, -1},
                                    {2, {5, 30}, 5.0, -1}},
                                   150.0);
  const HotspotStats three =
      make_stats({{0, 0.8, 1}, {1, 0.7, 1}, {2, 0.6, 1}});
  CHECK_THROWS_AS(exact_schedule(crowded, three, 4, 1e-10), std::invalid_argument);
}

TEST_CASE("oracle output passes the constraint checker") {
  Scenario s = make_scenario({0.0, 0.0}, {{30, 0}, {60, 0}, {30, 30}, {60, 30}},
                             {{0, {62, 2}, 5.0, -1}, {1, {62, 28}, 5.0, -1}},
                             150.0);
  const HotspotStats stats = make_stats({{0, 0.9, 1}, {1, 0.6, 1}});
  const OracleResult r = exact_schedule(s, stats, 5, 1e-10);
  CHECK(r.best_expected_bits > 0.0);

  const auto cached = data_update(r.best_schedule, s);
  const auto delivered = delivered_data(cached, stats, s, s);
  const P1Report report = verify_p1(r.best_schedule, delivered, stats, s, s);
  CHECK(report.ok());
  CHECK(expected_cached(delivered, stats) ==
        doctest::Approx(r.best_expected_bits).epsilon(1e-9));
}

TEST_CASE("optimum is invariant under hotspot relabeling") {
  Scenario s = make_scenario({0.0, 0.0}, {{30, 0}, {60, 0}, {30, 30}, {60, 30}},
                             {{0, {62, 2}, 5.0, -1}, {1, {62, 28}, 5.0, -1}},
                             150.0);
  const HotspotStats stats = make_stats({{0, 0.9, 1}, {1, 0.6, 2}});
  const double base = exact_schedule(s, stats, 4, 1e-10).best_expected_bits;

  Scenario swapped = s;
  swapped.hotspots[0].id = 1;
  swapped.hotspots[1].id = 0;
  const HotspotStats swapped_stats = make_stats({{1, 0.9, 1}, {0, 0.6, 2}});
  const double relabeled =
      exact_schedule(swapped, swapped_stats, 4, 1e-10).best_expected_bits;
  CHECK(base == doctest::Approx(relabeled).epsilon(1e-12));
}

TEST_CASE("oracle dominates the heuristics on toy instances") {
  SimConfig base;
  const auto rows = run_oracle_gap(base, 8, 500);
  REQUIRE(rows.size() == 8);
  for (const auto& row : rows) {
    CHECK(row.mhrc_expected_bits <=
          row.oracle_expected_bits * (1.0 + 1e-9) + 1e-6);
  }
}

TEST_CASE("oracle dominates CachUni and the TDMA degeneration") {
  SimConfig tiny;
  tiny.topology.region_width_m = 150.0;
  tiny.topology.region_height_m = 150.0;
  tiny.topology.relay_count = 4;
  tiny.topology.placement = HotspotPlacement{2, 10.0, 30.0, 30.0, 15.0};
  tiny.schedule.total_slots = 6;
  tiny.schedule.max_hops = 3;

  for (std::uint64_t seed = 30; seed < 34; ++seed) {
    const Scenario s = generate_scenario(
        tiny.topology.region_width_m, tiny.topology.region_height_m,
        tiny.topology.relay_count, tiny.topology.placement, tiny.radio_params(),
        tiny.antenna_model(), seed);
    HotspotStats stats;
    RandomStream rng = RandomStream::derive(seed, "oracle-stats");
    for (const Hotspot& h : s.hotspots) {
      stats.per_hotspot.push_back(HotspotStat{
          h.id, rng.uniform(0.3, 1.0), static_cast<int>(rng.uniform_int(1, 2))});
    }
    const OracleResult oracle =
        exact_schedule(s, stats, tiny.schedule.total_slots,
                       tiny.schedule.interference_threshold);

    const auto cachuni =
        run_cachuni(s, s, stats, tiny.schedule, tiny.energy_model);
    CHECK(cachuni.outcome.expected_cached_bits <=
          oracle.best_expected_bits * (1.0 + 1e-9) + 1e-6);

    ScheduleConfig tdma = tiny.schedule;
    tdma.interference_threshold = 0.0;
    const auto serial = run_mhrc(s, s, stats, tdma, tiny.energy_model);
    CHECK(serial.outcome.expected_cached_bits <=
          oracle.best_expected_bits * (1.0 + 1e-9) + 1e-6);
  }
}
