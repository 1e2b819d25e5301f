#include <doctest.h>

#include <cmath>
#include <limits>

#include "mhrc/rng.hpp"
#include "mhrc/topology.hpp"
#include "helpers.hpp"

using namespace mhrc;

namespace {

HotspotPlacement default_placement() { return HotspotPlacement{}; }

Scenario generate_default(std::uint64_t seed, int relays = 30) {
  return generate_scenario(300.0, 300.0, relays, default_placement(),
                           mhrc::test::table_radio(), mhrc::test::table_antenna(),
                           seed);
}

}  // namespace

TEST_CASE("scenario generation is deterministic per seed") {
  const Scenario a = generate_default(7);
  const Scenario b = generate_default(7);
  REQUIRE(a.relays.size() == b.relays.size());
  for (std::size_t i = 0; i < a.relays.size(); ++i) {
    CHECK(a.relays[i].pos == b.relays[i].pos);
  }
  REQUIRE(a.hotspots.size() == b.hotspots.size());
  for (std::size_t i = 0; i < a.hotspots.size(); ++i) {
    CHECK(a.hotspots[i].center == b.hotspots[i].center);
    CHECK(a.hotspots[i].edge_node == b.hotspots[i].edge_node);
  }
  const Scenario c = generate_default(8);
  CHECK(a.relays[0].pos != c.relays[0].pos);
}

TEST_CASE("BS sits at the region center and relays keep their distance") {
  const Scenario s = generate_default(3);
  CHECK(s.bs.pos == Point{150.0, 150.0});
  CHECK(s.bs.id == 0);
  for (std::size_t i = 0; i < s.relays.size(); ++i) {
    CHECK(distance(s.relays[i].pos, s.bs.pos) >= 1.0);
    for (std::size_t j = i + 1; j < s.relays.size(); ++j) {
      CHECK(distance(s.relays[i].pos, s.relays[j].pos) >= 1.0);
    }
  }
}

TEST_CASE("single relay is everyone's edge node") {
  std::vector<Hotspot> spots{{0, {10.0, 10.0}, 15.0, -1}, {1, {250.0, 250.0}, 15.0, -1}};
  const Scenario s = generate_scenario(300.0, 300.0, 1, spots,
                                       mhrc::test::table_radio(),
                                       mhrc::test::table_antenna(), 1);
  for (const Hotspot& h : s.hotspots) CHECK(h.edge_node == 1);
}

TEST_CASE("nearest relay matches an exhaustive scan") {
  const Scenario s = generate_default(11);
  RandomStream rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Point p{rng.uniform(0.0, 300.0), rng.uniform(0.0, 300.0)};
    const Node& fast = nearest_relay(p, s.relays);
    double best = std::numeric_limits<double>::infinity();
    int best_id = -1;
    for (const Node& r : s.relays) {
      const double d = distance(p, r.pos);
      if (d < best) {
        best = d;
        best_id = r.id;
      }
    }
    CHECK(fast.id == best_id);
  }
}

TEST_CASE("nearest relay tie-break and exact hit") {
  std::vector<Node> relays{{2, NodeKind::Relay, {10.0, 0.0}},
                           {1, NodeKind::Relay, {-10.0, 0.0}}};
  CHECK(nearest_relay({0.0, 0.0}, relays).id == 1);
  CHECK(nearest_relay({10.0, 0.0}, relays).id == 2);
  CHECK_THROWS_AS(nearest_relay({0.0, 0.0}, std::span<const Node>{}),
                  std::invalid_argument);
}

TEST_CASE("edge assignment equals a brute-force scan") {
  const Scenario s = generate_default(23);
  for (const Hotspot& h : s.hotspots) {
    double best = std::numeric_limits<double>::infinity();
    int best_id = -1;
    for (const Node& r : s.relays) {
      const double d = distance(h.center, r.pos);
      if (d < best || (d == best && r.id < best_id)) {
        best = d;
        best_id = r.id;
      }
    }
    CHECK(h.edge_node == best_id);
  }
}

TEST_CASE("generation rejects degenerate input") {
  const auto radio = mhrc::test::table_radio();
  const auto antenna = mhrc::test::table_antenna();
  CHECK_THROWS_AS(generate_scenario(0.0, 300.0, 5, default_placement(), radio,
                                    antenna, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_scenario(300.0, 300.0, 0, default_placement(), radio,
                                    antenna, 1),
                  std::invalid_argument);
  std::vector<Hotspot> outside{{0, {400.0, 10.0}, 15.0, -1}};
  CHECK_THROWS_AS(generate_scenario(300.0, 300.0, 5, outside, radio, antenna, 1),
                  std::invalid_argument);
  std::vector<Hotspot> flat{{0, {10.0, 10.0}, 0.0, -1}};
  CHECK_THROWS_AS(generate_scenario(300.0, 300.0, 5, flat, radio, antenna, 1),
                  std::invalid_argument);
}

TEST_CASE("hotspot placement honors its constraints") {
  const Scenario s = generate_default(31);
  REQUIRE(static_cast<int>(s.hotspots.size()) == 6);
  for (std::size_t i = 0; i < s.hotspots.size(); ++i) {
    const Hotspot& h = s.hotspots[i];
    CHECK(distance(h.center, s.bs.pos) >= default_placement().min_bs_distance_m);
    CHECK(h.radius == default_placement().radius_m);
    for (std::size_t j = i + 1; j < s.hotspots.size(); ++j) {
      CHECK(distance(h.center, s.hotspots[j].center) >=
            default_placement().min_separation_m);
    }
  }
}
