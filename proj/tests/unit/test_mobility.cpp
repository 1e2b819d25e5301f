#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "mhrc/mobility.hpp"
#include "mhrc/rng.hpp"
#include "mhrc/topology.hpp"
#include "helpers.hpp"

using namespace mhrc;

namespace {

// Ten users, all of whom linger at hotspot A; the first three continue to
// hotspot B and dwell 30/60/90 s there. Travel legs are fast enough that
// traversal adds well under half a slot.
std::vector<Trajectory> constructed_trajectories() {
  std::vector<Trajectory> out;
  for (int uid = 0; uid < 10; ++uid) {
    Trajectory t;
    t.user_id = uid;
    t.samples.push_back({0.0, 50.0, 50.0});
    t.samples.push_back({30.0, 50.0, 50.0});
    if (uid < 3) {
      const double dwell = 30.0 * (uid + 1);
      t.samples.push_back({31.0, 200.0, 200.0});
      t.samples.push_back({31.0 + dwell, 200.0, 200.0});
    } else {
      t.samples.push_back({31.0, 120.0, 50.0});
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Hotspot> two_hotspots() {
  return {{0, {50.0, 50.0}, 10.0, -1}, {1, {200.0, 200.0}, 10.0, -1}};
}

}  // namespace

TEST_CASE("estimate_stats on constructed trajectories") {
  const auto trajs = constructed_trajectories();
  const HotspotStats stats = estimate_stats(trajs, two_hotspots(), 1.0);
  REQUIRE(stats.per_hotspot.size() == 2);
  CHECK(stats.find(0)->pass_prob == 1.0);
  CHECK(stats.find(0)->stay_slots == 30);
  CHECK(stats.find(1)->pass_prob == doctest::Approx(0.3));
  CHECK(stats.find(1)->stay_slots == 60);
}

TEST_CASE("estimate_stats input validation") {
  CHECK_THROWS_AS(estimate_stats({}, two_hotspots(), 1.0), std::invalid_argument);
  const auto trajs = constructed_trajectories();
  CHECK_THROWS_AS(estimate_stats(trajs, two_hotspots(), 0.0), std::invalid_argument);
}

TEST_CASE("unvisited hotspot gets f = 0 and tau = 0") {
  const auto trajs = constructed_trajectories();
  std::vector<Hotspot> spots{{7, {280.0, 20.0}, 10.0, -1}};
  const HotspotStats stats = estimate_stats(trajs, spots, 1.0);
  CHECK(stats.find(7)->pass_prob == 0.0);
  CHECK(stats.find(7)->stay_slots == 0);
}

TEST_CASE("grazing the disk boundary counts as a pass") {
  Trajectory t;
  t.user_id = 0;
  t.samples.push_back({0.0, 40.0, 50.0});
  t.samples.push_back({10.0, 60.0, 50.0});
  std::vector<Trajectory> trajs{t};
  // Closest approach is (50, 50), exactly radius 10 from the center.
  std::vector<Hotspot> spots{{0, {50.0, 60.0}, 10.0, -1}};
  const HotspotStats stats = estimate_stats(trajs, spots, 1.0);
  CHECK(stats.find(0)->pass_prob == 1.0);
  CHECK(stats.find(0)->stay_slots == 1);  // zero dwell rounds up to one slot
}

TEST_CASE("estimate_stats is permutation invariant") {
  auto trajs = constructed_trajectories();
  const HotspotStats a = estimate_stats(trajs, two_hotspots(), 1.0);
  std::reverse(trajs.begin(), trajs.end());
  const HotspotStats b = estimate_stats(trajs, two_hotspots(), 1.0);
  REQUIRE(a.per_hotspot.size() == b.per_hotspot.size());
  for (std::size_t i = 0; i < a.per_hotspot.size(); ++i) {
    CHECK(a.per_hotspot[i].pass_prob == b.per_hotspot[i].pass_prob);
    CHECK(a.per_hotspot[i].stay_slots == b.per_hotspot[i].stay_slots);
  }
}

TEST_CASE("pass statistics survive resampling at higher time resolution") {
  auto trajs = constructed_trajectories();
  const HotspotStats before = estimate_stats(trajs, two_hotspots(), 1.0);
  for (Trajectory& t : trajs) {
    std::vector<TrajectorySample> refined;
    for (std::size_t i = 0; i + 1 < t.samples.size(); ++i) {
      const auto& s0 = t.samples[i];
      const auto& s1 = t.samples[i + 1];
      refined.push_back(s0);
      refined.push_back({(s0.t + s1.t) / 2.0, (s0.x + s1.x) / 2.0,
                         (s0.y + s1.y) / 2.0});
    }
    refined.push_back(t.samples.back());
    t.samples = std::move(refined);
  }
  const HotspotStats after = estimate_stats(trajs, two_hotspots(), 1.0);
  for (std::size_t i = 0; i < before.per_hotspot.size(); ++i) {
    CHECK(before.per_hotspot[i].pass_prob == after.per_hotspot[i].pass_prob);
    CHECK(before.per_hotspot[i].stay_slots == after.per_hotspot[i].stay_slots);
  }
}

TEST_CASE("trajectory generator basics") {
  const Scenario s = generate_scenario(300.0, 300.0, 20, HotspotPlacement{},
                                       mhrc::test::table_radio(),
                                       mhrc::test::table_antenna(), 5);
  MobilityConfig cfg;
  cfg.user_count = 0;
  CHECK(generate_trajectories(s, cfg, 1).empty());

  cfg.user_count = 25;
  const auto a = generate_trajectories(s, cfg, 42);
  const auto b = generate_trajectories(s, cfg, 42);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].samples.size() == b[i].samples.size());
    for (std::size_t k = 0; k < a[i].samples.size(); ++k) {
      CHECK(a[i].samples[k].t == b[i].samples[k].t);
      CHECK(a[i].samples[k].x == b[i].samples[k].x);
    }
  }
  for (const Trajectory& t : a) {
    for (std::size_t k = 0; k + 1 < t.samples.size(); ++k) {
      CHECK(t.samples[k].t < t.samples[k + 1].t);
      CHECK(t.samples[k].x >= 0.0);
      CHECK(t.samples[k].x <= 300.0);
    }
  }
}

TEST_CASE("generated dwell times match the configured distribution") {
  const Scenario s = generate_scenario(300.0, 300.0, 20, HotspotPlacement{},
                                       mhrc::test::table_radio(),
                                       mhrc::test::table_antenna(), 5);
  MobilityConfig cfg;
  cfg.user_count = 1000;
  cfg.dwell_mean_s = 600.0;
  cfg.dwell_std_s = 120.0;
  const auto trajs = generate_trajectories(s, cfg, 77);

  // Stationary sample pairs are exactly the generator's dwell draws.
  double sum = 0.0;
  long count = 0;
  for (const Trajectory& t : trajs) {
    for (std::size_t i = 0; i + 1 < t.samples.size(); ++i) {
      if (t.samples[i].x == t.samples[i + 1].x &&
          t.samples[i].y == t.samples[i + 1].y) {
        sum += t.samples[i + 1].t - t.samples[i].t;
        ++count;
      }
    }
  }
  REQUIRE(count > 1000);
  const double mean = sum / static_cast<double>(count);
  const double se = cfg.dwell_std_s / std::sqrt(static_cast<double>(count));
  CHECK(std::abs(mean - cfg.dwell_mean_s) <= 3.0 * se);
}

TEST_CASE("hotspot perturbation") {
  const std::vector<Hotspot> spots = two_hotspots();

  SUBCASE("zero variance is the identity") {
    const auto out = perturb_hotspots(spots, 0.0, 9);
    REQUIRE(out.size() == spots.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out[i].center == spots[i].center);
      CHECK(out[i].radius == spots[i].radius);
    }
  }

  SUBCASE("deterministic per seed") {
    const auto a = perturb_hotspots(spots, 25.0, 4);
    const auto b = perturb_hotspots(spots, 25.0, 4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].center == b[i].center);
    const auto c = perturb_hotspots(spots, 25.0, 5);
    CHECK(a[0].center != c[0].center);
  }

  SUBCASE("empirical variance matches the parameter") {
    const double variance = 100.0;
    std::vector<Hotspot> many(10000, spots[0]);
    const auto out = perturb_hotspots(many, variance, 11);
    double mean = 0.0;
    for (const Hotspot& h : out) mean += h.center.x - spots[0].center.x;
    mean /= static_cast<double>(out.size());
    double var = 0.0;
    for (const Hotspot& h : out) {
      const double d = h.center.x - spots[0].center.x - mean;
      var += d * d;
    }
    var /= static_cast<double>(out.size() - 1);
    CHECK(var == doctest::Approx(variance).epsilon(0.05));
  }

  SUBCASE("negative variance is rejected") {
    CHECK_THROWS_AS(perturb_hotspots(spots, -1.0, 1), std::invalid_argument);
  }
}

TEST_CASE("trajectory CSV round trip and validation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mhrc_mobility_test";
  fs::create_directories(dir);
  const fs::path file = dir / "traj.csv";

  const auto trajs = constructed_trajectories();
  write_trajectories_csv(file, trajs);
  const auto back = read_trajectories_csv(file);
  REQUIRE(back.size() == trajs.size());
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    REQUIRE(back[i].samples.size() == trajs[i].samples.size());
    for (std::size_t k = 0; k < trajs[i].samples.size(); ++k) {
      CHECK(back[i].samples[k].t == trajs[i].samples[k].t);
      CHECK(back[i].samples[k].x == trajs[i].samples[k].x);
      CHECK(back[i].samples[k].y == trajs[i].samples[k].y);
    }
  }

  CHECK_THROWS_AS(read_trajectories_csv(dir / "missing.csv"), std::runtime_error);

  {
    std::ofstream bad(dir / "bad_header.csv");
    bad << "time,x,y\n0,1,2\n";
  }
  CHECK_THROWS_AS(read_trajectories_csv(dir / "bad_header.csv"), std::runtime_error);

  {
    std::ofstream bad(dir / "bad_time.csv");
    bad << "user_id,t,x,y\n0,5,1,1\n0,5,2,2\n";
  }
  CHECK_THROWS_AS(read_trajectories_csv(dir / "bad_time.csv"), std::runtime_error);

  {
    std::ofstream bad(dir / "bad_row.csv");
    bad << "user_id,t,x,y\n0,abc,1\n";
  }
  CHECK_THROWS_AS(read_trajectories_csv(dir / "bad_row.csv"), std::runtime_error);
}
