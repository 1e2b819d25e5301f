#include "mhrc/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mhrc/rng.hpp"

namespace mhrc {

const HotspotStat* HotspotStats::find(int hotspot_id) const {
  for (const HotspotStat& s : per_hotspot) {
    if (s.hotspot_id == hotspot_id) return &s;
  }
  return nullptr;
}

namespace {

struct SegmentDwell {
  bool touches = false;
  double inside_s = 0.0;
};

// Time spent inside the closed disk along the segment p0 -> p1 traversed in
// dt seconds, plus whether the segment touches the disk at all.
SegmentDwell segment_dwell(Point p0, Point p1, double dt, Point center, double radius) {
  SegmentDwell out;
  const double dx = p1.x - p0.x;
  const double dy = p1.y - p0.y;
  const double fx = p0.x - center.x;
  const double fy = p0.y - center.y;
  const double a = dx * dx + dy * dy;
  if (a == 0.0) {
    const double d2 = fx * fx + fy * fy;
    if (d2 <= radius * radius) {
      out.touches = true;
      out.inside_s = dt;
    }
    return out;
  }
  // Closest approach decides the pass; the root interval decides the dwell.
  const double b = 2.0 * (fx * dx + fy * dy);
  const double c = fx * fx + fy * fy - radius * radius;
  const double s_star = std::clamp(-b / (2.0 * a), 0.0, 1.0);
  const double cx = fx + s_star * dx;
  const double cy = fy + s_star * dy;
  if (cx * cx + cy * cy <= radius * radius) {
    out.touches = true;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double lo = std::max(0.0, (-b - sq) / (2.0 * a));
    const double hi = std::min(1.0, (-b + sq) / (2.0 * a));
    if (hi > lo) out.inside_s = (hi - lo) * dt;
  }
  return out;
}

}  // namespace

HotspotStats estimate_stats(std::span<const Trajectory> trajectories,
                            std::span<const Hotspot> hotspots,
                            double slot_duration_s) {
  if (trajectories.empty()) {
    throw std::invalid_argument("estimate_stats: no trajectories");
  }
  if (slot_duration_s <= 0.0) {
    throw std::invalid_argument("estimate_stats: slot duration must be positive");
  }

  // Accumulate in user-id order so the result is independent of input order.
  std::vector<const Trajectory*> ordered;
  ordered.reserve(trajectories.size());
  for (const Trajectory& t : trajectories) ordered.push_back(&t);
  std::sort(ordered.begin(), ordered.end(),
            [](const Trajectory* a, const Trajectory* b) { return a->user_id < b->user_id; });

  HotspotStats stats;
  stats.per_hotspot.reserve(hotspots.size());
  for (const Hotspot& h : hotspots) {
    int passers = 0;
    double dwell_sum = 0.0;
    for (const Trajectory* traj : ordered) {
      bool touched = false;
      double dwell = 0.0;
      for (std::size_t i = 0; i + 1 < traj->samples.size(); ++i) {
        const TrajectorySample& s0 = traj->samples[i];
        const TrajectorySample& s1 = traj->samples[i + 1];
        const SegmentDwell d = segment_dwell({s0.x, s0.y}, {s1.x, s1.y},
                                             s1.t - s0.t, h.center, h.radius);
        touched = touched || d.touches;
        dwell += d.inside_s;
      }
      if (traj->samples.size() == 1) {
        const TrajectorySample& s0 = traj->samples.front();
        if (squared_distance({s0.x, s0.y}, h.center) <= h.radius * h.radius) {
          touched = true;
        }
      }
      if (touched) {
        ++passers;
        dwell_sum += dwell;
      }
    }
    HotspotStat st;
    st.hotspot_id = h.id;
    st.pass_prob = static_cast<double>(passers) / static_cast<double>(ordered.size());
    if (passers > 0) {
      const double mean_dwell = dwell_sum / passers;
      st.stay_slots = std::max<int>(1, static_cast<int>(std::lround(mean_dwell / slot_duration_s)));
    } else {
      st.stay_slots = 0;
    }
    stats.per_hotspot.push_back(st);
  }
  return stats;
}

std::vector<Trajectory> generate_trajectories(const Scenario& scenario,
                                              const MobilityConfig& config,
                                              std::uint64_t seed) {
  if (config.user_count < 0) {
    throw std::invalid_argument("user count must be non-negative");
  }
  if (config.speed_mps <= 0.0) {
    throw std::invalid_argument("speed must be positive");
  }
  const double w = scenario.region_width_m;
  const double h = scenario.region_height_m;
  const auto& hotspots = scenario.hotspots;

  std::vector<Trajectory> out;
  out.reserve(static_cast<std::size_t>(config.user_count));
  for (int uid = 0; uid < config.user_count; ++uid) {
    RandomStream rng = RandomStream::derive(seed, "trajectory", static_cast<std::uint64_t>(uid));
    Trajectory traj;
    traj.user_id = uid;

    std::vector<int> visit_order;
    for (std::size_t i = 0; i < hotspots.size(); ++i) {
      const double p = config.visit_probs.empty()
                           ? 0.5
                           : config.visit_probs[i % config.visit_probs.size()];
      if (rng.uniform01() < p) visit_order.push_back(static_cast<int>(i));
    }
    // Fisher-Yates over the chosen subset.
    for (std::size_t i = visit_order.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(visit_order[i - 1], visit_order[j]);
    }

    double t = 0.0;
    Point pos{rng.uniform(0.0, w), rng.uniform(0.0, h)};
    traj.samples.push_back({t, pos.x, pos.y});
    for (int idx : visit_order) {
      const Hotspot& spot = hotspots[static_cast<std::size_t>(idx)];
      // Dwell point strictly inside the disk so the stay is robust to the
      // boundary rule.
      const double ang = rng.uniform(0.0, 2.0 * M_PI);
      const double rad = spot.radius * 0.5 * std::sqrt(rng.uniform01());
      Point target{spot.center.x + rad * std::cos(ang), spot.center.y + rad * std::sin(ang)};
      target.x = std::clamp(target.x, 0.0, w);
      target.y = std::clamp(target.y, 0.0, h);
      const double travel = distance(pos, target) / config.speed_mps;
      if (travel > 0.0) {
        t += travel;
        traj.samples.push_back({t, target.x, target.y});
      }
      double dwell = rng.normal(config.dwell_mean_s, config.dwell_std_s);
      dwell = std::max(dwell, 1.0);
      t += dwell;
      traj.samples.push_back({t, target.x, target.y});
      pos = target;
    }
    Point exit{rng.uniform(0.0, w), rng.uniform(0.0, h)};
    const double travel = distance(pos, exit) / config.speed_mps;
    if (travel > 0.0) {
      t += travel;
      traj.samples.push_back({t, exit.x, exit.y});
    }
    out.push_back(std::move(traj));
  }
  return out;
}

std::vector<Hotspot> perturb_hotspots(std::span<const Hotspot> hotspots,
                                      double variance_m2, std::uint64_t seed) {
  if (variance_m2 < 0.0) {
    throw std::invalid_argument("location error variance must be non-negative");
  }
  std::vector<Hotspot> out(hotspots.begin(), hotspots.end());
  if (variance_m2 == 0.0) return out;
  RandomStream rng = RandomStream::derive(seed, "perturb");
  const double sd = std::sqrt(variance_m2);
  for (Hotspot& h : out) {
    h.center.x += rng.normal(0.0, sd);
    h.center.y += rng.normal(0.0, sd);
  }
  return out;
}

void write_trajectories_csv(const std::filesystem::path& path,
                            std::span<const Trajectory> trajectories) {
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open trajectory file for writing: " + path.string());
  }
  f << "user_id,t,x,y\n";
  char buf[32];
  auto put = [&](double v) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    f.write(buf, end - buf);
  };
  for (const Trajectory& traj : trajectories) {
    for (const TrajectorySample& s : traj.samples) {
      f << traj.user_id << ',';
      put(s.t);
      f << ',';
      put(s.x);
      f << ',';
      put(s.y);
      f << '\n';
    }
  }
}

std::vector<Trajectory> read_trajectories_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open trajectory file: " + path.string());
  }
  std::string line;
  if (!std::getline(f, line)) {
    throw std::runtime_error("trajectory file is empty: " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "user_id,t,x,y") {
    throw std::runtime_error("trajectory file missing 'user_id,t,x,y' header: " + path.string());
  }
  std::map<int, Trajectory> by_user;
  std::size_t line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double vals[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(row, field, ',')) {
        throw std::runtime_error("malformed trajectory row at line " + std::to_string(line_no));
      }
      try {
        vals[i] = std::stod(field);
      } catch (const std::exception&) {
        throw std::runtime_error("malformed trajectory value at line " + std::to_string(line_no));
      }
    }
    const int uid = static_cast<int>(vals[0]);
    Trajectory& traj = by_user[uid];
    traj.user_id = uid;
    if (!traj.samples.empty() && vals[1] <= traj.samples.back().t) {
      throw std::runtime_error("non-increasing timestamp at line " + std::to_string(line_no));
    }
    traj.samples.push_back({vals[1], vals[2], vals[3]});
  }
  std::vector<Trajectory> out;
  out.reserve(by_user.size());
  for (auto& [uid, traj] : by_user) out.push_back(std::move(traj));
  return out;
}

}  // namespace mhrc
