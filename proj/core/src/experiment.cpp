#include "mhrc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <ostream>

#include "mhrc/oracle.hpp"
#include "mhrc/rng.hpp"

namespace mhrc {

namespace {

std::unordered_map<int, double> delivered_from_rows(const CacheOutcome& outcome) {
  std::unordered_map<int, double> delivered;
  for (const HotspotOutcomeRow& row : outcome.rows) {
    delivered[row.hotspot_id] = row.delivered_bits;
  }
  return delivered;
}

void verify_or_throw(const char* scheme, const Schedule& schedule,
                     const CacheOutcome& outcome, const HotspotStats& stats,
                     const Scenario& planning, const Scenario& truth) {
  const P1Report report =
      verify_p1(schedule, delivered_from_rows(outcome), stats, planning, truth);
  if (!report.ok()) {
    throw InvariantViolation(std::string(scheme) +
                             " schedule failed verification:\n" + report.summary());
  }
}

}  // namespace

PreparedScenario prepare_scenario(const SimConfig& config, std::uint64_t seed) {
  PreparedScenario prep;
  const RadioParams radio = config.radio_params();
  const AntennaModel antenna = config.antenna_model();

  if (!config.topology.explicit_hotspots.empty()) {
    prep.truth = generate_scenario(config.topology.region_width_m,
                                   config.topology.region_height_m,
                                   config.topology.relay_count,
                                   config.topology.explicit_hotspots, radio, antenna,
                                   seed);
  } else {
    prep.truth = generate_scenario(config.topology.region_width_m,
                                   config.topology.region_height_m,
                                   config.topology.relay_count,
                                   config.topology.placement, radio, antenna, seed);
  }

  std::vector<Trajectory> trajectories;
  if (config.trajectory_file) {
    trajectories = read_trajectories_csv(*config.trajectory_file);
  } else {
    trajectories = generate_trajectories(prep.truth, config.mobility, seed);
  }
  if (trajectories.empty()) {
    throw ConfigError("no trajectories available for statistics estimation");
  }
  prep.stats = estimate_stats(trajectories, prep.truth.hotspots, radio.slot_duration_s);

  prep.planning = prep.truth;
  if (config.location_error_var_m2 > 0.0) {
    prep.planning.hotspots = perturb_hotspots(prep.truth.hotspots,
                                              config.location_error_var_m2, seed);
    assign_edge_nodes(prep.planning.hotspots, prep.planning.relays);
  }
  return prep;
}

RunResult run_once(const SimConfig& config, std::uint64_t seed) {
  RunResult result;
  result.seed = seed;
  PreparedScenario prep = prepare_scenario(config, seed);
  result.truth = std::move(prep.truth);
  result.planning = std::move(prep.planning);
  result.stats = std::move(prep.stats);

  result.mhrc = run_mhrc(result.planning, result.truth, result.stats,
                         config.schedule, config.energy_model);
  result.cachuni = run_cachuni(result.planning, result.truth, result.stats,
                               config.schedule, config.energy_model);
  result.unicast = run_unicast(result.truth, result.stats);

  verify_or_throw("mhrc", result.mhrc.schedule, result.mhrc.outcome, result.stats,
                  result.planning, result.truth);
  verify_or_throw("cachuni", result.cachuni.schedule, result.cachuni.outcome,
                  result.stats, result.planning, result.truth);
  return result;
}

namespace {

void write_outcome_rows(std::ostream& out, std::uint64_t seed,
                        const CacheOutcome& outcome) {
  out << outcome.scheme << ',' << seed << ",summary,,,,,,,"
      << format_double(outcome.expected_cached_bits) << ','
      << format_double(outcome.energy_mj) << ','
      << format_double(outcome.efficiency_bits_per_mj) << '\n';
  for (const HotspotOutcomeRow& row : outcome.rows) {
    out << outcome.scheme << ',' << seed << ",hotspot," << row.hotspot_id << ','
        << format_double(row.pass_prob) << ',' << row.stay_slots << ','
        << format_double(row.target_bits) << ',' << format_double(row.cached_bits)
        << ',' << format_double(row.delivered_bits) << ",,,\n";
  }
}

}  // namespace

void write_results_csv(std::ostream& out, std::span<const RunResult> results) {
  out << "scheme,seed,record,hotspot_id,pass_prob,stay_slots,target_bits,"
         "cached_bits,delivered_bits,expected_cached_bits,energy_mj,"
         "efficiency_bits_per_mj\n";
  for (const RunResult& r : results) {
    write_outcome_rows(out, r.seed, r.mhrc.outcome);
    write_outcome_rows(out, r.seed, r.cachuni.outcome);
    write_outcome_rows(out, r.seed, r.unicast);
  }
}

std::optional<SweepAxis> parse_axis(const std::string& name) {
  if (name == "beta") return SweepAxis::Beta;
  if (name == "hm") return SweepAxis::Hm;
  if (name == "pt") return SweepAxis::Pt;
  if (name == "relays") return SweepAxis::Relays;
  if (name == "theta") return SweepAxis::Theta;
  if (name == "sigma") return SweepAxis::Sigma;
  if (name == "k") return SweepAxis::K;
  if (name == "err_var") return SweepAxis::ErrVar;
  return std::nullopt;
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Beta: return "beta";
    case SweepAxis::Hm: return "hm";
    case SweepAxis::Pt: return "pt";
    case SweepAxis::Relays: return "relays";
    case SweepAxis::Theta: return "theta";
    case SweepAxis::Sigma: return "sigma";
    case SweepAxis::K: return "k";
    case SweepAxis::ErrVar: return "err_var";
  }
  return "unknown";
}

SimConfig apply_axis(SimConfig config, SweepAxis axis, double value) {
  switch (axis) {
    case SweepAxis::Beta:
      config.schedule.shrink_beta = value;
      break;
    case SweepAxis::Hm:
      config.schedule.max_hops = static_cast<int>(std::lround(value));
      break;
    case SweepAxis::Pt:
      config.tx_power_mw = value;
      break;
    case SweepAxis::Relays:
      config.topology.relay_count = static_cast<int>(std::lround(value));
      break;
    case SweepAxis::Theta:
      config.halfpower_beamwidth_deg = value;
      break;
    case SweepAxis::Sigma:
      config.schedule.interference_threshold = value;
      break;
    case SweepAxis::K:
      config.schedule.total_slots = static_cast<int>(std::lround(value));
      break;
    case SweepAxis::ErrVar:
      config.location_error_var_m2 = value;
      break;
  }
  return config;
}

std::vector<SweepPoint> run_sweep(const SimConfig& config, SweepAxis axis,
                                  std::span<const double> values,
                                  std::span<const std::uint64_t> seeds, int threads) {
  if (values.empty()) throw ConfigError("sweep needs at least one axis value");
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
  threads = std::max(1, threads);

  struct PointKey {
    std::size_t value_index;
    std::size_t seed_index;
  };
  std::vector<PointKey> work;
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (std::size_t s = 0; s < seeds.size(); ++s) work.push_back({v, s});
  }

  std::vector<RunResult> results(work.size());
  std::size_t next = 0;
  while (next < work.size()) {
    const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                                    work.size() - next);
    std::vector<std::future<RunResult>> futures;
    futures.reserve(batch);
    for (std::size_t i = 0; i < batch; ++i) {
      const PointKey key = work[next + i];
      futures.push_back(std::async(std::launch::async, [&, key] {
        const SimConfig point = apply_axis(config, axis, values[key.value_index]);
        return run_once(point, seeds[key.seed_index]);
      }));
    }
    for (std::size_t i = 0; i < batch; ++i) {
      results[next + i] = futures[i].get();
    }
    next += batch;
  }

  std::vector<SweepPoint> points;
  const char* schemes[] = {"mhrc", "cachuni", "unicast"};
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (const char* scheme : schemes) {
      SweepPoint p;
      p.axis = axis;
      p.value = values[v];
      p.scheme = scheme;
      p.seed_count = static_cast<int>(seeds.size());
      std::vector<double> eds;
      double energy_sum = 0.0, eff_sum = 0.0;
      for (std::size_t s = 0; s < seeds.size(); ++s) {
        const RunResult& r = results[v * seeds.size() + s];
        const CacheOutcome& o = (std::string(scheme) == "mhrc")      ? r.mhrc.outcome
                                : (std::string(scheme) == "cachuni") ? r.cachuni.outcome
                                                                     : r.unicast;
        eds.push_back(o.expected_cached_bits);
        energy_sum += o.energy_mj;
        eff_sum += o.efficiency_bits_per_mj;
      }
      double mean = 0.0;
      for (double e : eds) mean += e;
      mean /= static_cast<double>(eds.size());
      double var = 0.0;
      for (double e : eds) var += (e - mean) * (e - mean);
      p.mean_expected_bits = mean;
      p.std_expected_bits =
          eds.size() > 1 ? std::sqrt(var / static_cast<double>(eds.size() - 1)) : 0.0;
      p.mean_energy_mj = energy_sum / static_cast<double>(eds.size());
      p.mean_efficiency = eff_sum / static_cast<double>(eds.size());
      points.push_back(std::move(p));
    }
  }
  return points;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "axis,value,scheme,seeds,mean_expected_cached_bits,"
         "std_expected_cached_bits,mean_energy_mj,mean_efficiency_bits_per_mj\n";
  for (const SweepPoint& p : points) {
    out << axis_name(p.axis) << ',' << format_double(p.value) << ',' << p.scheme
        << ',' << p.seed_count << ',' << format_double(p.mean_expected_bits) << ','
        << format_double(p.std_expected_bits) << ','
        << format_double(p.mean_energy_mj) << ','
        << format_double(p.mean_efficiency) << '\n';
  }
}

std::vector<GapResult> run_oracle_gap(const SimConfig& base, int instances,
                                      std::uint64_t base_seed) {
  if (instances < 1) throw ConfigError("oracle gap needs at least one instance");

  std::vector<GapResult> rows;
  rows.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(i);

    SimConfig tiny = base;
    tiny.topology.region_width_m = 150.0;
    tiny.topology.region_height_m = 150.0;
    tiny.topology.relay_count = 4;
    tiny.topology.explicit_hotspots.clear();
    tiny.topology.placement = HotspotPlacement{2, 10.0, 30.0, 30.0, 15.0};
    tiny.schedule.total_slots = 6;
    tiny.schedule.max_hops = 3;

    const Scenario scenario = generate_scenario(
        tiny.topology.region_width_m, tiny.topology.region_height_m,
        tiny.topology.relay_count, tiny.topology.placement, tiny.radio_params(),
        tiny.antenna_model(), seed);

    RandomStream rng = RandomStream::derive(seed, "oracle-stats");
    HotspotStats stats;
    for (const Hotspot& h : scenario.hotspots) {
      HotspotStat st;
      st.hotspot_id = h.id;
      st.pass_prob = rng.uniform(0.3, 1.0);
      st.stay_slots = static_cast<int>(rng.uniform_int(1, 2));
      stats.per_hotspot.push_back(st);
    }

    const BaselineResult mhrc = run_mhrc(scenario, scenario, stats, tiny.schedule,
                                         tiny.energy_model);
    const OracleResult oracle = exact_schedule(
        scenario, stats, tiny.schedule.total_slots,
        tiny.schedule.interference_threshold);

    GapResult row;
    row.instance = i;
    row.seed = seed;
    row.mhrc_expected_bits = mhrc.outcome.expected_cached_bits;
    row.oracle_expected_bits = oracle.best_expected_bits;
    rows.push_back(row);
  }
  return rows;
}

void write_gap_csv(std::ostream& out, std::span<const GapResult> rows) {
  out << "instance,seed,mhrc_expected_bits,oracle_expected_bits,gap_ratio\n";
  for (const GapResult& r : rows) {
    const double ratio = r.oracle_expected_bits > 0.0
                             ? r.mhrc_expected_bits / r.oracle_expected_bits
                             : 1.0;
    out << r.instance << ',' << r.seed << ','
        << format_double(r.mhrc_expected_bits) << ','
        << format_double(r.oracle_expected_bits) << ',' << format_double(ratio)
        << '\n';
  }
}

}  // namespace mhrc
