#include "mhrc/io.hpp"

#include <charconv>
#include <fstream>

namespace mhrc {

namespace {

using nlohmann::json;

template <typename T>
void maybe_get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RadioParams SimConfig::radio_params() const {
  RadioParams p = RadioParams::with_carrier(carrier_hz);
  p.bandwidth_hz = bandwidth_hz;
  p.noise_density_mw_per_hz = noise_density_from_dbm_per_mhz(noise_dbm_per_mhz);
  p.pathloss_exponent = pathloss_exponent;
  p.tx_power_mw = tx_power_mw;
  p.mui_factor_rho = mui_factor_rho;
  p.transceiver_efficiency = transceiver_efficiency;
  p.slot_duration_s = slot_duration_s;
  p.validate();
  return p;
}

AntennaModel SimConfig::antenna_model() const {
  return AntennaModel::from_beamwidth(halfpower_beamwidth_deg);
}

SimConfig config_from_json(const json& j) {
  SimConfig c;
  if (j.contains("radio")) {
    const json& r = j.at("radio");
    maybe_get(r, "bandwidth_hz", c.bandwidth_hz);
    maybe_get(r, "noise_dbm_per_mhz", c.noise_dbm_per_mhz);
    maybe_get(r, "pathloss_exponent", c.pathloss_exponent);
    maybe_get(r, "tx_power_mw", c.tx_power_mw);
    maybe_get(r, "mui_factor_rho", c.mui_factor_rho);
    maybe_get(r, "carrier_hz", c.carrier_hz);
    maybe_get(r, "transceiver_efficiency", c.transceiver_efficiency);
    maybe_get(r, "slot_duration_s", c.slot_duration_s);
  }
  if (j.contains("antenna")) {
    maybe_get(j.at("antenna"), "halfpower_beamwidth_deg", c.halfpower_beamwidth_deg);
  }
  if (j.contains("topology")) {
    const json& t = j.at("topology");
    maybe_get(t, "region_width_m", c.topology.region_width_m);
    maybe_get(t, "region_height_m", c.topology.region_height_m);
    maybe_get(t, "relay_count", c.topology.relay_count);
    maybe_get(t, "hotspot_count", c.topology.placement.count);
    maybe_get(t, "hotspot_radius_m", c.topology.placement.radius_m);
    maybe_get(t, "hotspot_min_bs_distance_m", c.topology.placement.min_bs_distance_m);
    maybe_get(t, "hotspot_min_separation_m", c.topology.placement.min_separation_m);
    maybe_get(t, "hotspot_edge_margin_m", c.topology.placement.edge_margin_m);
    if (t.contains("hotspots")) {
      for (const json& h : t.at("hotspots")) {
        Hotspot spot;
        spot.id = h.at("id").get<int>();
        spot.center = {h.at("cx").get<double>(), h.at("cy").get<double>()};
        maybe_get(h, "radius_m", spot.radius);
        c.topology.explicit_hotspots.push_back(spot);
      }
    }
  }
  if (j.contains("mobility")) {
    const json& m = j.at("mobility");
    maybe_get(m, "user_count", c.mobility.user_count);
    maybe_get(m, "speed_mps", c.mobility.speed_mps);
    maybe_get(m, "dwell_mean_s", c.mobility.dwell_mean_s);
    maybe_get(m, "dwell_std_s", c.mobility.dwell_std_s);
    if (m.contains("visit_probs")) {
      c.mobility.visit_probs = m.at("visit_probs").get<std::vector<double>>();
    }
    if (m.contains("trajectory_file") && !m.at("trajectory_file").is_null()) {
      c.trajectory_file = m.at("trajectory_file").get<std::string>();
    }
  }
  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    maybe_get(s, "total_slots", c.schedule.total_slots);
    maybe_get(s, "interference_threshold", c.schedule.interference_threshold);
    maybe_get(s, "shrink_beta", c.schedule.shrink_beta);
    maybe_get(s, "max_hops", c.schedule.max_hops);
    maybe_get(s, "cachuni_truncate", c.schedule.cachuni_truncate);
  }
  if (j.contains("metrics")) {
    std::string model = "caching_plus_delivery";
    maybe_get(j.at("metrics"), "energy_model", model);
    if (model == "caching_plus_delivery") {
      c.energy_model = EnergyModel::CachingPlusDelivery;
    } else if (model == "caching_only") {
      c.energy_model = EnergyModel::CachingOnly;
    } else {
      throw ConfigError("unknown energy model: " + model);
    }
  }
  if (j.contains("error")) {
    maybe_get(j.at("error"), "location_error_var_m2", c.location_error_var_m2);
  }

  try {
    c.radio_params();
    c.antenna_model();
    c.schedule.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  if (c.topology.relay_count < 1) throw ConfigError("relay_count must be >= 1");
  if (c.location_error_var_m2 < 0.0) {
    throw ConfigError("location_error_var_m2 must be >= 0");
  }
  return c;
}

json config_to_json(const SimConfig& c) {
  json j;
  j["radio"] = {{"bandwidth_hz", c.bandwidth_hz},
                {"noise_dbm_per_mhz", c.noise_dbm_per_mhz},
                {"pathloss_exponent", c.pathloss_exponent},
                {"tx_power_mw", c.tx_power_mw},
                {"mui_factor_rho", c.mui_factor_rho},
                {"carrier_hz", c.carrier_hz},
                {"transceiver_efficiency", c.transceiver_efficiency},
                {"slot_duration_s", c.slot_duration_s}};
  j["antenna"] = {{"halfpower_beamwidth_deg", c.halfpower_beamwidth_deg}};
  j["topology"] = {{"region_width_m", c.topology.region_width_m},
                   {"region_height_m", c.topology.region_height_m},
                   {"relay_count", c.topology.relay_count},
                   {"hotspot_count", c.topology.placement.count},
                   {"hotspot_radius_m", c.topology.placement.radius_m},
                   {"hotspot_min_bs_distance_m", c.topology.placement.min_bs_distance_m},
                   {"hotspot_min_separation_m", c.topology.placement.min_separation_m},
                   {"hotspot_edge_margin_m", c.topology.placement.edge_margin_m}};
  if (!c.topology.explicit_hotspots.empty()) {
    json spots = json::array();
    for (const Hotspot& h : c.topology.explicit_hotspots) {
      spots.push_back({{"id", h.id}, {"cx", h.center.x}, {"cy", h.center.y},
                       {"radius_m", h.radius}});
    }
    j["topology"]["hotspots"] = std::move(spots);
  }
  j["mobility"] = {{"user_count", c.mobility.user_count},
                   {"speed_mps", c.mobility.speed_mps},
                   {"dwell_mean_s", c.mobility.dwell_mean_s},
                   {"dwell_std_s", c.mobility.dwell_std_s},
                   {"visit_probs", c.mobility.visit_probs}};
  if (c.trajectory_file) j["mobility"]["trajectory_file"] = *c.trajectory_file;
  j["schedule"] = {{"total_slots", c.schedule.total_slots},
                   {"interference_threshold", c.schedule.interference_threshold},
                   {"shrink_beta", c.schedule.shrink_beta},
                   {"max_hops", c.schedule.max_hops},
                   {"cachuni_truncate", c.schedule.cachuni_truncate}};
  j["metrics"] = {{"energy_model", c.energy_model == EnergyModel::CachingOnly
                                       ? "caching_only"
                                       : "caching_plus_delivery"}};
  j["error"] = {{"location_error_var_m2", c.location_error_var_m2}};
  return j;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  try {
    return config_from_json(j);
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError("config schema error: " + std::string(e.what()));
  }
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["region"] = {{"width_m", s.region_width_m}, {"height_m", s.region_height_m}};
  j["bs"] = {{"id", s.bs.id}, {"x", s.bs.pos.x}, {"y", s.bs.pos.y}};
  json relays = json::array();
  for (const Node& r : s.relays) {
    relays.push_back({{"id", r.id}, {"x", r.pos.x}, {"y", r.pos.y}});
  }
  j["relays"] = std::move(relays);
  json spots = json::array();
  for (const Hotspot& h : s.hotspots) {
    spots.push_back({{"id", h.id}, {"cx", h.center.x}, {"cy", h.center.y},
                     {"radius_m", h.radius}, {"edge_node", h.edge_node}});
  }
  j["hotspots"] = std::move(spots);
  j["radio"] = {{"bandwidth_hz", s.radio.bandwidth_hz},
                {"noise_density_mw_per_hz", s.radio.noise_density_mw_per_hz},
                {"pathloss_exponent", s.radio.pathloss_exponent},
                {"tx_power_mw", s.radio.tx_power_mw},
                {"mui_factor_rho", s.radio.mui_factor_rho},
                {"k0", s.radio.k0},
                {"transceiver_efficiency", s.radio.transceiver_efficiency},
                {"slot_duration_s", s.radio.slot_duration_s}};
  j["antenna"] = {{"halfpower_beamwidth_deg", s.antenna.halfpower_beamwidth_deg},
                  {"main_lobe_deg", s.antenna.main_lobe_deg},
                  {"max_gain_db", s.antenna.max_gain_db},
                  {"side_lobe_gain_db", s.antenna.side_lobe_gain_db}};
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.region_width_m = j.at("region").at("width_m").get<double>();
  s.region_height_m = j.at("region").at("height_m").get<double>();
  s.bs = Node{j.at("bs").at("id").get<int>(), NodeKind::BaseStation,
              {j.at("bs").at("x").get<double>(), j.at("bs").at("y").get<double>()}};
  for (const json& r : j.at("relays")) {
    s.relays.push_back(Node{r.at("id").get<int>(), NodeKind::Relay,
                            {r.at("x").get<double>(), r.at("y").get<double>()}});
  }
  for (const json& h : j.at("hotspots")) {
    s.hotspots.push_back(Hotspot{h.at("id").get<int>(),
                                 {h.at("cx").get<double>(), h.at("cy").get<double>()},
                                 h.at("radius_m").get<double>(),
                                 h.at("edge_node").get<int>()});
  }
  const json& r = j.at("radio");
  s.radio.bandwidth_hz = r.at("bandwidth_hz").get<double>();
  s.radio.noise_density_mw_per_hz = r.at("noise_density_mw_per_hz").get<double>();
  s.radio.pathloss_exponent = r.at("pathloss_exponent").get<double>();
  s.radio.tx_power_mw = r.at("tx_power_mw").get<double>();
  s.radio.mui_factor_rho = r.at("mui_factor_rho").get<double>();
  s.radio.k0 = r.at("k0").get<double>();
  s.radio.transceiver_efficiency = r.at("transceiver_efficiency").get<double>();
  s.radio.slot_duration_s = r.at("slot_duration_s").get<double>();
  const json& a = j.at("antenna");
  s.antenna.halfpower_beamwidth_deg = a.at("halfpower_beamwidth_deg").get<double>();
  s.antenna.main_lobe_deg = a.at("main_lobe_deg").get<double>();
  s.antenna.max_gain_db = a.at("max_gain_db").get<double>();
  s.antenna.side_lobe_gain_db = a.at("side_lobe_gain_db").get<double>();
  return s;
}

json stats_to_json(const HotspotStats& stats) {
  json spots = json::array();
  for (const HotspotStat& s : stats.per_hotspot) {
    spots.push_back({{"id", s.hotspot_id}, {"pass_prob", s.pass_prob},
                     {"stay_slots", s.stay_slots}});
  }
  return json{{"hotspots", std::move(spots)}};
}

HotspotStats stats_from_json(const json& j) {
  HotspotStats stats;
  for (const json& s : j.at("hotspots")) {
    stats.per_hotspot.push_back(HotspotStat{s.at("id").get<int>(),
                                            s.at("pass_prob").get<double>(),
                                            s.at("stay_slots").get<int>()});
  }
  return stats;
}

namespace {

const char* outcome_name(HotspotOutcome o) {
  switch (o) {
    case HotspotOutcome::Committed: return "committed";
    case HotspotOutcome::Truncated: return "truncated";
    case HotspotOutcome::Abandoned: return "abandoned";
    case HotspotOutcome::Skipped: return "skipped";
  }
  return "unknown";
}

HotspotOutcome outcome_from_name(const std::string& name) {
  if (name == "committed") return HotspotOutcome::Committed;
  if (name == "truncated") return HotspotOutcome::Truncated;
  if (name == "abandoned") return HotspotOutcome::Abandoned;
  if (name == "skipped") return HotspotOutcome::Skipped;
  throw std::runtime_error("unknown schedule outcome: " + name);
}

}  // namespace

json schedule_to_json(const Schedule& schedule) {
  json j;
  j["total_slots"] = schedule.config.total_slots;
  j["interference_threshold"] = schedule.config.interference_threshold;
  j["shrink_beta"] = schedule.config.shrink_beta;
  j["max_hops"] = schedule.config.max_hops;
  json slots = json::array();
  for (std::size_t k = 0; k < schedule.slots.size(); ++k) {
    if (schedule.slots[k].empty()) continue;
    json links = json::array();
    for (const Link& l : schedule.slots[k]) links.push_back({l.tx, l.rx});
    slots.push_back({{"k", k}, {"links", std::move(links)}});
  }
  j["slots"] = std::move(slots);
  json hotspots = json::array();
  for (const HotspotSchedule& h : schedule.hotspots) {
    json e;
    e["id"] = h.hotspot_id;
    e["outcome"] = outcome_name(h.outcome);
    e["path"] = h.path.nodes;
    e["initial_target_bits"] = h.initial_target_bits;
    e["target_bits"] = h.target_bits;
    e["hop_slots"] = h.hop_slots;
    hotspots.push_back(std::move(e));
  }
  j["hotspots"] = std::move(hotspots);
  return j;
}

Schedule schedule_from_json(const json& j) {
  Schedule s;
  s.config.total_slots = j.at("total_slots").get<int>();
  s.config.interference_threshold = j.at("interference_threshold").get<double>();
  if (j.contains("shrink_beta")) s.config.shrink_beta = j.at("shrink_beta").get<double>();
  if (j.contains("max_hops")) s.config.max_hops = j.at("max_hops").get<int>();
  s.slots.assign(static_cast<std::size_t>(s.config.total_slots), {});
  for (const json& slot : j.at("slots")) {
    const auto k = slot.at("k").get<std::size_t>();
    for (const json& l : slot.at("links")) {
      s.slots.at(k).push_back(Link{l.at(0).get<int>(), l.at(1).get<int>()});
    }
  }
  for (const json& e : j.at("hotspots")) {
    HotspotSchedule h;
    h.hotspot_id = e.at("id").get<int>();
    h.outcome = outcome_from_name(e.at("outcome").get<std::string>());
    h.path.hotspot_id = h.hotspot_id;
    h.path.nodes = e.at("path").get<std::vector<int>>();
    h.initial_target_bits = e.at("initial_target_bits").get<double>();
    h.target_bits = e.at("target_bits").get<double>();
    h.hop_slots = e.at("hop_slots").get<std::vector<std::vector<int>>>();
    s.hotspots.push_back(std::move(h));
  }
  return s;
}

namespace {

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f << j.dump(2) << '\n';
}

json load_json(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path.string());
  json j;
  f >> j;
  return j;
}

}  // namespace

void save_scenario(const std::filesystem::path& path, const Scenario& scenario) {
  save_json(path, scenario_to_json(scenario));
}
Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(load_json(path));
}
void save_stats(const std::filesystem::path& path, const HotspotStats& stats) {
  save_json(path, stats_to_json(stats));
}
HotspotStats load_stats(const std::filesystem::path& path) {
  return stats_from_json(load_json(path));
}
void save_schedule(const std::filesystem::path& path, const Schedule& schedule) {
  save_json(path, schedule_to_json(schedule));
}
Schedule load_schedule(const std::filesystem::path& path) {
  return schedule_from_json(load_json(path));
}

std::string format_double(double value) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

}  // namespace mhrc
