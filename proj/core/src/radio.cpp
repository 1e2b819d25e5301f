#include "mhrc/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace mhrc {

namespace {
constexpr double kSpeedOfLight = 299792458.0;  // m/s
}

RadioParams RadioParams::with_carrier(double carrier_hz) {
  if (carrier_hz <= 0.0) {
    throw std::invalid_argument("carrier frequency must be positive");
  }
  RadioParams p;
  const double lambda = kSpeedOfLight / carrier_hz;
  const double ratio = lambda / (4.0 * M_PI);
  p.k0 = ratio * ratio;
  return p;
}

void RadioParams::validate() const {
  if (bandwidth_hz <= 0.0) throw std::invalid_argument("bandwidth must be positive");
  if (noise_density_mw_per_hz <= 0.0)
    throw std::invalid_argument("noise density must be positive");
  if (pathloss_exponent <= 0.0)
    throw std::invalid_argument("pathloss exponent must be positive");
  if (tx_power_mw <= 0.0) throw std::invalid_argument("tx power must be positive");
  if (mui_factor_rho <= 0.0 || mui_factor_rho > 1.0)
    throw std::invalid_argument("rho must be in (0, 1]");
  if (k0 <= 0.0) throw std::invalid_argument("k0 must be positive");
  if (transceiver_efficiency <= 0.0 || transceiver_efficiency >= 1.0)
    throw std::invalid_argument("transceiver efficiency must be in (0, 1)");
  if (slot_duration_s <= 0.0) throw std::invalid_argument("slot duration must be positive");
}

double noise_density_from_dbm_per_mhz(double dbm_per_mhz) {
  return std::pow(10.0, dbm_per_mhz / 10.0) / 1.0e6;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

AntennaModel AntennaModel::from_beamwidth(double halfpower_beamwidth_deg) {
  if (halfpower_beamwidth_deg <= 0.0 || halfpower_beamwidth_deg > 180.0) {
    throw std::invalid_argument("half-power beamwidth must be in (0, 180] degrees");
  }
  AntennaModel m;
  m.halfpower_beamwidth_deg = halfpower_beamwidth_deg;
  m.main_lobe_deg = 2.6 * halfpower_beamwidth_deg;
  const double s = 1.6162 / std::sin(halfpower_beamwidth_deg / 2.0 * M_PI / 180.0);
  m.max_gain_db = 10.0 * std::log10(s * s);
  m.side_lobe_gain_db = -0.4111 * std::log(halfpower_beamwidth_deg) - 10.579;
  return m;
}

double antenna_gain_db(double theta_deg, const AntennaModel& model) {
  if (theta_deg < 0.0 || theta_deg > 180.0) {
    throw std::domain_error("antenna angle must be in [0, 180] degrees");
  }
  if (theta_deg <= model.main_lobe_deg / 2.0) {
    const double r = 2.0 * theta_deg / model.halfpower_beamwidth_deg;
    return model.max_gain_db - 3.01 * r * r;
  }
  return model.side_lobe_gain_db;
}

double received_power_mw(double gain_tx_linear, double gain_rx_linear,
                         double distance_m, const RadioParams& params) {
  if (distance_m <= 0.0) {
    throw std::domain_error("link distance must be positive");
  }
  return params.k0 * gain_tx_linear * gain_rx_linear *
         std::pow(distance_m, -params.pathloss_exponent) * params.tx_power_mw;
}

double received_power_mw(Point tx, Point rx, Point tx_boresight, Point rx_boresight,
                         const RadioParams& params, const AntennaModel& antenna) {
  if (tx == rx) {
    throw std::domain_error("transmitter and receiver coincide");
  }
  const double gt = db_to_linear(antenna_gain_db(angle_between_deg(tx, tx_boresight, rx), antenna));
  const double gr = db_to_linear(antenna_gain_db(angle_between_deg(rx, rx_boresight, tx), antenna));
  return received_power_mw(gt, gr, distance(tx, rx), params);
}

double interference_power_mw(const PointLink& interferer, const PointLink& victim,
                             const RadioParams& params, const AntennaModel& antenna) {
  if (interferer.tx == victim.rx) {
    throw std::domain_error("interferer transmitter coincides with victim receiver");
  }
  // Interferer steers at its own receiver, victim receiver at its own sender.
  return params.mui_factor_rho *
         received_power_mw(interferer.tx, victim.rx, interferer.rx, victim.tx,
                           params, antenna);
}

double sinr(const PointLink& link, std::span<const PointLink> concurrent,
            const RadioParams& params, const AntennaModel& antenna) {
  const double signal = received_power_mw(link.tx, link.rx, link.rx, link.tx,
                                          params, antenna);
  double denom = params.noise_power_mw();
  for (const PointLink& other : concurrent) {
    denom += interference_power_mw(other, link, params, antenna);
  }
  return signal / denom;
}

double rate_from_sinr(double sinr_value, const RadioParams& params) {
  if (sinr_value <= 0.0) return 0.0;
  return params.transceiver_efficiency * params.bandwidth_hz *
         std::log2(1.0 + sinr_value);
}

double link_rate_bps(const PointLink& link, std::span<const PointLink> concurrent,
                     const RadioParams& params, const AntennaModel& antenna) {
  return rate_from_sinr(sinr(link, concurrent, params, antenna), params);
}

double worst_case_rate_bps(const PointLink& link, double sigma,
                           const RadioParams& params, const AntennaModel& antenna) {
  if (sigma < 0.0) {
    throw std::invalid_argument("interference threshold must be non-negative");
  }
  const double signal = received_power_mw(link.tx, link.rx, link.rx, link.tx,
                                          params, antenna);
  const double denom = params.noise_power_mw() + sigma * params.tx_power_mw;
  return rate_from_sinr(signal / denom, params);
}

double noise_limited_rate_bps(double distance_m, const RadioParams& params,
                              const AntennaModel& antenna) {
  const double g0 = db_to_linear(antenna.max_gain_db);
  const double signal = received_power_mw(g0, g0, distance_m, params);
  return rate_from_sinr(signal / params.noise_power_mw(), params);
}

}  // namespace mhrc
