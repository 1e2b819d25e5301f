#pragma once

#include <span>
#include <vector>

#include "mhrc/geometry.hpp"

namespace mhrc {

/// Physical-layer constants. Internal units are fixed: mW, Hz, meters,
/// seconds and bit/s; decibels appear only at the antenna-model boundary.
struct RadioParams {
  double bandwidth_hz = 2.16e9;
  double noise_density_mw_per_hz = 3.9810717055349694e-20;  // -134 dBm/MHz
  double pathloss_exponent = 2.0;
  double tx_power_mw = 1000.0;  // 30 dBm
  double mui_factor_rho = 1.0;
  double k0 = 0.0;  // (lambda / 4 pi)^2, set from the carrier frequency
  double transceiver_efficiency = 0.5;
  double slot_duration_s = 1.0;

  double noise_power_mw() const { return noise_density_mw_per_hz * bandwidth_hz; }

  /// Builds params with k0 derived from the carrier wavelength.
  static RadioParams with_carrier(double carrier_hz);

  /// Throws std::invalid_argument when a field is out of its valid range.
  void validate() const;
};

double noise_density_from_dbm_per_mhz(double dbm_per_mhz);
double dbm_to_mw(double dbm);
double db_to_linear(double db);

/// Gaussian main lobe with constant side-lobe level. Derived fields are in dB.
struct AntennaModel {
  double halfpower_beamwidth_deg = 30.0;
  double main_lobe_deg = 78.0;
  double max_gain_db = 0.0;
  double side_lobe_gain_db = 0.0;

  static AntennaModel from_beamwidth(double halfpower_beamwidth_deg);
};

/// Gain in dB at off-boresight angle theta (degrees, [0, 180]).
/// The main-lobe branch applies up to and including main_lobe_deg / 2.
double antenna_gain_db(double theta_deg, const AntennaModel& model);

/// A directed transmission between two positions; boresights are implied:
/// the transmitter steers at its receiver and vice versa.
struct PointLink {
  Point tx;
  Point rx;
};

/// Eq.-style received power with explicit boresight targets. The transmit
/// gain is evaluated at the angle between (tx -> tx_boresight) and
/// (tx -> rx); symmetrically for the receiver.
double received_power_mw(Point tx, Point rx, Point tx_boresight, Point rx_boresight,
                         const RadioParams& params, const AntennaModel& antenna);

/// Low-level form with gains already in linear scale.
double received_power_mw(double gain_tx_linear, double gain_rx_linear,
                         double distance_m, const RadioParams& params);

/// Interference at the victim link's receiver caused by the interferer's
/// transmitter. Both ends keep the boresight of their own link.
double interference_power_mw(const PointLink& interferer, const PointLink& victim,
                             const RadioParams& params, const AntennaModel& antenna);

double sinr(const PointLink& link, std::span<const PointLink> concurrent,
            const RadioParams& params, const AntennaModel& antenna);

double rate_from_sinr(double sinr_value, const RadioParams& params);

double link_rate_bps(const PointLink& link, std::span<const PointLink> concurrent,
                     const RadioParams& params, const AntennaModel& antenna);

/// Rate with the interference term pinned at sigma * Pt; used for slot
/// budgeting before the factual concurrent sets are known.
double worst_case_rate_bps(const PointLink& link, double sigma,
                           const RadioParams& params, const AntennaModel& antenna);

/// Boresight-aligned, noise-limited rate over a given distance.
double noise_limited_rate_bps(double distance_m, const RadioParams& params,
                              const AntennaModel& antenna);

}  // namespace mhrc
