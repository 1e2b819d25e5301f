#include <doctest.h>

#include <cmath>
#include <vector>

#include "mhrc/radio.hpp"
#include "mhrc/rng.hpp"
#include "helpers.hpp"

using namespace mhrc;
using mhrc::test::table_antenna;
using mhrc::test::table_radio;

namespace {

constexpr double kSpeedOfLight = 299792458.0;

double ref_noise_power_mw() {
  return std::pow(10.0, -13.4) / 1.0e6 * 2.16e9;
}

double ref_k0() {
  const double lambda = kSpeedOfLight / 60.0e9;
  return (lambda / (4.0 * M_PI)) * (lambda / (4.0 * M_PI));
}

// Independent evaluation of the aligned received power at distance d.
double ref_aligned_power(double d) {
  const double g0_db = 10.0 * std::log10(std::pow(1.6162 / std::sin(15.0 * M_PI / 180.0), 2));
  const double g0 = std::pow(10.0, g0_db / 10.0);
  return ref_k0() * g0 * g0 * std::pow(d, -2.0) * 1000.0;
}

}  // namespace

TEST_CASE("antenna model derived quantities") {
  const AntennaModel m = table_antenna();
  CHECK(m.main_lobe_deg == doctest::Approx(78.0).epsilon(1e-12));
  const double g0_ref =
      10.0 * std::log10(std::pow(1.6162 / std::sin(15.0 * M_PI / 180.0), 2));
  CHECK(m.max_gain_db == doctest::Approx(g0_ref).epsilon(1e-12));
  CHECK(m.max_gain_db == doctest::Approx(15.91).epsilon(1e-3));
  const double gsl_ref = -0.4111 * std::log(30.0) - 10.579;
  CHECK(m.side_lobe_gain_db == doctest::Approx(gsl_ref).epsilon(1e-12));
  CHECK(m.side_lobe_gain_db == doctest::Approx(-11.98).epsilon(1e-3));
}

TEST_CASE("antenna gain branches") {
  const AntennaModel m = table_antenna();
  CHECK(antenna_gain_db(0.0, m) == m.max_gain_db);
  // Half-power point.
  CHECK(antenna_gain_db(15.0, m) == m.max_gain_db - 3.01);
  // Side lobe.
  CHECK(antenna_gain_db(90.0, m) == m.side_lobe_gain_db);
  CHECK(antenna_gain_db(180.0, m) == m.side_lobe_gain_db);
  // The tie at the main-lobe edge uses the main-lobe branch.
  const double edge = m.main_lobe_deg / 2.0;
  const double r = 2.0 * edge / m.halfpower_beamwidth_deg;
  CHECK(antenna_gain_db(edge, m) == m.max_gain_db - 3.01 * r * r);
  CHECK_THROWS_AS(antenna_gain_db(-0.1, m), std::domain_error);
  CHECK_THROWS_AS(antenna_gain_db(180.1, m), std::domain_error);
}

TEST_CASE("antenna gain non-increasing on the main lobe") {
  const AntennaModel m = table_antenna();
  double prev = antenna_gain_db(0.0, m);
  for (double theta = 1.0; theta <= m.main_lobe_deg / 2.0; theta += 1.0) {
    const double g = antenna_gain_db(theta, m);
    CHECK(g <= prev);
    prev = g;
  }
  CHECK(antenna_gain_db(60.0, m) == antenna_gain_db(170.0, m));
}

TEST_CASE("received power, aligned reference link") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  CHECK(radio.k0 == doctest::Approx(ref_k0()).epsilon(1e-12));
  CHECK(radio.noise_power_mw() == doctest::Approx(ref_noise_power_mw()).epsilon(1e-12));

  const Point tx{0.0, 0.0};
  const Point rx{50.0, 0.0};
  const double p = received_power_mw(tx, rx, rx, tx, radio, antenna);
  CHECK(p == doctest::Approx(ref_aligned_power(50.0)).epsilon(1e-9));
  CHECK(p == doctest::Approx(9.6e-5).epsilon(0.01));
}

TEST_CASE("received power, unit-distance isotropic case") {
  const RadioParams radio = table_radio();
  CHECK(received_power_mw(1.0, 1.0, 1.0, radio) ==
        doctest::Approx(radio.k0 * radio.tx_power_mw).epsilon(1e-12));
  CHECK_THROWS_AS(received_power_mw(1.0, 1.0, 0.0, radio), std::domain_error);
}

TEST_CASE("received power distance scaling") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  const Point tx{0.0, 0.0};
  const Point a{40.0, 0.0};
  const Point b{80.0, 0.0};
  const double pa = received_power_mw(tx, a, a, tx, radio, antenna);
  const double pb = received_power_mw(tx, b, b, tx, radio, antenna);
  CHECK(pb == doctest::Approx(pa / 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(received_power_mw(tx, tx, a, a, radio, antenna), std::domain_error);
}

TEST_CASE("interferer in the side lobe of its own boresight") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  // Interferer at the origin transmits north; the victim receiver sits due
  // east at 50 m and listens west, away from the interferer's main lobe.
  const PointLink interferer{{0.0, 0.0}, {0.0, 50.0}};
  const PointLink victim{{100.0, 0.0}, {50.0, 0.0}};
  const double i = interference_power_mw(interferer, victim, radio, antenna);
  const double gsl = db_to_linear(antenna.side_lobe_gain_db);
  const double expected = radio.mui_factor_rho * radio.k0 * gsl * gsl *
                          std::pow(50.0, -2.0) * radio.tx_power_mw;
  CHECK(i == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("interference degenerate alignment equals received power") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  // Interferer boresighted exactly at the victim receiver, and the victim
  // receiver boresighted exactly back at the interferer.
  const PointLink interferer{{0.0, 0.0}, {80.0, 0.0}};
  const PointLink victim{{0.0, 0.0}, {80.0, 0.0}};
  const double i = interference_power_mw(interferer, victim, radio, antenna);
  const double p = received_power_mw({0.0, 0.0}, {80.0, 0.0}, {80.0, 0.0},
                                     {0.0, 0.0}, radio, antenna);
  CHECK(i == doctest::Approx(radio.mui_factor_rho * p).epsilon(1e-12));
}

TEST_CASE("interference is linear in rho") {
  RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  const PointLink interferer{{0.0, 0.0}, {30.0, 10.0}};
  const PointLink victim{{90.0, 40.0}, {60.0, 0.0}};
  const double full = interference_power_mw(interferer, victim, radio, antenna);
  radio.mui_factor_rho = 0.5;
  const double half = interference_power_mw(interferer, victim, radio, antenna);
  CHECK(half == doctest::Approx(full / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      interference_power_mw({{0, 0}, {1, 1}}, {{5, 5}, {0, 0}}, radio, antenna),
      std::domain_error);
}

TEST_CASE("sinr of the reference link matches hand evaluation") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  const PointLink link{{0.0, 0.0}, {50.0, 0.0}};
  const double snr = sinr(link, {}, radio, antenna);
  const double expected = ref_aligned_power(50.0) / ref_noise_power_mw();
  CHECK(snr == doctest::Approx(expected).epsilon(1e-9));
  CHECK(snr == doctest::Approx(1.1e6).epsilon(0.03));

  const double rate = link_rate_bps(link, {}, radio, antenna);
  const double expected_rate = 0.5 * 2.16e9 * std::log2(1.0 + expected);
  CHECK(rate == doctest::Approx(expected_rate).epsilon(1e-9));
  CHECK(rate == doctest::Approx(2.2e10).epsilon(0.03));
}

TEST_CASE("adding interferers strictly decreases sinr") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  RandomStream rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    const PointLink link{{rng.uniform(0, 300), rng.uniform(0, 300)},
                         {rng.uniform(0, 300), rng.uniform(0, 300)}};
    if (distance(link.tx, link.rx) < 1.0) continue;
    std::vector<PointLink> set;
    double prev = sinr(link, set, radio, antenna);
    for (int n = 0; n < 3; ++n) {
      PointLink other{{rng.uniform(0, 300), rng.uniform(0, 300)},
                      {rng.uniform(0, 300), rng.uniform(0, 300)}};
      if (distance(other.tx, other.rx) < 1.0 ||
          distance(other.tx, link.rx) < 1.0) {
        continue;
      }
      set.push_back(other);
      const double cur = sinr(link, set, radio, antenna);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("rate from sinr fixed points") {
  const RadioParams radio = table_radio();
  CHECK(rate_from_sinr(0.0, radio) == 0.0);
  CHECK(rate_from_sinr(1.0, radio) ==
        doctest::Approx(radio.transceiver_efficiency * radio.bandwidth_hz)
            .epsilon(1e-12));
}

TEST_CASE("worst-case rate") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  const PointLink link{{0.0, 0.0}, {50.0, 0.0}};

  CHECK(worst_case_rate_bps(link, 0.0, radio, antenna) ==
        doctest::Approx(link_rate_bps(link, {}, radio, antenna)).epsilon(1e-12));

  const double sigma = 1e-10;
  const double expected =
      0.5 * 2.16e9 *
      std::log2(1.0 + ref_aligned_power(50.0) / (ref_noise_power_mw() + 1e-7));
  CHECK(worst_case_rate_bps(link, sigma, radio, antenna) ==
        doctest::Approx(expected).epsilon(1e-9));
  CHECK_THROWS_AS(worst_case_rate_bps(link, -1.0, radio, antenna),
                  std::invalid_argument);
}

TEST_CASE("rate computations are pure") {
  const RadioParams radio = table_radio();
  const AntennaModel antenna = table_antenna();
  const PointLink link{{3.0, 4.0}, {120.0, 90.0}};
  const std::vector<PointLink> set{{{200.0, 10.0}, {250.0, 60.0}}};
  const double a = link_rate_bps(link, set, radio, antenna);
  const double b = link_rate_bps(link, set, radio, antenna);
  CHECK(a == b);
}

TEST_CASE("radio params validation") {
  RadioParams p = table_radio();
  p.transceiver_efficiency = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = table_radio();
  p.mui_factor_rho = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = table_radio();
  CHECK_NOTHROW(p.validate());
}
