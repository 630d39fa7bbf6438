#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "exposim/error.hpp"
#include "exposim/exposure.hpp"
#include "exposim/scenario.hpp"
#include "oracles.hpp"

using namespace exposim;

namespace {

SarEntry sar(double band, double ul, double dl) {
  SarEntry e;
  e.band_mhz = band;
  e.sar_ul = ul;
  e.sar_dl = dl;
  return e;
}

UserObservation user(Environment env, double tx_dbm, double rsrp_dbm, double t_ul) {
  UserObservation u;
  u.environment = env;
  u.link.uplink_tx_power_dbm = tx_dbm;
  u.link.rsrp_dbm = rsrp_dbm;
  u.link.received_power_w = dbm_to_watts(rsrp_dbm);
  u.upload_time_s = t_ul;
  return u;
}

}  // namespace

TEST_CASE("uplink dose") {
  const SarEntry s = sar(1800, 0.0039, 0.0047);
  const double dose = uplink_dose(s, 4.397, 3600.0, 7.2e-3);
  CHECK(dose == doctest::Approx(4.397 / 3600.0 * 0.0039 * 7.2e-3).epsilon(1e-14));
  CHECK(oracle::relative(dose, 3.43e-8) < 0.01);
  CHECK(uplink_dose(s, 0.0, 3600.0, 7.2e-3) == 0.0);
  CHECK(uplink_dose(s, 3600.0, 3600.0, 1.0) == 0.0039);
  CHECK_THROWS_AS(uplink_dose(s, 3601.0, 3600.0, 1.0), DomainError);
  CHECK_THROWS_AS(uplink_dose(s, -1.0, 3600.0, 1.0), DomainError);
}

TEST_CASE("downlink dose") {
  const auto b26 = FrequencyBand::from_mhz(2600);
  const auto b18 = FrequencyBand::from_mhz(1800);
  const double d26 = downlink_dose(sar(2600, 0.0029, 0.0042), 9.36e-10, b26);
  CHECK(d26 == doctest::Approx(0.0042 * 9.36e-10 * oracle::aperture(2.6e9)).epsilon(1e-12));
  CHECK(oracle::relative(d26, 3.71e-9) < 0.01);
  const double d18 = downlink_dose(sar(1800, 0.0039, 0.0047), 8.91e-10, b18);
  CHECK(oracle::relative(d18, 1.90e-9) < 0.01);
  CHECK(oracle::relative(d18, 1.89e-9) < 0.01);
  CHECK(downlink_dose(sar(1800, 0.0039, 0.0047), 0.0, b18) == 0.0);
}

TEST_CASE("SAR table") {
  const SarTable table = SarTable::defaults();
  CHECK(table.lookup(1800, "adult", "data", "standing").sar_ul == 0.0039);
  CHECK(table.lookup(1800, "adult", "data", "standing").sar_dl == 0.0047);
  CHECK(table.lookup(2600, "adult", "data", "standing").sar_ul == 0.0029);
  CHECK(table.lookup(2600, "adult", "data", "standing").sar_dl == 0.0042);
  CHECK_THROWS_AS(table.lookup(900, "adult", "data", "standing"), DomainError);
  CHECK_THROWS_AS(table.lookup(1800, "child", "data", "standing"), DomainError);
  CHECK_THROWS_AS(SarTable({sar(1800, 0.0, 0.1)}), DomainError);
}

TEST_CASE("aggregation") {
  const auto band = FrequencyBand::from_mhz(2600);
  const SarEntry s = sar(2600, 0.0029, 0.0042);
  OccupancyProfile occ;

  SUBCASE("additivity over strata") {
    std::vector<UserObservation> obs{user(Environment::Indoor, 10, -80, 6.0),
                                     user(Environment::Indoor, 3, -75, 5.0),
                                     user(Environment::Outdoor, -5, -60, 2.0),
                                     user(Environment::Indoor, 20, -95, 9.0),
                                     user(Environment::Outdoor, 0, -65, 3.0)};
    const EiReport r = aggregate_ei(obs, s, band, occ);
    REQUIRE(r.strata.size() == 2);
    double sum = 0.0;
    for (const auto& b : r.strata) {
      CHECK(b.ei == b.ul_exposure + b.dl_exposure);
      CHECK(b.dl_time_s == occ.period_s);
      sum += b.fraction * b.ei;
    }
    CHECK(oracle::relative(r.overall.ei, sum) < 1e-12);
    CHECK(r.overall.ei == r.overall.ul_exposure + r.overall.dl_exposure);

    const auto& out = r.strata[0];
    CHECK(out.stratum == "outdoor");
    CHECK(out.fraction == doctest::Approx(0.4));
    CHECK(out.mean_tx_power_w == doctest::Approx((dbm_to_watts(-5) + dbm_to_watts(0)) / 2));
    CHECK(out.mean_ul_time_s == doctest::Approx(2.5));
    CHECK(out.ul_exposure ==
          doctest::Approx(2.5 / 3600 * 0.0029 * out.mean_tx_power_w).epsilon(1e-12));
  }
  SUBCASE("zero upload volume leaves the downlink dose") {
    std::vector<UserObservation> obs{user(Environment::Outdoor, 5, -70, 0.0)};
    const EiReport r = aggregate_ei(obs, s, band, occ);
    CHECK(r.overall.ul_exposure == 0.0);
    CHECK(r.overall.ei == doctest::Approx(downlink_dose(s, dbm_to_watts(-70), band)));
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.strata.size() == 1);
  }
  SUBCASE("identical strata reproduce the common value") {
    std::vector<UserObservation> obs{user(Environment::Outdoor, 5, -70, 4.0),
                                     user(Environment::Indoor, 5, -70, 4.0)};
    const EiReport r = aggregate_ei(obs, s, band, occ);
    CHECK(r.overall.ei == doctest::Approx(r.strata[0].ei).epsilon(1e-14));
    CHECK(r.overall.ei == doctest::Approx(r.strata[1].ei).epsilon(1e-14));
  }
  SUBCASE("zero uplink SAR leaves the downlink dose") {
    SarEntry dl_only = s;
    dl_only.sar_ul = 0.0;
    std::vector<UserObservation> obs{user(Environment::Outdoor, 5, -70, 4.0)};
    const EiReport r = aggregate_ei(obs, dl_only, band, occ);
    CHECK(r.overall.ul_exposure == 0.0);
    CHECK(r.overall.ei == r.overall.dl_exposure);
  }
  SUBCASE("pooled stratum") {
    std::vector<UserObservation> obs{user(Environment::Outdoor, 5, -70, 4.0),
                                     user(Environment::Indoor, 15, -80, 6.0)};
    const EiReport r = aggregate_ei(obs, s, band, occ, StratumSpec::pooled());
    REQUIRE(r.strata.size() == 1);
    CHECK(r.strata[0].ei == doctest::Approx(r.overall.ei).epsilon(1e-14));
  }
  CHECK_THROWS_AS(aggregate_ei({}, s, band, occ), DomainError);
}

TEST_CASE("more upload volume never lowers the index") {
  const ScenarioGeometry geom;
  const RadioConfig cfg = RadioConfig::for_band(FrequencyBand::from_mhz(1800));
  const PathLossModel model = PathLossModel::make(free_space_intercept(1.8e9), 2.8);
  OccupancyProfile occ;
  const SarEntry s = sar(1800, 0.0039, 0.0047);
  double last = 0.0;
  for (double volume : {1e5, 1e6, 4.16e6, 8.32e6, 1.6e7}) {
    occ.upload_volume_bytes = volume;
    const auto obs = run_observations(geom, occ, model, cfg, {9, 2000, 1});
    const double ei = aggregate_ei(obs, s, cfg.band, occ).overall.ei;
    CHECK(ei >= last);
    last = ei;
  }
}

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i));
  double naive = 0.0;
  for (double x : v) naive += x;
  CHECK(pairwise_sum(v) == doctest::Approx(naive).epsilon(1e-13));
  CHECK(pairwise_sum({}) == 0.0);
}
