#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "exposim/error.hpp"
#include "exposim/fitting.hpp"
#include "exposim/ingest.hpp"
#include "oracles.hpp"

using namespace exposim;

namespace {

ParseResult parse(const std::string& text, const ToolSchema& schema = ToolSchema::canonical("nemo")) {
  std::istringstream in(text);
  return parse_drive_test(in, schema);
}

const char* kHeader = "t,lat,lon,rsrp_dbm,rs_dbm,ptx_dbm,m_rb,alpha,p0_dbm,band_mhz,tool\n";

}  // namespace

TEST_CASE("well-formed file") {
  const std::string text = std::string(kHeader) +
                           "0,48.85,2.35,-90,10,4,1,1,-96,2600,\n"
                           "1,48.851,2.35,-85.5,10,,,,,2600,\n"
                           "2,48.852,2.35,,,12,50,0.8,-90,1800,qxdm\n";
  const ParseResult r = parse(text);
  CHECK(r.rows == 3);
  CHECK(r.records.size() == 3);
  CHECK(r.rejected() == 0);
  CHECK(r.records[0].tool == "nemo");
  CHECK(r.records[2].tool == "qxdm");
  CHECK(*r.records[1].rsrp_dbm == -85.5);
  CHECK_FALSE(r.records[1].ptx_dbm.has_value());
  CHECK(*r.records[2].alpha == 0.8);
  CHECK(r.records[2].band_mhz == 1800);
}

TEST_CASE("rejection tallies") {
  const std::string text = std::string(kHeader) +
                           "0,48.85,2.35,-90,10,4,1,0.3,-96,2600,\n"   // alpha
                           "1,48.85,2.35,-90,10,4,1,1,-96,2600\n"      // field count
                           "2,48.85,2.35,abc,10,4,1,1,-96,2600,\n"     // bad number
                           "3,,2.35,-90,10,4,1,1,-96,2600,\n"          // missing lat
                           "4,95,2.35,-90,10,4,1,1,-96,2600,\n"        // coordinates
                           "5,48.85,2.35,,10,,1,1,-96,2600,\n"         // no power
                           "6,48.85,2.35,-90,10,4,0,1,-96,2600,\n"     // resource blocks
                           "7,48.85,2.35,-90,10,4,1,1,-96,,\n"         // band
                           "8,48.85,2.35,-90,10,4,1,0.7,-96,2600,\n";  // ok
  const ParseResult r = parse(text);
  CHECK(r.records.size() == 1);
  CHECK(r.rejections.at("alpha_not_allowed") == 1);
  CHECK(r.rejections.at("field_count") == 1);
  CHECK(r.rejections.at("bad_number") == 1);
  CHECK(r.rejections.at("missing_field") == 1);
  CHECK(r.rejections.at("bad_coordinates") == 1);
  CHECK(r.rejections.at("no_power_fields") == 1);
  CHECK(r.rejections.at("bad_resource_blocks") == 1);
  CHECK(r.rejections.at("missing_band") == 1);
  CHECK(r.rejected() + r.records.size() == r.rows);
  for (double a : {0.0, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) CHECK(is_allowed_alpha(a));
  CHECK_FALSE(is_allowed_alpha(0.3));
}

TEST_CASE("format and empty-input errors") {
  CHECK_THROWS_AS(parse(""), FormatError);
  CHECK_THROWS_AS(parse("lat,lon,rsrp_dbm,band_mhz\n1,2,-90,2600\n"), FormatError);
  CHECK_THROWS_AS(parse("t,lat,lon,rsrp_dbm\n0,1,2,-90\n"), FormatError);
  CHECK_THROWS_AS(parse(std::string(kHeader)), EmptyInputError);
  CHECK_THROWS_AS(parse(std::string(kHeader) + "0,48.85,2.35,-90,10,4,1,0.3,-96,2600,\n"),
                  EmptyInputError);
}

TEST_CASE("tool schema column mapping") {
  ToolSchema schema;
  schema.tool = "qxdm";
  schema.band_mhz = 1800;
  schema.columns = {{"timestamp", "Time"}, {"lat", "Latitude"}, {"lon", "Longitude"},
                    {"rsrp", "Serving RSRP"}, {"rs", "RS Power"}, {"ptx", "PUSCH Tx"}};
  const ParseResult r = parse(
      "Time,Latitude,Longitude,Serving RSRP,RS Power,PUSCH Tx\n"
      "10,48.85,2.35,-77,10,\"-3\"\n",
      schema);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].tool == "qxdm");
  CHECK(r.records[0].band_mhz == 1800);
  CHECK(*r.records[0].ptx_dbm == -3);
  CHECK(canonical_key("rsrp") == "rsrp_dbm");
  CHECK(canonical_key("band") == "band_mhz");
  CHECK_THROWS_AS(canonical_key("bogus"), FormatError);
}

TEST_CASE("serialization round trip is idempotent") {
  const std::string text = std::string(kHeader) +
                           "0,48.85,2.35,-90.123456789,10,4,1,1,-96,2600,nemo\n"
                           "1.5,48.851,2.3501,-85.5,10,,,,,2600,\"tool, with comma\"\n"
                           "2,48.852,2.35,,,12,50,0.8,-90,1800,qxdm\n";
  const ParseResult first = parse(text);
  std::ostringstream out1;
  write_normalized_csv(out1, first.records);
  const ParseResult second = parse(out1.str(), ToolSchema::canonical("other"));
  CHECK(second.records == first.records);
  std::ostringstream out2;
  write_normalized_csv(out2, second.records);
  CHECK(out2.str() == out1.str());

  SUBCASE("two tools merge and keep their tags") {
    const ParseResult a = parse(std::string(kHeader) + "0,48.85,2.35,-90,10,,,,,2600,\n",
                                ToolSchema::canonical("nemo"));
    const ParseResult b = parse(std::string(kHeader) + "0,48.85,2.35,-91,10,,,,,2600,\n",
                                ToolSchema::canonical("qxdm"));
    std::vector<DriveTestRecord> merged = a.records;
    merged.insert(merged.end(), b.records.begin(), b.records.end());
    std::ostringstream out;
    write_normalized_csv(out, merged);
    const ParseResult back = parse(out.str());
    CHECK(back.records == merged);
    CHECK(back.records[0].tool == "nemo");
    CHECK(back.records[1].tool == "qxdm");
  }
}

TEST_CASE("haversine distance") {
  CHECK(gps_distance(48.85, 2.35, 48.85, 2.35) == 0.0);
  CHECK(std::abs(gps_distance(0.0, 0.0, 0.001, 0.0) - 111.195) < 0.01);
  CHECK(gps_distance(0.0, 0.0, 0.001, 0.0) ==
        doctest::Approx(oracle::haversine(0, 0, 0.001, 0)).epsilon(1e-12));
  const double ab = gps_distance(48.8566, 2.3522, 48.8580, 2.3540);
  CHECK(ab == gps_distance(48.8580, 2.3540, 48.8566, 2.3522));
  CHECK(ab == doctest::Approx(oracle::haversine(48.8566, 2.3522, 48.8580, 2.3540)).epsilon(1e-12));
  CHECK_THROWS_AS(gps_distance(91.0, 0.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(gps_distance(0.0, 181.0, 0.0, 0.0), DomainError);
}

TEST_CASE("path-loss conversion") {
  const GeoPoint sc{48.8566, 2.3522};
  DriveTestRecord rec;
  rec.latitude = 48.8576;
  rec.longitude = 2.3522;
  rec.rsrp_dbm = -90.0;
  rec.rs_dbm = 10.0;
  rec.band_mhz = 2600;
  rec.tool = "nemo";
  DriveTestRecord same_as_rs = rec;
  same_as_rs.rsrp_dbm = 10.0;
  DriveTestRecord no_rs = rec;
  no_rs.rs_dbm.reset();
  DriveTestRecord no_rsrp = rec;
  no_rsrp.rsrp_dbm.reset();
  DriveTestRecord close = rec;
  close.latitude = sc.latitude;
  close.longitude = sc.longitude;

  const std::vector<DriveTestRecord> recs{rec, same_as_rs, no_rs, no_rsrp, close};
  const SampleConversion c = to_pathloss_samples(recs, sc);
  REQUIRE(c.samples.size() == 2);
  CHECK(c.samples[0].path_loss_db == 100.0);
  CHECK(c.samples[0].distance_m == doctest::Approx(oracle::haversine(48.8566, 2.3522, 48.8576, 2.3522)));
  CHECK(c.samples[1].path_loss_db == 0.0);
  CHECK(c.implausible == 1);
  CHECK(c.rejections.at("missing_rs") == 1);
  CHECK(c.rejections.at("missing_rsrp") == 1);
  CHECK(c.rejections.at("too_close") == 1);
  CHECK(to_pathloss_samples(std::span(&rec, 1), sc, 3.0).samples[0].path_loss_db == 103.0);
}

TEST_CASE("synthetic route recovers the generating exponents") {
  const PathLossModel model = PathLossModel::make(free_space_intercept(2.6e9), 2.7);
  SynthesisSpec spec;
  spec.n_points = 500;
  const auto records = synthesize_drive_test(model, RadioConfig::for_band(FrequencyBand::from_mhz(2600)), spec);
  REQUIRE(records.size() == 500);
  const SampleConversion conv = to_pathloss_samples(records, spec.sc_position);
  REQUIRE(conv.samples.size() == 500);
  const PleSeries series = extract_ple_series(conv.samples, model.intercept_db);
  double worst = 0.0;
  for (const auto& p : series.points) worst = std::max(worst, std::abs(p.gamma - 2.7));
  CHECK(worst < 1e-6);
}
