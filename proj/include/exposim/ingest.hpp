// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_INGEST_HPP_
#define EXPOSIM_INGEST_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exposim/fitting.hpp"
#include "exposim/link_budget.hpp"
#include "exposim/path_loss.hpp"

namespace exposim {

struct DriveTestRecord {
  double timestamp_s = 0.0;
  double latitude = 0.0;
  double longitude = 0.0;
  std::optional<double> rsrp_dbm;
  std::optional<double> rs_dbm;
  std::optional<double> ptx_dbm;
  std::optional<double> resource_blocks;
  std::optional<double> alpha;
  std::optional<double> p0_dbm;
  double band_mhz = 0.0;
  std::string tool;

  friend bool operator==(const DriveTestRecord&, const DriveTestRecord&) = default;
};

// Canonical field keys. Normalized files use exactly these as headers.
inline constexpr const char* kCanonicalColumns[] = {
    "t", "lat", "lon", "rsrp_dbm", "rs_dbm", "ptx_dbm",
    "m_rb", "alpha", "p0_dbm", "band_mhz", "tool"};

// Maps canonical keys onto the header names of one tool's export. Keys may
// be given as canonical names or as the short config aliases (timestamp,
// rsrp, rs, ptx, p0, band).
struct ToolSchema {
  std::string tool;
  std::map<std::string, std::string> columns;
  // Used when the file has no band column.
  std::optional<double> band_mhz;

  /// Identity mapping onto the normalized column names.
  static ToolSchema canonical(std::string tool);

  /// Header name for a canonical key, falling back to the key itself.
  std::string header_for(const std::string& key) const;
};

/// Canonical key for an alias such as "rsrp"; canonical keys map to
/// themselves. Throws FormatError on an unknown key.
std::string canonical_key(const std::string& key);

struct ParseResult {
  std::vector<DriveTestRecord> records;
  std::map<std::string, std::size_t> rejections;
  std::size_t rows = 0;

  std::size_t rejected() const;
};

/// Allowed fractional path-loss compensation factors.
bool is_allowed_alpha(double alpha);

/// Streams a CSV export. Throws FormatError when the header is missing or
/// lacks a required column, EmptyInputError when no row survives.
ParseResult parse_drive_test(std::istream& in, const ToolSchema& schema);

/// Writes records under the canonical header.
void write_normalized_csv(std::ostream& out, std::span<const DriveTestRecord> records);

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;
};

inline constexpr double kEarthRadius = 6371008.8;  // m, IUGG mean radius

/// Haversine great-circle distance.
double gps_distance(double lat1, double lon1, double lat2, double lon2);
double gps_distance(const GeoPoint& a, const GeoPoint& b);

struct SampleConversion {
  std::vector<PathLossSample> samples;
  std::map<std::string, std::size_t> rejections;
  // Samples with non-positive path loss, retained.
  std::size_t implausible = 0;
};

/// PL = RS + Gain_SC - RSRP, distance to the small cell from GPS. Samples
/// at or inside `min_distance_m` are dropped.
SampleConversion to_pathloss_samples(std::span<const DriveTestRecord> records,
                                     const GeoPoint& sc_position, double sc_gain_db = 0.0,
                                     double min_distance_m = 1.0);

struct SynthesisSpec {
  GeoPoint sc_position{48.8566, 2.3522};
  std::size_t n_points = 20000;
  double min_distance_m = 2.0;
  double max_distance_m = 200.0;
  std::uint64_t seed = 1;
  std::string tool = "synthetic";
};

/// Drive-test records along a route heading north from the small cell,
/// distances uniform in [min, max], with RSRP and uplink power produced by
/// `model` and `cfg`. For tests and demonstrations.
std::vector<DriveTestRecord> synthesize_drive_test(const PathLossModel& model,
                                                   const RadioConfig& cfg,
                                                   const SynthesisSpec& spec);

}  // namespace exposim

#endif  // EXPOSIM_INGEST_HPP_
