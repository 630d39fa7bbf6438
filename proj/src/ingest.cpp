// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string_view>

#include "exposim/error.hpp"
#include "exposim/random.hpp"
#include "number_format.hpp"

namespace exposim {

namespace {

using detail::format_number;

constexpr std::array<double, 8> kAllowedAlpha{0.0, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Comma-separated fields; double quotes protect commas, "" is a literal quote.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

enum class NumberStatus { Ok, Missing, Invalid };

NumberStatus parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return NumberStatus::Missing;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(out)) {
    return NumberStatus::Invalid;
  }
  return NumberStatus::Ok;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"") != std::string::npos;
}

std::string quote(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

double to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

bool valid_coordinates(double lat, double lon) {
  return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

}  // namespace

std::string canonical_key(const std::string& key) {
  static const std::map<std::string, std::string> aliases{
      {"timestamp", "t"},   {"time", "t"},         {"latitude", "lat"},
      {"longitude", "lon"}, {"rsrp", "rsrp_dbm"},  {"rs", "rs_dbm"},
      {"ptx", "ptx_dbm"},   {"tx_power", "ptx_dbm"}, {"m", "m_rb"},
      {"p0", "p0_dbm"},     {"band", "band_mhz"},
  };
  for (const char* c : kCanonicalColumns) {
    if (key == c) return key;
  }
  if (auto it = aliases.find(key); it != aliases.end()) return it->second;
  throw FormatError("unknown column key '" + key + "'");
}

ToolSchema ToolSchema::canonical(std::string tool) {
  ToolSchema schema;
  schema.tool = std::move(tool);
  for (const char* c : kCanonicalColumns) schema.columns[c] = c;
  return schema;
}

std::string ToolSchema::header_for(const std::string& key) const {
  for (const auto& [k, header] : columns) {
    if (canonical_key(k) == key) return header;
  }
  return key;
}

std::size_t ParseResult::rejected() const {
  std::size_t total = 0;
  for (const auto& [reason, count] : rejections) total += count;
  return total;
}

bool is_allowed_alpha(double alpha) {
  return std::any_of(kAllowedAlpha.begin(), kAllowedAlpha.end(),
                     [alpha](double a) { return std::abs(a - alpha) < 1e-9; });
}

ParseResult parse_drive_test(std::istream& in, const ToolSchema& schema) {
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) {
    throw FormatError("drive-test file has no header row");
  }
  // Tolerate a UTF-8 byte order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const std::vector<std::string> header = split_csv(line);

  std::map<std::string, std::size_t> index;
  for (const char* key : kCanonicalColumns) {
    const std::string name = schema.header_for(key);
    const auto it = std::find(header.begin(), header.end(), name);
    if (it != header.end()) index[key] = static_cast<std::size_t>(it - header.begin());
  }
  for (const char* required : {"t", "lat", "lon"}) {
    if (!index.contains(required)) {
      throw FormatError("header lacks required column '" + schema.header_for(required) + "'");
    }
  }
  if (!index.contains("band_mhz") && !schema.band_mhz) {
    throw FormatError("no band column and no band given for tool '" + schema.tool + "'");
  }

  ParseResult result;
  auto reject = [&result](const char* reason) { ++result.rejections[reason]; };

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++result.rows;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      reject("field_count");
      continue;
    }

    DriveTestRecord rec;
    bool bad_number = false;
    bool missing_required = false;
    auto required = [&](const char* key, double& out) {
      const NumberStatus s = parse_number(fields[index.at(key)], out);
      if (s == NumberStatus::Missing) missing_required = true;
      if (s == NumberStatus::Invalid) bad_number = true;
    };
    auto optional = [&](const char* key, std::optional<double>& out) {
      const auto it = index.find(key);
      if (it == index.end()) return;
      double v = 0.0;
      const NumberStatus s = parse_number(fields[it->second], v);
      if (s == NumberStatus::Ok) out = v;
      if (s == NumberStatus::Invalid) bad_number = true;
    };

    required("t", rec.timestamp_s);
    required("lat", rec.latitude);
    required("lon", rec.longitude);
    optional("rsrp_dbm", rec.rsrp_dbm);
    optional("rs_dbm", rec.rs_dbm);
    optional("ptx_dbm", rec.ptx_dbm);
    optional("m_rb", rec.resource_blocks);
    optional("alpha", rec.alpha);
    optional("p0_dbm", rec.p0_dbm);
    std::optional<double> band;
    optional("band_mhz", band);
    if (!band) band = schema.band_mhz;

    if (bad_number) {
      reject("bad_number");
      continue;
    }
    if (missing_required) {
      reject("missing_field");
      continue;
    }
    if (!band || !(*band > 0.0)) {
      reject("missing_band");
      continue;
    }
    rec.band_mhz = *band;
    if (!valid_coordinates(rec.latitude, rec.longitude)) {
      reject("bad_coordinates");
      continue;
    }
    if (rec.alpha && !is_allowed_alpha(*rec.alpha)) {
      reject("alpha_not_allowed");
      continue;
    }
    if (rec.resource_blocks && !(*rec.resource_blocks >= 1.0)) {
      reject("bad_resource_blocks");
      continue;
    }
    if (!rec.rsrp_dbm && !rec.ptx_dbm) {
      reject("no_power_fields");
      continue;
    }
    if (const auto it = index.find("tool"); it != index.end() && !fields[it->second].empty()) {
      rec.tool = fields[it->second];
    } else {
      rec.tool = schema.tool;
    }
    result.records.push_back(std::move(rec));
  }

  if (result.records.empty()) {
    throw EmptyInputError("no valid drive-test rows (" + std::to_string(result.rows) +
                          " read)");
  }
  return result;
}

void write_normalized_csv(std::ostream& out, std::span<const DriveTestRecord> records) {
  for (std::size_t i = 0; i < std::size(kCanonicalColumns); ++i) {
    out << (i ? "," : "") << kCanonicalColumns[i];
  }
  out << '\n';
  for (const auto& r : records) {
    out << format_number(r.timestamp_s) << ',' << format_number(r.latitude) << ','
        << format_number(r.longitude) << ',' << format_optional(r.rsrp_dbm) << ','
        << format_optional(r.rs_dbm) << ',' << format_optional(r.ptx_dbm) << ','
        << format_optional(r.resource_blocks) << ',' << format_optional(r.alpha) << ','
        << format_optional(r.p0_dbm) << ',' << format_number(r.band_mhz) << ','
        << quote(r.tool) << '\n';
  }
}

double gps_distance(double lat1, double lon1, double lat2, double lon2) {
  if (!valid_coordinates(lat1, lon1) || !valid_coordinates(lat2, lon2)) {
    throw DomainError("coordinates out of range");
  }
  const double phi1 = to_radians(lat1);
  const double phi2 = to_radians(lat2);
  const double dphi = to_radians(lat2 - lat1);
  const double dlambda = to_radians(lon2 - lon1);
  const double s_phi = std::sin(0.5 * dphi);
  const double s_lambda = std::sin(0.5 * dlambda);
  const double h = s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
  return 2.0 * kEarthRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

double gps_distance(const GeoPoint& a, const GeoPoint& b) {
  return gps_distance(a.latitude, a.longitude, b.latitude, b.longitude);
}

SampleConversion to_pathloss_samples(std::span<const DriveTestRecord> records,
                                     const GeoPoint& sc_position, double sc_gain_db,
                                     double min_distance_m) {
  SampleConversion out;
  for (const auto& r : records) {
    if (!r.rsrp_dbm) {
      ++out.rejections["missing_rsrp"];
      continue;
    }
    if (!r.rs_dbm) {
      ++out.rejections["missing_rs"];
      continue;
    }
    const double d = gps_distance(sc_position.latitude, sc_position.longitude, r.latitude,
                                  r.longitude);
    if (!(d > min_distance_m)) {
      ++out.rejections["too_close"];
      continue;
    }
    PathLossSample s;
    s.distance_m = d;
    s.path_loss_db = *r.rs_dbm + sc_gain_db - *r.rsrp_dbm;
    s.band = FrequencyBand::from_mhz(r.band_mhz);
    s.tool = r.tool;
    s.timestamp_s = r.timestamp_s;
    if (!(s.path_loss_db > 0.0)) ++out.implausible;
    out.samples.push_back(std::move(s));
  }
  return out;
}

std::vector<DriveTestRecord> synthesize_drive_test(const PathLossModel& model,
                                                   const RadioConfig& cfg,
                                                   const SynthesisSpec& spec) {
  if (!(spec.min_distance_m > kReferenceDistance && spec.max_distance_m > spec.min_distance_m)) {
    throw DomainError("synthetic route needs 1 m < min distance < max distance");
  }
  std::vector<DriveTestRecord> out;
  out.reserve(spec.n_points);
  RandomStream rng(spec.seed);
  const auto* banded = std::get_if<BandedPleDistribution>(&model.exponent);
  for (std::size_t i = 0; i < spec.n_points; ++i) {
    const double d = rng.uniform(spec.min_distance_m, spec.max_distance_m);
    const double gamma = banded ? banded->sample(d, rng) : std::get<double>(model.exponent);
    const double loss = path_loss(model, gamma, d);

    DriveTestRecord rec;
    rec.timestamp_s = static_cast<double>(i);
    // Due north: the great-circle distance is exactly R * dphi.
    rec.latitude = spec.sc_position.latitude + (d / kEarthRadius) * 180.0 / std::numbers::pi;
    rec.longitude = spec.sc_position.longitude;
    rec.rs_dbm = cfg.reference_signal_dbm;
    rec.rsrp_dbm = downlink_rsrp(cfg, loss);
    rec.ptx_dbm = uplink_tx_power(cfg, loss);
    rec.resource_blocks = cfg.resource_blocks;
    rec.alpha = cfg.alpha;
    rec.p0_dbm = cfg.p0_dbm;
    rec.band_mhz = cfg.band.carrier_mhz();
    rec.tool = spec.tool;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace exposim
