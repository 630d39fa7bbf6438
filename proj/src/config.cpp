// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/config.hpp"

#include <charconv>
#include <cstdlib>
#include <set>
#include <string>
#include <string_view>

#include "exposim/error.hpp"
#include "exposim/model_io.hpp"

namespace exposim {

using nlohmann::json;

namespace {

void check_keys(const json& j, const char* section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw FormatError(std::string(section) + " must be an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw FormatError("unknown key '" + key + "' in " + section);
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("bad value for '") + key + "'");
  }
}

void read_pair(const json& j, const char* key, double& first, double& second) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw FormatError(std::string("'") + key + "' must be a two-number array");
  }
  first = v[0].get<double>();
  second = v[1].get<double>();
}

ScenarioGeometry geometry_from_json(const json& j) {
  check_keys(j, "geometry",
             {"street_length_m", "street_width_m", "penetration_depth_m", "floors",
              "floor_height_m", "ue_height_m", "sc_position_m", "penetration_loss_db"});
  ScenarioGeometry g;
  read(j, "street_length_m", g.street_length);
  read(j, "street_width_m", g.street_width);
  read(j, "penetration_depth_m", g.penetration_depth);
  read(j, "floors", g.floors);
  read(j, "floor_height_m", g.floor_height);
  read(j, "ue_height_m", g.ue_height);
  read_pair(j, "penetration_loss_db", g.penetration_loss_min_db, g.penetration_loss_max_db);
  if (j.contains("sc_position_m")) {
    const json& p = j.at("sc_position_m");
    if (!p.is_array() || p.size() != 3) throw FormatError("sc_position_m must be [x, y, z]");
    g.sc_position = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
  }
  g.validate();
  return g;
}

json geometry_to_json(const ScenarioGeometry& g) {
  return {{"street_length_m", g.street_length},
          {"street_width_m", g.street_width},
          {"penetration_depth_m", g.penetration_depth},
          {"floors", g.floors},
          {"floor_height_m", g.floor_height},
          {"ue_height_m", g.ue_height},
          {"sc_position_m", {g.sc_position.x, g.sc_position.y, g.sc_position.z}},
          {"penetration_loss_db", {g.penetration_loss_min_db, g.penetration_loss_max_db}}};
}

OccupancyProfile occupancy_from_json(const json& j) {
  check_keys(j, "occupancy",
             {"indoor_fraction", "population", "posture", "usage", "upload_volume_bytes",
              "period_s"});
  OccupancyProfile o;
  read(j, "indoor_fraction", o.indoor_fraction);
  read(j, "population", o.population);
  read(j, "posture", o.posture);
  read(j, "usage", o.usage);
  read(j, "upload_volume_bytes", o.upload_volume_bytes);
  read(j, "period_s", o.period_s);
  o.validate();
  return o;
}

json occupancy_to_json(const OccupancyProfile& o) {
  return {{"indoor_fraction", o.indoor_fraction}, {"population", o.population},
          {"posture", o.posture},                 {"usage", o.usage},
          {"upload_volume_bytes", o.upload_volume_bytes}, {"period_s", o.period_s}};
}

SarTable sar_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("sar must be an array of entries");
  std::vector<SarEntry> entries;
  for (const auto& e : j) {
    check_keys(e, "sar entry",
               {"band_mhz", "population", "usage", "posture", "sar_ul", "sar_dl",
                "reference_tx_power_w", "reference_incident"});
    SarEntry s;
    read(e, "band_mhz", s.band_mhz);
    read(e, "population", s.population);
    read(e, "usage", s.usage);
    read(e, "posture", s.posture);
    read(e, "sar_ul", s.sar_ul);
    read(e, "sar_dl", s.sar_dl);
    read(e, "reference_tx_power_w", s.reference_tx_power_w);
    read(e, "reference_incident", s.reference_incident);
    entries.push_back(std::move(s));
  }
  return SarTable(std::move(entries));
}

json sar_to_json(const SarTable& table) {
  json out = json::array();
  for (const auto& s : table.entries()) {
    out.push_back({{"band_mhz", s.band_mhz},
                   {"population", s.population},
                   {"usage", s.usage},
                   {"posture", s.posture},
                   {"sar_ul", s.sar_ul},
                   {"sar_dl", s.sar_dl},
                   {"reference_tx_power_w", s.reference_tx_power_w},
                   {"reference_incident", s.reference_incident}});
  }
  return out;
}

}  // namespace

RunConfig run_config_from_json(const json& j, const std::filesystem::path& base_dir) {
  check_keys(j, "config",
             {"seed", "n_observations", "worker_count", "model_file", "model_files",
              "geometry", "occupancy", "radio", "throughput", "sar"});
  RunConfig cfg;
  read(j, "seed", cfg.seed);
  read(j, "n_observations", cfg.n_observations);
  read(j, "worker_count", cfg.worker_count);
  if (cfg.n_observations < 1) throw DomainError("n_observations must be >= 1");
  if (cfg.worker_count < 1) throw DomainError("worker_count must be >= 1");

  std::vector<std::string> models;
  if (j.contains("model_file")) models.push_back(j.at("model_file").get<std::string>());
  if (j.contains("model_files")) {
    for (const auto& m : j.at("model_files")) models.push_back(m.get<std::string>());
  }
  for (const auto& m : models) {
    const std::filesystem::path p(m);
    cfg.model_files.push_back(p.is_absolute() || base_dir.empty() ? p : base_dir / p);
  }

  if (j.contains("geometry")) cfg.geometry = geometry_from_json(j.at("geometry"));
  if (j.contains("occupancy")) cfg.occupancy = occupancy_from_json(j.at("occupancy"));
  if (j.contains("radio")) {
    cfg.radio = j.at("radio");
    check_keys(cfg.radio, "radio",
               {"reference_signal_dbm", "sc_gain_db", "ue_gain_db", "thermal_noise_dbm",
                "p_max_dbm", "p_min_dbm", "p0_dbm", "alpha", "resource_blocks",
                "rsrp_to_total_offset_db"});
  }
  if (j.contains("throughput")) {
    cfg.throughput = j.at("throughput");
    check_keys(cfg.throughput, "throughput",
               {"efficiency", "allocated_rb", "total_rb", "max_bps",
                "calibrate_mean_upload_s"});
    if (cfg.throughput.contains("calibrate_mean_upload_s") &&
        !cfg.throughput.at("calibrate_mean_upload_s").is_null()) {
      cfg.calibrate_mean_upload_s = cfg.throughput.at("calibrate_mean_upload_s").get<double>();
      if (!(*cfg.calibrate_mean_upload_s > 0.0)) {
        throw DomainError("calibrate_mean_upload_s must be positive");
      }
    }
  }
  if (j.contains("sar")) cfg.sar = sar_from_json(j.at("sar"));
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  try {
    return run_config_from_json(j, path.parent_path());
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json run_config_to_json(const RunConfig& cfg) {
  json models = json::array();
  for (const auto& m : cfg.model_files) models.push_back(m.filename().string());
  return {{"seed", cfg.seed},
          {"n_observations", cfg.n_observations},
          {"model_files", models},
          {"geometry", geometry_to_json(cfg.geometry)},
          {"occupancy", occupancy_to_json(cfg.occupancy)},
          {"radio", cfg.radio},
          {"throughput", cfg.throughput},
          {"sar", sar_to_json(cfg.sar)}};
}

RadioConfig radio_for_band(const RunConfig& cfg, const FrequencyBand& band) {
  RadioConfig r = RadioConfig::for_band(band);
  const json& j = cfg.radio;
  read(j, "reference_signal_dbm", r.reference_signal_dbm);
  read(j, "sc_gain_db", r.sc_gain_db);
  read(j, "ue_gain_db", r.ue_gain_db);
  read(j, "thermal_noise_dbm", r.thermal_noise_dbm);
  read(j, "p_max_dbm", r.p_max_dbm);
  read(j, "p_min_dbm", r.p_min_dbm);
  read(j, "p0_dbm", r.p0_dbm);
  read(j, "alpha", r.alpha);
  read(j, "resource_blocks", r.resource_blocks);
  read(j, "rsrp_to_total_offset_db", r.rsrp_to_total_offset_db);
  const json& t = cfg.throughput;
  read(t, "efficiency", r.throughput.efficiency);
  read(t, "total_rb", r.throughput.total_rb);
  r.throughput.allocated_rb = r.throughput.total_rb;
  read(t, "allocated_rb", r.throughput.allocated_rb);
  read(t, "max_bps", r.throughput.max_bps);
  r.validate();
  return r;
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* raw = std::getenv(kSeedEnvVar);
  if (raw == nullptr) return std::nullopt;
  const std::string_view text(raw);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return seed;
}

}  // namespace exposim
