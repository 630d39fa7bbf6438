// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_CONFIG_HPP_
#define EXPOSIM_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"

#include "exposim/exposure.hpp"
#include "exposim/link_budget.hpp"
#include "exposim/scenario.hpp"

namespace exposim {

inline constexpr std::uint64_t kDefaultSeed = 20190101;
inline constexpr const char* kSeedEnvVar = "EXPOSE_SIM_SEED";

// Simulation run description, read from JSON. Every scenario and radio
// parameter has a named key; omitted keys keep the defaults below.
struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t n_observations = 100000;
  std::size_t worker_count = 1;
  std::vector<std::filesystem::path> model_files;
  ScenarioGeometry geometry;
  OccupancyProfile occupancy;
  // "radio" and "throughput" objects, applied on top of the per-band
  // defaults once the band is known from the model file.
  nlohmann::json radio = nlohmann::json::object();
  nlohmann::json throughput = nlohmann::json::object();
  // When set, the throughput efficiency is solved so the mean upload time
  // over the run equals this value.
  std::optional<double> calibrate_mean_upload_s;
  SarTable sar = SarTable::defaults();
};

/// Relative model paths resolve against `base_dir`. Throws FormatError on
/// malformed input, DomainError on out-of-range values.
RunConfig run_config_from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Effective configuration, worker count excluded so reports do not depend
/// on parallelism.
nlohmann::json run_config_to_json(const RunConfig& cfg);

/// Band defaults overlaid with the config's radio and throughput keys.
RadioConfig radio_for_band(const RunConfig& cfg, const FrequencyBand& band);

/// Seed from EXPOSE_SIM_SEED when set and parseable.
std::optional<std::uint64_t> seed_from_environment();

}  // namespace exposim

#endif  // EXPOSIM_CONFIG_HPP_
