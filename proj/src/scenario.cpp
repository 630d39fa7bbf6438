// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "exposim/error.hpp"

namespace exposim {

double distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void ScenarioGeometry::validate() const {
  if (!(street_length > 0.0 && street_width > 0.0 && penetration_depth > 0.0 &&
        floor_height > 0.0 && ue_height > 0.0 && floors > 0)) {
    throw DomainError("scenario lengths and floor count must be positive");
  }
  if (std::abs(sc_position.x) > 0.5 * street_length ||
      std::abs(sc_position.y) > 0.5 * street_width || sc_position.z < 0.0) {
    throw DomainError("small cell must sit inside the street footprint");
  }
  if (!(penetration_loss_min_db <= penetration_loss_max_db)) {
    throw DomainError("penetration loss range is inverted");
  }
}

void OccupancyProfile::validate() const {
  if (!(indoor_fraction >= 0.0 && indoor_fraction <= 1.0)) {
    throw DomainError("indoor fraction must be in [0, 1]");
  }
  if (!(period_s > 0.0)) throw DomainError("period must be positive");
  if (upload_volume_bytes < 0.0) throw DomainError("upload volume must be >= 0");
}

std::string_view to_string(Environment env) {
  return env == Environment::Indoor ? "indoor" : "outdoor";
}

UserObservation sample_user(const ScenarioGeometry& geom, const OccupancyProfile& occ,
                            RandomStream& rng) {
  UserObservation obs;
  const double half_length = 0.5 * geom.street_length;
  const double half_width = 0.5 * geom.street_width;

  obs.environment = rng.bernoulli(occ.indoor_fraction) ? Environment::Indoor
                                                       : Environment::Outdoor;
  obs.position.x = rng.uniform(-half_length, half_length);
  if (obs.environment == Environment::Outdoor) {
    obs.position.y = rng.uniform(-half_width, half_width);
    obs.position.z = geom.ue_height;
  } else {
    const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
    obs.position.y = side * (half_width + rng.uniform(0.0, geom.penetration_depth));
    const auto floor = static_cast<double>(rng.below(static_cast<std::uint64_t>(geom.floors)));
    obs.position.z = floor * geom.floor_height + geom.ue_height;
    obs.penetration_loss_db =
        rng.uniform(geom.penetration_loss_min_db, geom.penetration_loss_max_db);
  }
  obs.distance_m = distance(obs.position, geom.sc_position);
  return obs;
}

void evaluate_observation(UserObservation& obs, const PathLossModel& model,
                          const RadioConfig& cfg, const OccupancyProfile& occ,
                          RandomStream& rng) {
  const auto* banded = std::get_if<BandedPleDistribution>(&model.exponent);
  obs.gamma = banded ? banded->sample(obs.distance_m, rng) : std::get<double>(model.exponent);
  const double loss = path_loss(model, obs.gamma, obs.distance_m) + obs.penetration_loss_db;
  obs.link = evaluate_link(cfg, loss);
  obs.upload_time_s = upload_time(occ.upload_volume_bytes, obs.link.throughput_bps, occ.period_s);
}

void apply_throughput(UserObservation& obs, const RadioConfig& cfg,
                      const OccupancyProfile& occ) {
  obs.link.throughput_bps = throughput(cfg, obs.link.uplink_snr_db);
  obs.upload_time_s = upload_time(occ.upload_volume_bytes, obs.link.throughput_bps, occ.period_s);
}

std::vector<UserObservation> run_observations(const ScenarioGeometry& geom,
                                              const OccupancyProfile& occ,
                                              const PathLossModel& model,
                                              const RadioConfig& cfg,
                                              const MonteCarloSpec& spec) {
  geom.validate();
  occ.validate();
  cfg.validate();
  if (spec.n_observations < 1) throw DomainError("need at least one observation");

  std::vector<UserObservation> out(spec.n_observations);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng(spec.seed, i);
      out[i] = sample_user(geom, occ, rng);
      evaluate_observation(out[i], model, cfg, occ, rng);
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(spec.worker_count, 1, spec.n_observations);
  if (workers == 1) {
    work(0, spec.n_observations);
    return out;
  }
  const std::size_t chunk = (spec.n_observations + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(spec.n_observations, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, w, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace exposim
