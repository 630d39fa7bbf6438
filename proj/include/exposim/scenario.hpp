// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_SCENARIO_HPP_
#define EXPOSIM_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "exposim/link_budget.hpp"
#include "exposim/path_loss.hpp"
#include "exposim/random.hpp"

namespace exposim {

struct Point3 {
  double x = 0.0;  // along the street
  double y = 0.0;  // across the street
  double z = 0.0;  // height above ground
};

double distance(const Point3& a, const Point3& b);

/// A straight street lined on both sides by buildings. Origin at the street
/// centre, x along the street axis.
struct ScenarioGeometry {
  double street_length = 400.0;
  double street_width = 8.0;
  double penetration_depth = 6.0;
  int floors = 4;
  double floor_height = 3.0;
  double ue_height = 1.5;
  Point3 sc_position{0.0, 0.0, 3.0};
  double penetration_loss_min_db = 7.0;
  double penetration_loss_max_db = 13.0;

  void validate() const;
};

struct OccupancyProfile {
  double indoor_fraction = 0.7;
  std::string population = "adult";
  std::string posture = "standing";
  std::string usage = "data";
  double upload_volume_bytes = 4.16e6;
  double period_s = 3600.0;

  void validate() const;
};

enum class Environment { Outdoor, Indoor };

std::string_view to_string(Environment env);

struct UserObservation {
  Point3 position;
  Environment environment = Environment::Outdoor;
  double distance_m = 0.0;
  double gamma = 0.0;
  double penetration_loss_db = 0.0;
  LinkResult link;
  double upload_time_s = 0.0;
};

/// Draws placement only: environment, position, 3D distance to the small
/// cell and, indoors, a uniform penetration loss.
UserObservation sample_user(const ScenarioGeometry& geom, const OccupancyProfile& occ,
                            RandomStream& rng);

/// Completes a placement draw: samples the exponent for its distance band,
/// adds penetration loss to the log-distance loss and fills the link and
/// upload time. `model` must carry a banded exponent.
void evaluate_observation(UserObservation& obs, const PathLossModel& model,
                          const RadioConfig& cfg, const OccupancyProfile& occ,
                          RandomStream& rng);

/// Recomputes throughput and upload time, e.g. after recalibrating the
/// throughput efficiency.
void apply_throughput(UserObservation& obs, const RadioConfig& cfg,
                      const OccupancyProfile& occ);

struct MonteCarloSpec {
  std::uint64_t seed = 0;
  std::size_t n_observations = 100000;
  std::size_t worker_count = 1;
};

/// Observation i is drawn from RandomStream(seed, i) whatever the worker
/// count, so the returned vector is identical for any number of workers.
std::vector<UserObservation> run_observations(const ScenarioGeometry& geom,
                                              const OccupancyProfile& occ,
                                              const PathLossModel& model,
                                              const RadioConfig& cfg,
                                              const MonteCarloSpec& spec);

}  // namespace exposim

#endif  // EXPOSIM_SCENARIO_HPP_
