// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/path_loss.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "exposim/error.hpp"

namespace exposim {

FrequencyBand FrequencyBand::make(double carrier_hz, double bandwidth_hz) {
  if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz)) {
    throw DomainError("carrier frequency must be positive, got " +
                      std::to_string(carrier_hz));
  }
  if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz)) {
    throw DomainError("bandwidth must be positive, got " +
                      std::to_string(bandwidth_hz));
  }
  return FrequencyBand{carrier_hz, bandwidth_hz};
}

FrequencyBand FrequencyBand::from_mhz(double carrier_mhz) {
  const double bandwidth_mhz = std::abs(carrier_mhz - 2600.0) < 0.5 ? 15.0 : 20.0;
  return make(carrier_mhz * 1e6, bandwidth_mhz * 1e6);
}

double free_space_intercept(double carrier_hz) {
  if (!(carrier_hz > 0.0)) {
    throw DomainError("carrier frequency must be positive");
  }
  const double wavelength = kSpeedOfLight / carrier_hz;
  return 20.0 * std::log10(4.0 * std::numbers::pi / wavelength);
}

double free_space_intercept(const FrequencyBand& band) {
  return free_space_intercept(band.carrier_hz);
}

PathLossModel PathLossModel::make(double intercept_db, PleSource exponent) {
  if (!(intercept_db > 0.0) || !std::isfinite(intercept_db)) {
    throw DomainError("path loss intercept must be positive");
  }
  return PathLossModel{intercept_db, std::move(exponent)};
}

double path_loss(double intercept_db, double gamma, double distance_m) {
  if (!(distance_m > 0.0)) {
    throw DomainError("distance must be positive, got " + std::to_string(distance_m));
  }
  if (distance_m == kReferenceDistance) return intercept_db;
  return intercept_db + 10.0 * gamma * std::log10(distance_m / kReferenceDistance);
}

double path_loss(const PathLossModel& model, double gamma, double distance_m) {
  return path_loss(model.intercept_db, gamma, distance_m);
}

double extract_ple(double path_loss_db, double intercept_db, double distance_m) {
  if (!(distance_m > kReferenceDistance)) {
    throw DomainError(distance_m == kReferenceDistance
                          ? "exponent undefined at the reference distance"
                          : "distance inside the reference distance gives a "
                            "sign-flipped exponent");
  }
  return (path_loss_db - intercept_db) /
         (10.0 * std::log10(distance_m / kReferenceDistance));
}

}  // namespace exposim
