// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_PATH_LOSS_HPP_
#define EXPOSIM_PATH_LOSS_HPP_

#include <variant>

#include "exposim/distributions.hpp"

namespace exposim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kReferenceDistance = 1.0;     // m

struct FrequencyBand {
  double carrier_hz = 0.0;
  double bandwidth_hz = 0.0;

  /// Throws DomainError unless both fields are positive.
  static FrequencyBand make(double carrier_hz, double bandwidth_hz);

  /// LTE deployment defaults: 20 MHz at 1800, 15 MHz at 2600, otherwise 20 MHz.
  static FrequencyBand from_mhz(double carrier_mhz);

  double wavelength() const { return kSpeedOfLight / carrier_hz; }
  double carrier_mhz() const { return carrier_hz / 1e6; }
};

/// Free-space loss at the 1 m reference distance, 20 log10(4 pi / lambda).
double free_space_intercept(const FrequencyBand& band);
double free_space_intercept(double carrier_hz);

/// Either a fixed exponent or a distance-banded statistical one.
using PleSource = std::variant<double, BandedPleDistribution>;

struct PathLossModel {
  double intercept_db = 0.0;
  PleSource exponent = 2.0;

  double reference_distance() const { return kReferenceDistance; }

  /// Validates intercept_db > 0.
  static PathLossModel make(double intercept_db, PleSource exponent);
};

/// Log-distance path loss A + 10 gamma log10(d / d0).
double path_loss(double intercept_db, double gamma, double distance_m);
double path_loss(const PathLossModel& model, double gamma, double distance_m);

/// Exponent that reproduces `path_loss_db` at `distance_m`. The inverse of
/// path_loss for d > d0. Throws DomainError at d = d0 (singular) and for
/// d < d0, where the sign of the log term flips.
double extract_ple(double path_loss_db, double intercept_db, double distance_m);

}  // namespace exposim

#endif  // EXPOSIM_PATH_LOSS_HPP_
