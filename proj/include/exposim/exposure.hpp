// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_EXPOSURE_HPP_
#define EXPOSIM_EXPOSURE_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "exposim/path_loss.hpp"
#include "exposim/scenario.hpp"

namespace exposim {

// Whole-body reference SAR for one (band, population, usage, posture) cell.
// sar_ul is normalized to reference_tx_power_w emitted by the handset;
// sar_dl to reference_incident W/m^2 incident on the body.
struct SarEntry {
  double band_mhz = 0.0;
  std::string population = "adult";
  std::string usage = "data";
  std::string posture = "standing";
  double sar_ul = 0.0;
  double sar_dl = 0.0;
  double reference_tx_power_w = 1.0;
  double reference_incident = 1.0;
};

class SarTable {
 public:
  SarTable() = default;
  explicit SarTable(std::vector<SarEntry> entries);

  /// Adult, data usage, standing, LTE 1800 and 2600 small-cell values.
  static SarTable defaults();

  /// Throws DomainError when no entry matches.
  const SarEntry& lookup(double band_mhz, const std::string& population,
                         const std::string& usage, const std::string& posture) const;

  const std::vector<SarEntry>& entries() const { return entries_; }

 private:
  std::vector<SarEntry> entries_;
};

struct EiBreakdown {
  std::string stratum;
  double fraction = 0.0;
  std::size_t n_observations = 0;
  // Population mean of each handset's power over its active upload.
  double mean_tx_power_w = 0.0;
  double mean_received_power_w = 0.0;
  double mean_ul_time_s = 0.0;
  double dl_time_s = 0.0;
  double ul_exposure = 0.0;  // W/kg
  double dl_exposure = 0.0;  // W/kg
  double ei = 0.0;           // W/kg
};

/// (TD / T) SAR_UL P / P_ref.
double uplink_dose(const SarEntry& sar, double mean_ul_time_s, double period_s,
                   double mean_tx_power_w);

/// period_fraction SAR_DL S / S_ref, with S = P_rx 4 pi / lambda^2.
double downlink_dose(const SarEntry& sar, double mean_received_power_w,
                     const FrequencyBand& band, double period_fraction = 1.0);

struct StratumSpec {
  std::vector<std::string> labels;
  std::function<std::string(const UserObservation&)> classify;

  /// {outdoor, indoor}.
  static StratumSpec by_environment();
  /// A single stratum holding everything.
  static StratumSpec pooled();
};

struct EiReport {
  std::vector<EiBreakdown> strata;
  EiBreakdown overall;
  std::vector<std::string> warnings;
};

/// Per-stratum breakdown plus the fraction-weighted overall index. Strata
/// with no observations are dropped with a warning. Throws DomainError on an
/// empty observation list or an observation outside every declared stratum.
EiReport aggregate_ei(std::span<const UserObservation> observations, const SarEntry& sar,
                      const FrequencyBand& band, const OccupancyProfile& occ,
                      const StratumSpec& strata = StratumSpec::by_environment());

/// Pairwise (tree) sum. Fixed association order for a given length.
double pairwise_sum(std::span<const double> values);

}  // namespace exposim

#endif  // EXPOSIM_EXPOSURE_HPP_
