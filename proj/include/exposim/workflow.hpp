// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_WORKFLOW_HPP_
#define EXPOSIM_WORKFLOW_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "exposim/config.hpp"
#include "exposim/exposure.hpp"
#include "exposim/fitting.hpp"
#include "exposim/ingest.hpp"
#include "exposim/model_io.hpp"
#include "exposim/scenario.hpp"

namespace exposim {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Model building from drive-test records.

struct ModelFitRequest {
  FrequencyBand band;
  GeoPoint sc_position;
  double sc_gain_db = 0.0;
  double breakpoint_m = kDefaultBreakpoint;
  FitOptions near_options;
  FitOptions far_options;
};

struct ModelFitResult {
  ModelFile model;
  // Exponent fitted with the intercept pinned at free space.
  RegressionFit regression;
  // Both coefficients free.
  RegressionFit regression_free;
  FitReport near_fit;
  FitReport far_fit;
  std::map<std::string, std::size_t> samples_per_tool;
  std::map<std::string, std::size_t> rejections;
  std::size_t implausible = 0;
};

/// Pools records from every tool, keeps those on `request.band`, converts to
/// path loss, extracts per-point exponents against the free-space intercept
/// and fits GEV below / scaled beta beyond the breakpoint. Throws
/// EmptyInputError when no valid sample remains and FitError when a band
/// cannot be fitted.
ModelFitResult fit_model(std::span<const DriveTestRecord> records,
                         const ModelFitRequest& request);

// ---------------------------------------------------------------------------
// Scenario simulation.

struct BandRun {
  ModelFile model;
  RadioConfig radio;
  std::vector<UserObservation> observations;
  EiReport ei;
  bool calibrated = false;
};

struct SimulationResult {
  std::vector<BandRun> bands;
};

/// Runs the Monte Carlo for every model in `cfg`, calibrating the
/// throughput efficiency first when the config asks for it.
SimulationResult simulate(const RunConfig& cfg);

nlohmann::json report_to_json(const RunConfig& cfg, const SimulationResult& result);
void write_report_csv(std::ostream& out, const SimulationResult& result,
                      const RunConfig& cfg);

/// x,y,z,env,d,gamma,penetration_db,pl_db,rsrp_dbm,ptx_dbm,snr_db,thr_bps,t_ul_s
void write_observations_csv(std::ostream& out, std::span<const UserObservation> observations);

/// Writes observations, report JSON and report CSV under `out_dir`. Returns
/// the files written.
std::vector<std::filesystem::path> write_simulation_outputs(const RunConfig& cfg,
                                                            const SimulationResult& result,
                                                            const std::filesystem::path& out_dir);

// ---------------------------------------------------------------------------
// Plot data from an observation dump.

struct ObservationRow {
  double x = 0.0, y = 0.0, z = 0.0;
  std::string env;
  double distance_m = 0.0;
  double gamma = 0.0;
  double penetration_db = 0.0;
  double path_loss_db = 0.0;
  double rsrp_dbm = 0.0;
  double ptx_dbm = 0.0;
  double snr_db = 0.0;
  double throughput_bps = 0.0;
  double upload_time_s = 0.0;
};

/// Empty input yields no rows. Throws FormatError on a wrong header or a
/// malformed row.
std::vector<ObservationRow> read_observations_csv(std::istream& in);

struct CdfPoint {
  double value = 0.0;
  double probability = 0.0;
};

/// Empirical CDF at each distinct value (probability = share <= value).
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

struct HistogramBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins);

/// RSRP and uplink power CDFs, gamma-vs-distance scatter, and gamma
/// histograms on either side of `breakpoint_m`. Returns the files written.
std::vector<std::filesystem::path> write_plot_data(std::span<const ObservationRow> rows,
                                                   const std::filesystem::path& out_dir,
                                                   double breakpoint_m = kDefaultBreakpoint);

}  // namespace exposim

#endif  // EXPOSIM_WORKFLOW_HPP_
