// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_FITTING_HPP_
#define EXPOSIM_FITTING_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exposim/distributions.hpp"
#include "exposim/path_loss.hpp"

namespace exposim {

struct PathLossSample {
  double distance_m = 0.0;
  double path_loss_db = 0.0;
  FrequencyBand band;
  std::string tool;
  double timestamp_s = 0.0;
};

struct RegressionFit {
  double gamma = 0.0;
  double intercept_db = 0.0;
  // Measured minus modelled path loss.
  double mean_residual_db = 0.0;
  double residual_std_db = 0.0;
  std::size_t n_points = 0;
};

/// Least squares of path loss against 10 log10(d / d0). With a fixed
/// intercept only the exponent is estimated, and the residual mean is then
/// generally nonzero. Throws DomainError with fewer than two samples or when
/// the design is rank deficient (a single distance).
RegressionFit fit_log_distance(std::span<const PathLossSample> samples,
                               std::optional<double> fixed_intercept_db = std::nullopt);

struct PleObservation {
  double distance_m = 0.0;
  double gamma = 0.0;
};

struct PleSeries {
  std::vector<PleObservation> points;
  // Samples at or inside the reference distance.
  std::size_t rejected = 0;
};

PleSeries extract_ple_series(std::span<const PathLossSample> samples, double intercept_db);

struct BreakpointSplit {
  std::vector<PleObservation> near;  // distance < breakpoint
  std::vector<PleObservation> far;   // distance >= breakpoint
};

BreakpointSplit split_by_breakpoint(std::span<const PleObservation> series,
                                    double breakpoint_m = kDefaultBreakpoint);

std::vector<double> gammas_of(std::span<const PleObservation> series);

struct FitOptions {
  std::size_t min_points = 50;
  int max_iterations = 20000;
  // Nelder-Mead stops once the simplex characteristic size drops below this.
  double simplex_tolerance = 1e-9;
  // Scaled beta only. When set, the support is taken as given and only the
  // shapes are estimated. Otherwise it is the sample range widened by
  // `support_expansion` of its width on each side.
  std::optional<std::pair<double, double>> beta_support;
  double support_expansion = 0.005;
};

/// Maximum-likelihood GEV fit, started from probability-weighted moments.
PleDistribution fit_gev(std::span<const double> gammas, const FitOptions& options = {});

/// Maximum-likelihood scaled beta fit, started from the method of moments.
PleDistribution fit_scaled_beta(std::span<const double> gammas,
                                const FitOptions& options = {});

struct FitReport {
  PleDistribution candidate;
  double ks_statistic = 0.0;
  double ks_p_value = 0.0;
  std::size_t n_points = 0;
};

/// sup |F_n(x) - F(x)| over the sample, evaluated at both sides of each jump.
double ks_statistic(std::span<const double> xs, const std::function<double(double)>& cdf);

/// Kolmogorov survival function, P(K > lambda).
double kolmogorov_survival(double lambda);

/// Asymptotic one-sample p-value for statistic `d` on `n` points.
double ks_p_value(double d, std::size_t n);

/// One-sample KS test against `candidate`. Requires at least 10 points.
FitReport ks_test(std::span<const double> gammas, const PleDistribution& candidate);

}  // namespace exposim

#endif  // EXPOSIM_FITTING_HPP_
