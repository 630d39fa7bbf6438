// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "exposim/error.hpp"

namespace exposim {

namespace {

// Objective value standing in for log-likelihood = -inf. Finite so the
// simplex arithmetic stays well defined.
constexpr double kInfeasible = 1e100;

RegressionFit summarize(std::span<const PathLossSample> samples, double intercept,
                        double gamma) {
  RegressionFit fit;
  fit.gamma = gamma;
  fit.intercept_db = intercept;
  fit.n_points = samples.size();
  double sum = 0.0;
  for (const auto& s : samples) {
    sum += s.path_loss_db - path_loss(intercept, gamma, s.distance_m);
  }
  fit.mean_residual_db = sum / static_cast<double>(samples.size());
  double sq = 0.0;
  for (const auto& s : samples) {
    const double r =
        s.path_loss_db - path_loss(intercept, gamma, s.distance_m) - fit.mean_residual_db;
    sq += r * r;
  }
  fit.residual_std_db = std::sqrt(sq / static_cast<double>(samples.size() - 1));
  return fit;
}

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  double size = 0.0;
};

using Objective = std::function<double(std::span<const double>)>;

double objective_trampoline(const gsl_vector* v, void* params) {
  const auto& fn = *static_cast<const Objective*>(params);
  const double value = fn(std::span<const double>(v->data, v->size));
  return std::isfinite(value) ? value : kInfeasible;
}

// One Nelder-Mead run from `start`.
SimplexResult run_simplex(const Objective& fn, std::span<const double> start,
                          std::span<const double> steps, const FitOptions& options) {
  const std::size_t dim = start.size();
  gsl_multimin_function func{&objective_trampoline, dim,
                             const_cast<void*>(static_cast<const void*>(&fn))};
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* step = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    gsl_vector_set(x, i, start[i]);
    gsl_vector_set(step, i, steps[i]);
  }
  gsl_multimin_fminimizer* solver =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(solver, &func, x, step);

  SimplexResult result;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && result.iterations < options.max_iterations) {
    ++result.iterations;
    if (gsl_multimin_fminimizer_iterate(solver) != GSL_SUCCESS) break;
    result.size = gsl_multimin_fminimizer_size(solver);
    status = gsl_multimin_test_size(result.size, options.simplex_tolerance);
  }
  result.x.assign(solver->x->data, solver->x->data + dim);
  result.value = solver->fval;
  result.size = gsl_multimin_fminimizer_size(solver);

  gsl_multimin_fminimizer_free(solver);
  gsl_vector_free(step);
  gsl_vector_free(x);

  if (status != GSL_SUCCESS) {
    throw FitError("likelihood maximization did not converge", result.iterations,
                   result.size);
  }
  return result;
}

// Nelder-Mead restarted from its own optimum until the objective stops
// improving; a single run can stall on a collapsed simplex.
SimplexResult minimize(const Objective& fn, std::vector<double> start,
                       std::span<const double> steps, const FitOptions& options) {
  gsl_set_error_handler_off();
  SimplexResult best = run_simplex(fn, start, steps, options);
  for (int restart = 0; restart < 4; ++restart) {
    std::vector<double> small(steps.begin(), steps.end());
    for (auto& s : small) s *= 0.1;
    SimplexResult next = run_simplex(fn, best.x, small, options);
    const bool improved = next.value < best.value - 1e-12 * std::abs(best.value);
    next.iterations += best.iterations;
    if (next.value <= best.value) best = std::move(next);
    if (!improved) break;
  }
  if (!(best.value < kInfeasible)) {
    throw FitError("likelihood maximization found no feasible point", best.iterations,
                   best.size);
  }
  return best;
}

void check_sample(std::span<const double> xs, const FitOptions& options) {
  if (xs.size() < options.min_points) {
    throw FitError("need at least " + std::to_string(options.min_points) +
                   " points to fit, got " + std::to_string(xs.size()));
  }
  for (const double x : xs) {
    if (!std::isfinite(x)) throw FitError("non-finite value in fit input");
  }
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  if (!(*hi > *lo)) throw FitError("degenerate sample: all values identical");
}

// Hosking, Wallis & Wood (1985) probability-weighted-moment estimate.
GevParams gev_pwm_start(std::span<const double> xs) {
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double j = static_cast<double>(i);
    b0 += sorted[i];
    b1 += sorted[i] * j / (n - 1.0);
    b2 += sorted[i] * j * (j - 1.0) / ((n - 1.0) * (n - 2.0));
  }
  b0 /= n;
  b1 /= n;
  b2 /= n;
  const double c = (2.0 * b1 - b0) / (3.0 * b2 - b0) - std::log(2.0) / std::log(3.0);
  // Hosking's kappa has the opposite sign to our shape.
  double kappa = 7.8590 * c + 2.9554 * c * c;
  if (!std::isfinite(kappa)) kappa = 0.0;
  kappa = std::clamp(kappa, -0.9, 0.9);
  if (std::abs(kappa) < 1e-6) kappa = 1e-6;
  const double g = std::tgamma(1.0 + kappa);
  double scale = (2.0 * b1 - b0) * kappa / (g * (1.0 - std::pow(2.0, -kappa)));
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  const double location = b0 + scale * (g - 1.0) / kappa;
  return GevParams{-kappa, scale, location};
}

double gev_neg_log_likelihood(std::span<const double> xs, const GevParams& p) {
  double total = 0.0;
  for (const double x : xs) {
    const double lp = gev_log_pdf(p, x);
    if (!std::isfinite(lp)) return kInfeasible;
    total -= lp;
  }
  return total;
}

}  // namespace

RegressionFit fit_log_distance(std::span<const PathLossSample> samples,
                               std::optional<double> fixed_intercept_db) {
  if (samples.size() < 2) {
    throw DomainError("log-distance regression needs at least two samples");
  }
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& s : samples) {
    if (!(s.distance_m > 0.0) || !std::isfinite(s.path_loss_db)) {
      throw DomainError("path loss sample needs positive distance and finite loss");
    }
    sx += 10.0 * std::log10(s.distance_m / kReferenceDistance);
    sy += s.path_loss_db;
  }
  const double n = static_cast<double>(samples.size());
  const double mean_x = sx / n;
  const double mean_y = sy / n;

  double sxx = 0.0;
  double sxy = 0.0;
  double sxx_origin = 0.0;
  double sxy_origin = 0.0;
  for (const auto& s : samples) {
    const double x = 10.0 * std::log10(s.distance_m / kReferenceDistance);
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (s.path_loss_db - mean_y);
    if (fixed_intercept_db) {
      sxx_origin += x * x;
      sxy_origin += x * (s.path_loss_db - *fixed_intercept_db);
    }
  }
  // A single distinct distance leaves the slope unidentified.
  if (!(sxx > 1e-12 * n)) {
    throw DomainError("regression is rank deficient: all samples share one distance");
  }
  if (fixed_intercept_db) {
    return summarize(samples, *fixed_intercept_db, sxy_origin / sxx_origin);
  }
  const double gamma = sxy / sxx;
  return summarize(samples, mean_y - gamma * mean_x, gamma);
}

PleSeries extract_ple_series(std::span<const PathLossSample> samples, double intercept_db) {
  PleSeries out;
  out.points.reserve(samples.size());
  for (const auto& s : samples) {
    if (!(s.distance_m > kReferenceDistance)) {
      ++out.rejected;
      continue;
    }
    out.points.push_back({s.distance_m, extract_ple(s.path_loss_db, intercept_db, s.distance_m)});
  }
  return out;
}

BreakpointSplit split_by_breakpoint(std::span<const PleObservation> series,
                                    double breakpoint_m) {
  if (!(breakpoint_m > 0.0)) throw DomainError("breakpoint must be positive");
  BreakpointSplit out;
  for (const auto& p : series) {
    (p.distance_m < breakpoint_m ? out.near : out.far).push_back(p);
  }
  return out;
}

std::vector<double> gammas_of(std::span<const PleObservation> series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (const auto& p : series) out.push_back(p.gamma);
  return out;
}

PleDistribution fit_gev(std::span<const double> gammas, const FitOptions& options) {
  check_sample(gammas, options);
  GevParams start = gev_pwm_start(gammas);

  // Pull the shape toward Gumbel until every point is inside the support.
  for (int i = 0; i < 60 && gev_neg_log_likelihood(gammas, start) >= kInfeasible; ++i) {
    start.shape *= 0.5;
  }
  if (gev_neg_log_likelihood(gammas, start) >= kInfeasible) {
    throw FitError("no feasible GEV starting point");
  }

  // Search over (location, log scale, shape).
  const Objective objective = [gammas](std::span<const double> v) {
    return gev_neg_log_likelihood(gammas, GevParams{v[2], std::exp(v[1]), v[0]});
  };
  const std::array<double, 3> steps{0.1 * start.scale, 0.1, 0.05};
  const SimplexResult best =
      minimize(objective, {start.location, std::log(start.scale), start.shape}, steps,
               options);
  return PleDistribution::gev(best.x[2], std::exp(best.x[1]), best.x[0]);
}

PleDistribution fit_scaled_beta(std::span<const double> gammas, const FitOptions& options) {
  check_sample(gammas, options);
  double lower = 0.0;
  double upper = 0.0;
  if (options.beta_support) {
    std::tie(lower, upper) = *options.beta_support;
    if (!(lower < upper)) throw FitError("beta support needs lower < upper");
  } else {
    const auto [lo, hi] = std::minmax_element(gammas.begin(), gammas.end());
    const double pad = options.support_expansion * (*hi - *lo);
    lower = *lo - pad;
    upper = *hi + pad;
  }

  const double n = static_cast<double>(gammas.size());
  double sum_log_z = 0.0;
  double sum_log_1mz = 0.0;
  double mean = 0.0;
  for (const double g : gammas) {
    const double z = (g - lower) / (upper - lower);
    if (!(z > 0.0 && z < 1.0)) {
      throw FitError("sample value " + std::to_string(g) + " outside beta support [" +
                     std::to_string(lower) + ", " + std::to_string(upper) + "]");
    }
    sum_log_z += std::log(z);
    sum_log_1mz += std::log1p(-z);
    mean += z;
  }
  mean /= n;
  double var = 0.0;
  for (const double g : gammas) {
    const double z = (g - lower) / (upper - lower);
    var += (z - mean) * (z - mean);
  }
  var /= n - 1.0;

  // Method-of-moments start.
  double common = mean * (1.0 - mean) / var - 1.0;
  if (!(common > 0.0) || !std::isfinite(common)) common = 2.0;
  const std::vector<double> start{std::log(mean * common), std::log((1.0 - mean) * common)};

  // Search over (log alpha1, log alpha2) on sufficient statistics.
  const Objective objective = [=](std::span<const double> v) {
    const double a1 = std::exp(v[0]);
    const double a2 = std::exp(v[1]);
    const double ll = n * (std::lgamma(a1 + a2) - std::lgamma(a1) - std::lgamma(a2)) +
                      (a1 - 1.0) * sum_log_z + (a2 - 1.0) * sum_log_1mz;
    return -ll;
  };
  const std::array<double, 2> steps{0.1, 0.1};
  const SimplexResult best = minimize(objective, start, steps, options);
  return PleDistribution::scaled_beta(std::exp(best.x[0]), std::exp(best.x[1]), lower,
                                      upper);
}

double ks_statistic(std::span<const double> xs, const std::function<double(double)>& cdf) {
  if (xs.empty()) return 0.0;
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Jacobi-theta form of the CDF converges fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int j = 1; j <= 20; ++j) {
      const double odd = 2.0 * j - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    q += sign * term;
    if (term < 1e-300) break;
    sign = -sign;
  }
  return std::clamp(2.0 * q, 0.0, 1.0);
}

double ks_p_value(double d, std::size_t n) {
  const double root_n = std::sqrt(static_cast<double>(n));
  return kolmogorov_survival((root_n + 0.12 + 0.11 / root_n) * d);
}

FitReport ks_test(std::span<const double> gammas, const PleDistribution& candidate) {
  if (gammas.size() < 10) throw DomainError("KS test needs at least 10 points");
  const double d = ks_statistic(gammas, [&](double x) { return candidate.cdf(x); });
  return FitReport{candidate, d, ks_p_value(d, gammas.size()), gammas.size()};
}

}  // namespace exposim
