// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_DISTRIBUTIONS_HPP_
#define EXPOSIM_DISTRIBUTIONS_HPP_

#include <span>
#include <string_view>
#include <utility>
#include <variant>

#include "exposim/random.hpp"

namespace exposim {

// Generalized extreme value, F(x) = exp(-(1 + k z)^(-1/k)), z = (x - m) / s.
// k < 0 is the Weibull-type branch with a finite upper endpoint m - s / k;
// k = 0 is Gumbel.
struct GevParams {
  double shape = 0.0;     // k
  double scale = 1.0;     // s
  double location = 0.0;  // m
};

// Beta(alpha1, alpha2) mapped affinely onto [lower, upper].
struct ScaledBetaParams {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double lower = 0.0;
  double upper = 1.0;
};

struct UniformParams {
  double lower = 0.0;
  double upper = 1.0;
};

struct FixedValue {
  double value = 0.0;
};

double gev_pdf(const GevParams& p, double x);
double gev_log_pdf(const GevParams& p, double x);
double gev_cdf(const GevParams& p, double x);
double gev_quantile(const GevParams& p, double prob);

double beta_pdf(const ScaledBetaParams& p, double x);
double beta_log_pdf(const ScaledBetaParams& p, double x);
double beta_cdf(const ScaledBetaParams& p, double x);
double beta_quantile(const ScaledBetaParams& p, double prob);

enum class PleKind { Gev, ScaledBeta, Uniform, Fixed };

std::string_view to_string(PleKind kind);

/// Sampling distribution for the path-loss exponent. Construct through the
/// named factories, which reject parameters outside the family's domain.
class PleDistribution {
 public:
  using Params = std::variant<GevParams, ScaledBetaParams, UniformParams, FixedValue>;

  static PleDistribution gev(double shape, double scale, double location);
  static PleDistribution scaled_beta(double alpha1, double alpha2, double lower,
                                     double upper);
  static PleDistribution uniform(double lower, double upper);
  static PleDistribution fixed(double value);

  PleKind kind() const;
  const Params& params() const { return params_; }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  double quantile(double prob) const;
  double sample(RandomStream& rng) const;

  double mean() const;
  double variance() const;

  /// Closed support; infinite ends are +-infinity.
  std::pair<double, double> support() const;

  /// Sum of log densities; -infinity if any point is outside the support.
  double log_likelihood(std::span<const double> xs) const;

 private:
  explicit PleDistribution(Params params) : params_(std::move(params)) {}
  Params params_;
};

inline constexpr double kDefaultBreakpoint = 60.0;  // m

/// Two-regime exponent model: near_model below the breakpoint, far_model at
/// or beyond it.
class BandedPleDistribution {
 public:
  BandedPleDistribution(PleDistribution near_model, PleDistribution far_model,
                        double breakpoint_m = kDefaultBreakpoint);

  double breakpoint() const { return breakpoint_; }
  const PleDistribution& near_model() const { return near_; }
  const PleDistribution& far_model() const { return far_; }

  const PleDistribution& model_for(double distance_m) const {
    return distance_m < breakpoint_ ? near_ : far_;
  }

  /// Throws DomainError for distance <= 0.
  double sample(double distance_m, RandomStream& rng) const;

 private:
  PleDistribution near_;
  PleDistribution far_;
  double breakpoint_;
};

}  // namespace exposim

#endif  // EXPOSIM_DISTRIBUTIONS_HPP_
