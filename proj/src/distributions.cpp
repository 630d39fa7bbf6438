// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include "exposim/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "exposim/error.hpp"

namespace exposim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this |k| the GEV is evaluated through its Gumbel limit.
constexpr double kGumbelShape = 1e-12;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

// log t(x) where F(x) = exp(-t(x)). NaN outside the support.
double gev_log_t(const GevParams& p, double x) {
  const double z = (x - p.location) / p.scale;
  if (std::abs(p.shape) < kGumbelShape) return -z;
  const double arg = 1.0 + p.shape * z;
  if (!(arg > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return -std::log1p(p.shape * z) / p.shape;
}

double scaled(const ScaledBetaParams& p, double x) {
  return (x - p.lower) / (p.upper - p.lower);
}

}  // namespace

double gev_log_pdf(const GevParams& p, double x) {
  const double log_t = gev_log_t(p, x);
  if (std::isnan(log_t)) return -kInf;
  // f = t^(k+1) e^(-t) / s
  return -std::log(p.scale) + (p.shape + 1.0) * log_t - std::exp(log_t);
}

double gev_pdf(const GevParams& p, double x) { return std::exp(gev_log_pdf(p, x)); }

double gev_cdf(const GevParams& p, double x) {
  const double log_t = gev_log_t(p, x);
  if (std::isnan(log_t)) {
    // Past the upper endpoint (k < 0) or below the lower one (k > 0).
    return p.shape < 0.0 ? 1.0 : 0.0;
  }
  return std::exp(-std::exp(log_t));
}

double gev_quantile(const GevParams& p, double prob) {
  require(prob >= 0.0 && prob <= 1.0, "probability outside [0, 1]");
  const double y = -std::log(prob);  // in [0, inf]
  if (std::abs(p.shape) < kGumbelShape) return p.location - p.scale * std::log(y);
  return p.location + p.scale * std::expm1(-p.shape * std::log(y)) / p.shape;
}

double beta_log_pdf(const ScaledBetaParams& p, double x) {
  const double z = scaled(p, x);
  if (z < 0.0 || z > 1.0) return -kInf;
  const double log_norm = std::lgamma(p.alpha1) + std::lgamma(p.alpha2) -
                          std::lgamma(p.alpha1 + p.alpha2) +
                          std::log(p.upper - p.lower);
  // 0 * log(0) is taken as 0 so alpha == 1 has a finite density at the ends.
  const double left = p.alpha1 == 1.0 ? 0.0 : (p.alpha1 - 1.0) * std::log(z);
  const double right = p.alpha2 == 1.0 ? 0.0 : (p.alpha2 - 1.0) * std::log1p(-z);
  return left + right - log_norm;
}

double beta_pdf(const ScaledBetaParams& p, double x) {
  return std::exp(beta_log_pdf(p, x));
}

double beta_cdf(const ScaledBetaParams& p, double x) {
  const double z = scaled(p, x);
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return boost::math::ibeta(p.alpha1, p.alpha2, z);
}

double beta_quantile(const ScaledBetaParams& p, double prob) {
  require(prob >= 0.0 && prob <= 1.0, "probability outside [0, 1]");
  if (prob == 0.0) return p.lower;
  if (prob == 1.0) return p.upper;
  return p.lower + (p.upper - p.lower) * boost::math::ibeta_inv(p.alpha1, p.alpha2, prob);
}

std::string_view to_string(PleKind kind) {
  switch (kind) {
    case PleKind::Gev:
      return "gev";
    case PleKind::ScaledBeta:
      return "scaled_beta";
    case PleKind::Uniform:
      return "uniform";
    case PleKind::Fixed:
      return "fixed";
  }
  return "unknown";
}

PleDistribution PleDistribution::gev(double shape, double scale, double location) {
  require(std::isfinite(shape) && std::isfinite(location), "GEV parameters must be finite");
  require(scale > 0.0 && std::isfinite(scale), "GEV scale must be positive");
  return PleDistribution(GevParams{shape, scale, location});
}

PleDistribution PleDistribution::scaled_beta(double alpha1, double alpha2, double lower,
                                             double upper) {
  require(alpha1 > 0.0 && std::isfinite(alpha1), "beta alpha1 must be positive");
  require(alpha2 > 0.0 && std::isfinite(alpha2), "beta alpha2 must be positive");
  require(std::isfinite(lower) && std::isfinite(upper) && lower < upper,
          "beta support needs lower < upper");
  return PleDistribution(ScaledBetaParams{alpha1, alpha2, lower, upper});
}

PleDistribution PleDistribution::uniform(double lower, double upper) {
  require(std::isfinite(lower) && std::isfinite(upper) && lower < upper,
          "uniform support needs lower < upper");
  return PleDistribution(UniformParams{lower, upper});
}

PleDistribution PleDistribution::fixed(double value) {
  require(std::isfinite(value), "fixed exponent must be finite");
  return PleDistribution(FixedValue{value});
}

PleKind PleDistribution::kind() const {
  return std::visit(Overloaded{
                        [](const GevParams&) { return PleKind::Gev; },
                        [](const ScaledBetaParams&) { return PleKind::ScaledBeta; },
                        [](const UniformParams&) { return PleKind::Uniform; },
                        [](const FixedValue&) { return PleKind::Fixed; },
                    },
                    params_);
}

double PleDistribution::log_pdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const GevParams& p) { return gev_log_pdf(p, x); },
          [x](const ScaledBetaParams& p) { return beta_log_pdf(p, x); },
          [x](const UniformParams& p) {
            return (x < p.lower || x > p.upper) ? -kInf : -std::log(p.upper - p.lower);
          },
          [x](const FixedValue& p) { return x == p.value ? kInf : -kInf; },
      },
      params_);
}

double PleDistribution::pdf(double x) const { return std::exp(log_pdf(x)); }

double PleDistribution::cdf(double x) const {
  return std::visit(
      Overloaded{
          [x](const GevParams& p) { return gev_cdf(p, x); },
          [x](const ScaledBetaParams& p) { return beta_cdf(p, x); },
          [x](const UniformParams& p) {
            if (x <= p.lower) return 0.0;
            if (x >= p.upper) return 1.0;
            return (x - p.lower) / (p.upper - p.lower);
          },
          [x](const FixedValue& p) { return x >= p.value ? 1.0 : 0.0; },
      },
      params_);
}

double PleDistribution::quantile(double prob) const {
  require(prob >= 0.0 && prob <= 1.0, "probability outside [0, 1]");
  return std::visit(
      Overloaded{
          [prob](const GevParams& p) { return gev_quantile(p, prob); },
          [prob](const ScaledBetaParams& p) { return beta_quantile(p, prob); },
          [prob](const UniformParams& p) { return p.lower + prob * (p.upper - p.lower); },
          [](const FixedValue& p) { return p.value; },
      },
      params_);
}

double PleDistribution::sample(RandomStream& rng) const {
  return std::visit(
      Overloaded{
          [&rng](const GevParams& p) { return gev_quantile(p, rng.uniform()); },
          [&rng](const ScaledBetaParams& p) {
            return p.lower + (p.upper - p.lower) * rng.beta(p.alpha1, p.alpha2);
          },
          [&rng](const UniformParams& p) { return rng.uniform(p.lower, p.upper); },
          [](const FixedValue& p) { return p.value; },
      },
      params_);
}

double PleDistribution::mean() const {
  return std::visit(
      Overloaded{
          [](const GevParams& p) {
            if (p.shape >= 1.0) return kInf;
            if (std::abs(p.shape) < kGumbelShape) {
              return p.location + p.scale * std::numbers::egamma;
            }
            return p.location + p.scale * (std::tgamma(1.0 - p.shape) - 1.0) / p.shape;
          },
          [](const ScaledBetaParams& p) {
            return p.lower + (p.upper - p.lower) * p.alpha1 / (p.alpha1 + p.alpha2);
          },
          [](const UniformParams& p) { return 0.5 * (p.lower + p.upper); },
          [](const FixedValue& p) { return p.value; },
      },
      params_);
}

double PleDistribution::variance() const {
  return std::visit(
      Overloaded{
          [](const GevParams& p) {
            if (p.shape >= 0.5) return kInf;
            if (std::abs(p.shape) < kGumbelShape) {
              return p.scale * p.scale * std::numbers::pi * std::numbers::pi / 6.0;
            }
            const double g1 = std::tgamma(1.0 - p.shape);
            const double g2 = std::tgamma(1.0 - 2.0 * p.shape);
            return p.scale * p.scale * (g2 - g1 * g1) / (p.shape * p.shape);
          },
          [](const ScaledBetaParams& p) {
            const double sum = p.alpha1 + p.alpha2;
            const double width = p.upper - p.lower;
            return width * width * p.alpha1 * p.alpha2 / (sum * sum * (sum + 1.0));
          },
          [](const UniformParams& p) {
            const double width = p.upper - p.lower;
            return width * width / 12.0;
          },
          [](const FixedValue&) { return 0.0; },
      },
      params_);
}

std::pair<double, double> PleDistribution::support() const {
  return std::visit(
      Overloaded{
          [](const GevParams& p) -> std::pair<double, double> {
            if (std::abs(p.shape) < kGumbelShape) return {-kInf, kInf};
            const double endpoint = p.location - p.scale / p.shape;
            if (p.shape < 0.0) return {-kInf, endpoint};
            return {endpoint, kInf};
          },
          [](const ScaledBetaParams& p) -> std::pair<double, double> {
            return {p.lower, p.upper};
          },
          [](const UniformParams& p) -> std::pair<double, double> {
            return {p.lower, p.upper};
          },
          [](const FixedValue& p) -> std::pair<double, double> {
            return {p.value, p.value};
          },
      },
      params_);
}

double PleDistribution::log_likelihood(std::span<const double> xs) const {
  double total = 0.0;
  for (const double x : xs) {
    const double lp = log_pdf(x);
    if (lp == -kInf) return -kInf;
    total += lp;
  }
  return total;
}

BandedPleDistribution::BandedPleDistribution(PleDistribution near_model,
                                             PleDistribution far_model,
                                             double breakpoint_m)
    : near_(std::move(near_model)), far_(std::move(far_model)), breakpoint_(breakpoint_m) {
  // Reference distance is 1 m.
  require(breakpoint_m > 1.0 && std::isfinite(breakpoint_m),
          "breakpoint must lie beyond the reference distance");
}

double BandedPleDistribution::sample(double distance_m, RandomStream& rng) const {
  require(distance_m > 0.0, "distance must be positive");
  return model_for(distance_m).sample(rng);
}

}  // namespace exposim
