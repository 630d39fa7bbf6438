// Closed-form reference values computed without the library.
#ifndef EXPOSIM_TESTS_ORACLES_HPP_
#define EXPOSIM_TESTS_ORACLES_HPP_

#include <cmath>
#include <numbers>

namespace oracle {

inline double free_space_db(double carrier_hz) {
  const double lambda = 299792458.0 / carrier_hz;
  return 20.0 * std::log10(4.0 * std::numbers::pi / lambda);
}

inline double aperture(double carrier_hz) {
  const double lambda = 299792458.0 / carrier_hz;
  return 4.0 * std::numbers::pi / (lambda * lambda);
}

// GEV mean m + s (Gamma(1 - k) - 1) / k, k != 0.
inline double gev_mean(double k, double s, double m) {
  return m + s * (std::tgamma(1.0 - k) - 1.0) / k;
}

inline double gev_cdf(double k, double s, double m, double x) {
  const double t = 1.0 + k * (x - m) / s;
  if (t <= 0.0) return k < 0.0 ? 1.0 : 0.0;
  return std::exp(-std::pow(t, -1.0 / k));
}

inline double beta_mean(double a1, double a2, double lo, double hi) {
  return lo + (hi - lo) * a1 / (a1 + a2);
}

inline double beta_variance(double a1, double a2, double lo, double hi) {
  const double s = a1 + a2;
  return (hi - lo) * (hi - lo) * a1 * a2 / (s * s * (s + 1.0));
}

inline double haversine(double lat1, double lon1, double lat2, double lon2) {
  constexpr double r = 6371008.8;
  const double rad = std::numbers::pi / 180.0;
  const double dphi = (lat2 - lat1) * rad;
  const double dl = (lon2 - lon1) * rad;
  const double a = std::pow(std::sin(dphi / 2), 2) +
                   std::cos(lat1 * rad) * std::cos(lat2 * rad) * std::pow(std::sin(dl / 2), 2);
  return 2.0 * r * std::asin(std::sqrt(a));
}

inline double relative(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace oracle

#endif  // EXPOSIM_TESTS_ORACLES_HPP_
