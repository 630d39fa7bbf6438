#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "exposim/distributions.hpp"
#include "exposim/error.hpp"
#include "exposim/path_loss.hpp"
#include "exposim/random.hpp"
#include "oracles.hpp"

using namespace exposim;

TEST_CASE("free-space intercept") {
  CHECK(free_space_intercept(FrequencyBand::from_mhz(1800)) ==
        doctest::Approx(oracle::free_space_db(1.8e9)).epsilon(1e-14));
  CHECK(free_space_intercept(FrequencyBand::from_mhz(2600)) ==
        doctest::Approx(oracle::free_space_db(2.6e9)).epsilon(1e-14));
  CHECK(std::abs(free_space_intercept(1.8e9) - 37.55) < 0.005);
  CHECK(std::abs(free_space_intercept(2.6e9) - 40.75) < 0.005);
  // lambda = 4 pi metres
  CHECK(std::abs(free_space_intercept(kSpeedOfLight / (4.0 * std::numbers::pi))) < 1e-12);
  CHECK_THROWS_AS(free_space_intercept(0.0), DomainError);
  CHECK_THROWS_AS(free_space_intercept(-1.0), DomainError);
  CHECK_THROWS_AS(FrequencyBand::make(0.0, 1e6), DomainError);
}

TEST_CASE("path loss") {
  CHECK(path_loss(41.0, 2.52, 100.0) == doctest::Approx(91.4).epsilon(1e-12));
  CHECK(path_loss(37.0, 2.85, 1.0) == 37.0);
  CHECK(path_loss(41.0, 0.0, 500.0) == 41.0);
  CHECK_THROWS_AS(path_loss(41.0, 2.0, 0.0), DomainError);
  CHECK_THROWS_AS(path_loss(41.0, 2.0, -3.0), DomainError);

  SUBCASE("monotone in distance and exponent") {
    double last = path_loss(40.0, 2.5, 1.5);
    for (double d = 2.0; d < 500.0; d *= 1.3) {
      const double pl = path_loss(40.0, 2.5, d);
      CHECK(pl > last);
      last = pl;
      CHECK(path_loss(40.0, 2.6, d) > pl);
    }
  }
}

TEST_CASE("extract_ple") {
  CHECK(extract_ple(91.4, 41.0, 100.0) == doctest::Approx(2.52).epsilon(1e-12));
  CHECK(extract_ple(37.0, 37.0, 10.0) == 0.0);
  CHECK_THROWS_AS(extract_ple(40.0, 37.0, 1.0), DomainError);
  CHECK_THROWS_AS(extract_ple(40.0, 37.0, 0.5), DomainError);

  RandomStream rng(11);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double gamma = rng.uniform(0.5, 6.0);
    const double d = std::exp(rng.uniform(std::log(1.01), std::log(1000.0)));
    const double back = extract_ple(path_loss(40.75, gamma, d), 40.75, d);
    worst = std::max(worst, std::abs(back - gamma));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("GEV functions") {
  const GevParams p{-0.23, 0.93, 2.6};
  CHECK(gev_cdf(p, 2.6) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  for (double x = 0.0; x < 6.6; x += 0.37) {
    CHECK(gev_cdf(p, x) == doctest::Approx(oracle::gev_cdf(-0.23, 0.93, 2.6, x)).epsilon(1e-12));
  }
  CHECK(gev_cdf(p, 6.7) == 1.0);
  CHECK(gev_pdf(p, 6.7) == 0.0);
  for (double q : {0.01, 0.5, 0.99}) CHECK(std::abs(gev_cdf(p, gev_quantile(p, q)) - q) < 1e-9);

  // density integrates to the cdf increment
  double integral = 0.0;
  const double h = 1e-4;
  for (double x = 1.0; x < 3.0; x += h) integral += gev_pdf(p, x + h / 2) * h;
  CHECK(integral == doctest::Approx(gev_cdf(p, 3.0) - gev_cdf(p, 1.0)).epsilon(1e-6));

  const GevParams gumbel{0.0, 1.0, 0.0};
  CHECK(gev_cdf(gumbel, 0.5) == doctest::Approx(std::exp(-std::exp(-0.5))).epsilon(1e-14));
}

TEST_CASE("scaled beta functions") {
  const ScaledBetaParams p{3.0, 3.4, 2.2, 3.2};
  CHECK(beta_cdf(p, 2.2) == 0.0);
  CHECK(beta_cdf(p, 3.2) == 1.0);
  CHECK(beta_cdf(p, 1.0) == 0.0);
  CHECK(beta_cdf(p, 4.0) == 1.0);
  for (double q : {0.01, 0.5, 0.99}) CHECK(std::abs(beta_cdf(p, beta_quantile(p, q)) - q) < 1e-9);

  const ScaledBetaParams sym{4.0, 4.0, 1.0, 3.0};
  for (double t = 0.05; t < 1.0; t += 0.1) {
    CHECK(beta_pdf(sym, 2.0 - t) == doctest::Approx(beta_pdf(sym, 2.0 + t)).epsilon(1e-12));
  }
  // Beta(2, 2) on [0, 1]: pdf 6 x (1 - x), cdf 3x^2 - 2x^3
  const ScaledBetaParams b22{2.0, 2.0, 0.0, 1.0};
  CHECK(beta_pdf(b22, 0.3) == doctest::Approx(6 * 0.3 * 0.7).epsilon(1e-12));
  CHECK(beta_cdf(b22, 0.3) == doctest::Approx(3 * 0.09 - 2 * 0.027).epsilon(1e-12));
}

TEST_CASE("distribution construction rejects bad parameters") {
  CHECK_THROWS_AS(PleDistribution::gev(-0.2, 0.0, 2.0), DomainError);
  CHECK_THROWS_AS(PleDistribution::gev(-0.2, -1.0, 2.0), DomainError);
  CHECK_THROWS_AS(PleDistribution::scaled_beta(0.0, 1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(PleDistribution::scaled_beta(1.0, 1.0, 2.0, 1.0), DomainError);
  CHECK_THROWS_AS(PleDistribution::uniform(3.0, 3.0), DomainError);
  CHECK_THROWS_AS(BandedPleDistribution(PleDistribution::fixed(2), PleDistribution::fixed(3), 0.5),
                  DomainError);
}

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double lo = 1e300;
  double hi = -1e300;
};

Moments draw(const PleDistribution& dist, int n, std::uint64_t seed) {
  RandomStream rng(seed);
  double sum = 0.0;
  double sum2 = 0.0;
  Moments m;
  for (int i = 0; i < n; ++i) {
    const double x = dist.sample(rng);
    sum += x;
    sum2 += x * x;
    m.lo = std::min(m.lo, x);
    m.hi = std::max(m.hi, x);
  }
  m.mean = sum / n;
  m.variance = sum2 / n - m.mean * m.mean;
  return m;
}

}  // namespace

TEST_CASE("sampling the published exponent models") {
  constexpr int n = 100000;
  SUBCASE("2600 MHz near GEV stays below its endpoint") {
    const auto gev = PleDistribution::gev(-0.23, 0.93, 2.6);
    const double endpoint = 2.6 + 0.93 / 0.23;
    CHECK(endpoint == doctest::Approx(6.643).epsilon(1e-3));
    CHECK(gev.support().second == doctest::Approx(endpoint).epsilon(1e-14));
    const Moments m = draw(gev, n, 1);
    CHECK(m.hi < endpoint);
    const double se = std::sqrt(gev.variance() / n);
    CHECK(std::abs(m.mean - oracle::gev_mean(-0.23, 0.93, 2.6)) < 3 * se);
  }
  SUBCASE("2600 MHz far beta mean") {
    const auto beta = PleDistribution::scaled_beta(21, 18, 0, 5);
    const Moments m = draw(beta, n, 2);
    CHECK(m.lo >= 0.0);
    CHECK(m.hi <= 5.0);
    CHECK(std::abs(m.mean - 5.0 * 21 / 39) < 0.01);
    CHECK(std::abs(m.mean - 2.692) < 0.01);
    const double var = oracle::beta_variance(21, 18, 0, 5);
    CHECK(std::abs(m.mean - oracle::beta_mean(21, 18, 0, 5)) < 3 * std::sqrt(var / n));
    CHECK(std::abs(m.variance - var) / var < 0.03);
  }
  SUBCASE("1800 MHz near GEV mean") {
    const auto gev = PleDistribution::gev(-0.31, 0.42, 2.7);
    CHECK(gev.mean() == doctest::Approx(oracle::gev_mean(-0.31, 0.42, 2.7)).epsilon(1e-12));
    const Moments m = draw(gev, n, 3);
    CHECK(std::abs(m.mean - 2.84) < 0.01);
    CHECK(m.hi < 2.7 + 0.42 / 0.31);
    CHECK(std::abs(m.variance - gev.variance()) / gev.variance() < 0.03);
  }
  SUBCASE("1800 MHz far beta support") {
    const auto beta = PleDistribution::scaled_beta(3, 3.4, 2.2, 3.2);
    const Moments m = draw(beta, n, 4);
    CHECK(m.lo >= 2.2);
    CHECK(m.hi <= 3.2);
    const double var = oracle::beta_variance(3, 3.4, 2.2, 3.2);
    CHECK(std::abs(m.mean - oracle::beta_mean(3, 3.4, 2.2, 3.2)) < 3 * std::sqrt(var / n));
  }
}

TEST_CASE("banded model selects by distance") {
  const BandedPleDistribution banded(PleDistribution::fixed(2.0), PleDistribution::fixed(3.0));
  RandomStream rng(5);
  CHECK(banded.sample(59.999, rng) == 2.0);
  CHECK(banded.sample(60.0, rng) == 3.0);
  CHECK(banded.sample(60.1, rng) == 3.0);
  CHECK(banded.sample(1.0, rng) == 2.0);
  CHECK_THROWS_AS(banded.sample(0.0, rng), DomainError);
}

TEST_CASE("random streams") {
  RandomStream a(7, 0);
  RandomStream b(7, 0);
  RandomStream c(7, 1);
  bool differ = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differ |= x != c.next_u64();
  }
  CHECK(differ);

  RandomStream u(9);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);

  RandomStream g(10);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += g.gamma(0.7);
  CHECK(std::abs(sum / 100000 - 0.7) < 3 * std::sqrt(0.7 / 100000));
}
