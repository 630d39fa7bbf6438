// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_RANDOM_HPP_
#define EXPOSIM_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace exposim {

// Seeded random source. A (seed, stream) pair fully determines the sequence,
// so work item i can own stream i and results do not depend on how items are
// spread over threads. The variate generators below are written out instead
// of using <random> distributions, whose algorithms are library-specific.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Integer uniform on [0, n).
  std::uint64_t below(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

  double normal();
  double gamma(double shape);
  double beta(double alpha1, double alpha2);

 private:
  std::mt19937_64 engine_;
};

}  // namespace exposim

#endif  // EXPOSIM_RANDOM_HPP_
