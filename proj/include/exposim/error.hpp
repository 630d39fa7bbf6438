// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_ERROR_HPP_
#define EXPOSIM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace exposim {

/// Argument outside the mathematical domain of an operation
/// (non-positive frequency, distance at the reference point, bad coordinates).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input data that cannot be interpreted: unreadable header, bad schema,
/// malformed model or config file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nothing usable survived filtering.
class EmptyInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distribution fit failure. Carries the optimizer state when the failure
/// came from the likelihood maximization.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what, int iterations = 0,
                    double simplex_size = 0.0)
      : std::runtime_error(what),
        iterations_(iterations),
        simplex_size_(simplex_size) {}

  int iterations() const noexcept { return iterations_; }
  double simplex_size() const noexcept { return simplex_size_; }

 private:
  int iterations_;
  double simplex_size_;
};

}  // namespace exposim

#endif  // EXPOSIM_ERROR_HPP_
