// Copyright 2026 The expose-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPOSIM_SRC_NUMBER_FORMAT_HPP_
#define EXPOSIM_SRC_NUMBER_FORMAT_HPP_

#include <array>
#include <charconv>
#include <string>

namespace exposim::detail {

// Shortest representation that parses back to the same double.
inline std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace exposim::detail

#endif  // EXPOSIM_SRC_NUMBER_FORMAT_HPP_
