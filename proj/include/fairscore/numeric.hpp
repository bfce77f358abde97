// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <system_error>

namespace fairscore {

// Neumaier-compensated sum. Keeps accumulated rounding well below the
// 1e-12 tolerances used by the balance and weight invariants.
inline double stable_sum(std::span<const double> xs) noexcept {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

inline double mean(std::span<const double> xs) noexcept {
  return xs.empty() ? 0.0 : stable_sum(xs) / static_cast<double>(xs.size());
}

// Shortest round-trip decimal form, locale-independent. Used everywhere a
// double reaches a file so output is byte-deterministic.
inline std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace fairscore
