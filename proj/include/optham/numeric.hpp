// numeric.hpp: small shared numeric helpers.
#pragma once

#include <cmath>
#include <limits>

namespace optham {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// eta(x) = -x ln x, continuously extended by eta(0) = 0.
// Inputs below zero only arise as roundoff of nonnegative quantities.
inline double eta(double x) {
  if (x <= 0.0) return 0.0;
  return -x * std::log(x);
}

// Relative closeness with an absolute floor near zero.
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace optham
