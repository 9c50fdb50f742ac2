#pragma once

#include <algorithm>
#include <cmath>

#include "azr/matrix.hpp"

namespace azr_test {

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline bool close(const azr::Matrix& a, const azr::Matrix& b, double tol) {
  return azr::max_abs_diff(a, b) <= tol;
}

}  // namespace azr_test
