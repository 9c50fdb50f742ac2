#include "azr/extended.hpp"

#include <cstdio>

namespace azr {

std::string ExtendedNonneg::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

}  // namespace azr
