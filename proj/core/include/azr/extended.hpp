#pragma once

#include <limits>
#include <string>

#include "azr/errors.hpp"

namespace azr {

/// A value in [0, ∞]. Arithmetic follows max/plus conventions with 0·∞ = 0.
class ExtendedNonneg {
 public:
  constexpr ExtendedNonneg() = default;

  /// Throws DomainError for negative or NaN payloads. Values in [-1e-300, 0) are
  /// not special-cased; callers clamp round-off before constructing.
  static ExtendedNonneg finite(double v) {
    if (!(v >= 0.0) || v == std::numeric_limits<double>::infinity()) {
      throw DomainError("ExtendedNonneg::finite requires a finite value >= 0, got " +
                        std::to_string(v));
    }
    ExtendedNonneg e;
    e.value_ = v;
    return e;
  }
  static constexpr ExtendedNonneg infinity() {
    ExtendedNonneg e;
    e.infinite_ = true;
    return e;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }
  /// Finite payload; throws for ∞.
  double value() const {
    if (infinite_) throw DomainError("ExtendedNonneg::value on +inf");
    return value_;
  }
  /// IEEE view (∞ maps to +inf).
  constexpr double as_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend ExtendedNonneg operator+(ExtendedNonneg a, ExtendedNonneg b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ + b.value_);
  }
  friend ExtendedNonneg operator*(ExtendedNonneg a, ExtendedNonneg b) {
    if ((a.is_finite() && a.value_ == 0.0) || (b.is_finite() && b.value_ == 0.0)) return finite(0.0);
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ * b.value_);
  }
  friend ExtendedNonneg max(ExtendedNonneg a, ExtendedNonneg b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return finite(a.value_ < b.value_ ? b.value_ : a.value_);
  }
  friend constexpr bool operator==(const ExtendedNonneg& a, const ExtendedNonneg& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(const ExtendedNonneg& a, const ExtendedNonneg& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

  /// "inf" or the shortest round-trip decimal.
  std::string to_string() const;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace azr
