#pragma once

#include <cmath>
#include <compare>
#include <cstdlib>
#include <string>

#include "helikin/errors.hpp"

namespace helikin {

/// Integer or half-integer stored as twice its value, so index arithmetic
/// never drifts through floating point.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int n) { return HalfInt(2 * n); }

  /// Accepts only values within 1e-9 of a multiple of 1/2.
  static HalfInt from_double(double x) {
    const double t = 2.0 * x;
    const double r = std::round(t);
    if (!std::isfinite(x) || std::abs(t - r) > 1e-9)
      throw ValidationError("value " + std::to_string(x) + " is not an integer or half-integer");
    return HalfInt(static_cast<int>(r));
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Only meaningful when is_integer().
  constexpr int as_int() const { return twice_ / 2; }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

}  // namespace helikin
