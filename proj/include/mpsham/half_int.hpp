#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mpsham {

/// Exact half-integer quantum number, stored as twice its value so that
/// spin-1/2 arithmetic never touches floating point.
struct HalfInt {
  int twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

  static constexpr HalfInt from_int(int n) { return HalfInt(2 * n); }

  double value() const { return 0.5 * twice; }
  bool is_integer() const { return twice % 2 == 0; }

  /// Multiplet dimension 2s+1; only meaningful for s >= 0.
  int multiplicity() const { return twice + 1; }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
    return HalfInt(a.twice + b.twice);
  }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
    return HalfInt(a.twice - b.twice);
  }
  constexpr HalfInt operator-() const { return HalfInt(-twice); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

  std::string str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
  }

  /// Parses "2", "-1", "3/2", "-7/2".
  static HalfInt parse(const std::string& s);
};

/// True if m is a valid magnetic quantum number for spin s:
/// |m| <= s and s - m integer.
inline bool valid_magnetic(HalfInt s, HalfInt m) {
  return std::abs(m.twice) <= s.twice && (s.twice - m.twice) % 2 == 0;
}

/// True if (j1, j2, J) satisfies the triangle rule with integer perimeter,
/// i.e. J appears in the decomposition of j1 (x) j2.
inline bool triangle(HalfInt j1, HalfInt j2, HalfInt J) {
  return (j1.twice + j2.twice + J.twice) % 2 == 0 &&
         J.twice >= std::abs(j1.twice - j2.twice) &&
         J.twice <= j1.twice + j2.twice;
}

}  // namespace mpsham
