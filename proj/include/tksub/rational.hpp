#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tksub {

// Exact rational, used wherever average degrees are compared. Degree
// thresholds like d(H) >= d(G)/2 are contracts of this library, so they are
// never allowed to wobble through floating point.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long value) : num(value), den(1) {}
  Rat(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  // "7/2" for non-integers, "3" for integers; used in CSV output.
  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline __int128 rat_cross(const Rat& a, const Rat& b) {
  return static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
}

inline bool operator==(const Rat& a, const Rat& b) { return rat_cross(a, b) == 0; }
inline bool operator!=(const Rat& a, const Rat& b) { return rat_cross(a, b) != 0; }
inline bool operator<(const Rat& a, const Rat& b) { return rat_cross(a, b) < 0; }
inline bool operator>(const Rat& a, const Rat& b) { return rat_cross(a, b) > 0; }
inline bool operator<=(const Rat& a, const Rat& b) { return rat_cross(a, b) <= 0; }
inline bool operator>=(const Rat& a, const Rat& b) { return rat_cross(a, b) >= 0; }

namespace detail {
inline long long ll_abs(long long x) { return x < 0 ? -x : x; }
}

inline Rat operator*(const Rat& a, const Rat& b) {
  // Cross-reduce before multiplying so intermediate products stay small.
  long long g1 = std::gcd(detail::ll_abs(a.num), b.den);
  long long g2 = std::gcd(detail::ll_abs(b.num), a.den);
  return Rat((a.num / g1) * (b.num / g2), (a.den / g2) * (b.den / g1));
}

inline Rat operator/(const Rat& a, const Rat& b) {
  if (b.num == 0) throw std::invalid_argument("Rat: division by zero");
  return a * Rat(b.den, b.num);
}

inline Rat operator+(const Rat& a, const Rat& b) {
  long long g = std::gcd(a.den, b.den);
  long long lcm = (a.den / g) * b.den;
  return Rat(a.num * (lcm / a.den) + b.num * (lcm / b.den), lcm);
}

inline Rat operator-(const Rat& a, const Rat& b) { return a + Rat(-b.num, b.den); }

}  // namespace tksub
