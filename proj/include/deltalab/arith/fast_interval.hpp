#pragma once

#include "deltalab/arith/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace deltalab {

/// Hardware-double interval. Each result is widened by one ulp on both sides,
/// which dominates the half-ulp error of round-to-nearest. This is the
/// 53-bit rung below the MPFR precision ladder.
struct FastInterval {
  double lo = 0.0;
  double hi = 0.0;

  FastInterval() = default;
  FastInterval(double l, double h) : lo(l), hi(h) {}
  static FastInterval point(double x) { return {x, x}; }

  static FastInterval from_integer(const BigInt &z) {
    double d = z.get_d(); // truncates toward zero
    if (BigInt(d) == z) return point(d);
    return {down(d), up(d)};
  }
  static FastInterval from_int64(long long z) {
    double d = static_cast<double>(z);
    if (static_cast<long long>(d) == z) return point(d);
    return {down(d), up(d)};
  }

  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
  static FastInterval widen(double l, double h) { return {down(l), up(h)}; }

  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
  double mid() const { return 0.5 * (lo + hi); }

  friend FastInterval operator+(FastInterval a, FastInterval b) {
    if (a.lo == a.hi && b.lo == b.hi) {
      // TwoSum: err is the exact rounding error of s
      double s = a.lo + b.lo;
      double bb = s - a.lo;
      double err = (a.lo - (s - bb)) + (b.lo - bb);
      if (err == 0.0 && std::isfinite(s)) return point(s);
    }
    return widen(a.lo + b.lo, a.hi + b.hi);
  }
  friend FastInterval operator-(FastInterval a, FastInterval b) { return a + FastInterval{-b.hi, -b.lo}; }
  FastInterval operator-() const { return {-hi, -lo}; }

  friend FastInterval operator*(FastInterval a, FastInterval b) {
    double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    double l = std::min(std::min(p1, p2), std::min(p3, p4));
    double h = std::max(std::max(p1, p2), std::max(p3, p4));
    if (a.lo == a.hi && b.lo == b.hi && std::fma(a.lo, b.lo, -l) == 0.0) return point(l);
    return widen(l, h);
  }

  friend FastInterval operator/(FastInterval a, FastInterval b) {
    if (b.contains_zero())
      return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return widen(std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4)));
  }

  FastInterval sqr() const {
    double a = lo * lo, b = hi * hi;
    if (contains_zero()) return {0.0, up(std::max(a, b))};
    return widen(std::min(a, b), std::max(a, b));
  }
};

inline FastInterval sqrt(FastInterval x) {
  double l = x.lo <= 0.0 ? 0.0 : FastInterval::down(std::sqrt(x.lo));
  return {std::max(0.0, l), FastInterval::up(std::sqrt(std::max(0.0, x.hi)))};
}

} // namespace deltalab
