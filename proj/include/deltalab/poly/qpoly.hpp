#pragma once

#include "deltalab/poly/int_poly.hpp"

#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace deltalab {

/// Dense polynomial over Q, constant term first, no trailing zeros.
class QPoly {
public:
  QPoly() = default;
  explicit QPoly(std::vector<BigRational> c) : c_(std::move(c)) { trim(); }
  explicit QPoly(const IntPolynomial &f) {
    for (const auto &a : f.coeffs()) c_.emplace_back(a);
  }
  static QPoly constant(const BigRational &a) { return QPoly(std::vector<BigRational>{a}); }
  static QPoly x() { return QPoly(std::vector<BigRational>{0, 1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const BigRational &lc() const { return c_.back(); }
  const std::vector<BigRational> &coeffs() const { return c_; }
  BigRational coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<size_t>(i)] : BigRational(0); }

  QPoly monic() const {
    if (is_zero()) return {};
    QPoly r = *this;
    BigRational l = lc();
    for (auto &v : r.c_) v /= l;
    return r;
  }

  /// Primitive integer polynomial with positive leading coefficient.
  IntPolynomial to_primitive() const {
    BigInt den = 1;
    for (const auto &a : c_) den = lcm(den, BigInt(a.get_den()));
    std::vector<BigInt> c;
    for (const auto &a : c_) c.push_back(BigInt(a * den));
    return IntPolynomial(std::move(c)).primitive_part();
  }

  friend QPoly operator+(const QPoly &a, const QPoly &b) {
    std::vector<BigRational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return QPoly(std::move(c));
  }
  QPoly operator-() const {
    QPoly r = *this;
    for (auto &v : r.c_) v = -v;
    return r;
  }
  friend QPoly operator-(const QPoly &a, const QPoly &b) { return a + (-b); }
  friend QPoly operator*(const QPoly &a, const QPoly &b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(c));
  }
  friend QPoly operator*(const BigRational &s, const QPoly &a) {
    QPoly r = a;
    for (auto &v : r.c_) v *= s;
    r.trim();
    return r;
  }

  friend std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {QPoly{}, a};
    std::vector<BigRational> r = a.c_, q(static_cast<size_t>(a.degree() - b.degree()) + 1);
    int n = b.degree();
    for (int k = a.degree(); k >= n; --k) {
      BigRational t = r[static_cast<size_t>(k)] / b.lc();
      q[static_cast<size_t>(k - n)] = t;
      if (t == 0) continue;
      for (int i = 0; i <= n; ++i) r[static_cast<size_t>(k - n + i)] -= t * b.c_[static_cast<size_t>(i)];
    }
    r.resize(static_cast<size_t>(n));
    return {QPoly(std::move(q)), QPoly(std::move(r))};
  }
  friend QPoly operator%(const QPoly &a, const QPoly &b) { return divmod(a, b).second; }
  friend QPoly operator/(const QPoly &a, const QPoly &b) { return divmod(a, b).first; }

  BigRational eval(const BigRational &x) const {
    BigRational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  QPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigRational> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(c));
  }

  /// this(g(x))
  QPoly compose(const QPoly &g) const {
    QPoly r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + constant(*it);
    return r;
  }

  friend bool operator==(const QPoly &a, const QPoly &b) { return a.c_ == b.c_; }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigRational> c_;
};

/// Monic gcd over Q.
inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended gcd: returns (g, s, t) with s a + t b = g, g monic.
inline std::tuple<QPoly, QPoly, QPoly> xgcd(QPoly a, QPoly b) {
  QPoly s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.is_zero()) return {a, s0, t0};
  BigRational l = a.lc();
  BigRational inv = 1 / l;
  return {inv * a, inv * s0, inv * t0};
}

} // namespace deltalab
