#pragma once

#include "deltalab/arith/rational.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deltalab {

/// Dense polynomial over Z, constant term first. The coefficient vector never
/// carries trailing zeros; the zero polynomial is the empty vector.
class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }
  static IntPolynomial from_int64(const std::vector<long long> &coeffs) {
    std::vector<BigInt> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.emplace_back(static_cast<long>(v));
    return IntPolynomial(std::move(c));
  }
  static IntPolynomial monomial(const BigInt &a, int k) {
    std::vector<BigInt> c(static_cast<size_t>(k) + 1);
    c[static_cast<size_t>(k)] = a;
    return IntPolynomial(std::move(c));
  }
  static IntPolynomial constant(const BigInt &a) { return IntPolynomial(std::vector<BigInt>{a}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const BigInt &lc() const { return c_.back(); }
  const std::vector<BigInt> &coeffs() const { return c_; }
  BigInt coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<size_t>(i)] : BigInt(0); }
  const BigInt &operator[](size_t i) const { return c_[i]; }

  BigInt content() const {
    BigInt g = 0;
    for (const auto &a : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    return g;
  }

  /// Content 1 and positive leading coefficient.
  IntPolynomial primitive_part() const {
    if (is_zero()) return {};
    BigInt g = content();
    if (lc() < 0) g = -g;
    return divexact(g);
  }
  bool is_primitive() const { return !is_zero() && content() == 1; }

  IntPolynomial divexact(const BigInt &d) const {
    std::vector<BigInt> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) mpz_divexact(c[i].get_mpz_t(), c_[i].get_mpz_t(), d.get_mpz_t());
    return IntPolynomial(std::move(c));
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(c));
  }

  /// x^n f(1/x)
  IntPolynomial reversed() const {
    std::vector<BigInt> c(c_.rbegin(), c_.rend());
    return IntPolynomial(std::move(c));
  }

  /// f(-x)
  IntPolynomial negate_x() const {
    std::vector<BigInt> c = c_;
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return IntPolynomial(std::move(c));
  }

  /// f(a*x)
  IntPolynomial scale_x(const BigInt &a) const {
    std::vector<BigInt> c = c_;
    BigInt p = 1;
    for (auto &v : c) {
      v *= p;
      p *= a;
    }
    return IntPolynomial(std::move(c));
  }

  /// f(x + a)
  IntPolynomial shift(const BigInt &a) const {
    std::vector<BigInt> c = c_;
    int n = degree();
    for (int i = 0; i < n; ++i)
      for (int j = n - 1; j >= i; --j) c[static_cast<size_t>(j)] += a * c[static_cast<size_t>(j) + 1];
    return IntPolynomial(std::move(c));
  }

  BigInt eval(const BigInt &x) const {
    BigInt r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  BigRational eval(const BigRational &x) const {
    BigRational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + BigRational(*it);
    return r;
  }

  /// Monic associate of a primitive polynomial with lc a: a^{n-1} f(x/a).
  IntPolynomial monic_associate() const {
    int n = degree();
    std::vector<BigInt> c(c_.size());
    BigInt a = lc();
    for (int i = 0; i <= n; ++i) c[static_cast<size_t>(i)] = c_[static_cast<size_t>(i)] * deltalab::pow(a, static_cast<unsigned long>(n - i)) / a;
    return IntPolynomial(std::move(c));
  }

  IntPolynomial operator-() const {
    std::vector<BigInt> c = c_;
    for (auto &v : c) v = -v;
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator+(const IntPolynomial &a, const IntPolynomial &b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator-(const IntPolynomial &a, const IntPolynomial &b) { return a + (-b); }
  friend IntPolynomial operator*(const IntPolynomial &a, const IntPolynomial &b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) mpz_addmul(c[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    return IntPolynomial(std::move(c));
  }
  friend IntPolynomial operator*(const BigInt &s, const IntPolynomial &a) {
    std::vector<BigInt> c = a.c_;
    for (auto &v : c) v *= s;
    return IntPolynomial(std::move(c));
  }
  IntPolynomial pow(unsigned k) const {
    IntPolynomial r = constant(1), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  friend bool operator==(const IntPolynomial &a, const IntPolynomial &b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPolynomial &a, const IntPolynomial &b) { return !(a == b); }

  /// Pseudo-division: lc(b)^{deg a - deg b + 1} a = q b + r.
  friend std::pair<IntPolynomial, IntPolynomial> pseudo_divmod(const IntPolynomial &a, const IntPolynomial &b) {
    if (b.is_zero()) throw std::domain_error("pseudo-division by zero polynomial");
    int m = a.degree(), n = b.degree();
    if (m < n) return {IntPolynomial{}, a};
    std::vector<BigInt> r = a.c_, q(static_cast<size_t>(m - n) + 1);
    const BigInt &l = b.lc();
    for (int k = m; k >= n; --k) {
      BigInt t = r[static_cast<size_t>(k)];
      for (auto &v : q) v *= l;
      q[static_cast<size_t>(k - n)] += t;
      for (int i = 0; i < k; ++i) r[static_cast<size_t>(i)] *= l;
      r[static_cast<size_t>(k)] = 0;
      for (int i = 0; i < n; ++i) r[static_cast<size_t>(k - n + i)] -= t * b.c_[static_cast<size_t>(i)];
    }
    r.resize(static_cast<size_t>(n));
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
  }

  /// Exact division over Z; nullopt-like (false) when b does not divide a.
  friend bool divides(const IntPolynomial &b, const IntPolynomial &a, IntPolynomial *quotient = nullptr) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) {
      if (quotient) *quotient = {};
      return true;
    }
    int m = a.degree(), n = b.degree();
    if (m < n) return false;
    std::vector<BigInt> r = a.c_, q(static_cast<size_t>(m - n) + 1);
    for (int k = m; k >= n; --k) {
      BigInt &t = r[static_cast<size_t>(k)];
      if (t == 0) continue;
      if (!mpz_divisible_p(t.get_mpz_t(), b.lc().get_mpz_t())) return false;
      BigInt qq;
      mpz_divexact(qq.get_mpz_t(), t.get_mpz_t(), b.lc().get_mpz_t());
      q[static_cast<size_t>(k - n)] = qq;
      for (int i = 0; i <= n; ++i) r[static_cast<size_t>(k - n + i)] -= qq * b.c_[static_cast<size_t>(i)];
    }
    for (int i = 0; i < n; ++i)
      if (r[static_cast<size_t>(i)] != 0) return false;
    if (quotient) *quotient = IntPolynomial(std::move(q));
    return true;
  }

  /// Canonical text "a_d x^d + ... + a_0".
  std::string to_string(const std::string &var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const BigInt &a = c_[static_cast<size_t>(i)];
      if (a == 0) continue;
      BigInt mag = abs(a);
      if (out.empty())
        out += a < 0 ? "-" : "";
      else
        out += a < 0 ? " - " : " + ";
      if (i == 0 || mag != 1) out += mag.get_str();
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

  /// Parses sums of terms like "3x^2", "-x", "2*x^3", "7". Any single
  /// letter is accepted as the variable.
  static IntPolynomial parse(const std::string &text) {
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    std::map<int, BigInt> terms;
    size_t i = 0;
    char var = 0;
    bool first = true;
    while (i < s.size()) {
      int sign = 1;
      if (s[i] == '+' || s[i] == '-') {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      } else if (!first) {
        throw std::invalid_argument("malformed polynomial '" + text + "'");
      }
      first = false;
      std::string digits;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
      BigInt coef = digits.empty() ? BigInt(1) : BigInt(digits);
      if (i < s.size() && s[i] == '*') ++i;
      int power = 0;
      if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
        if (var && s[i] != var) throw std::invalid_argument("more than one variable in '" + text + "'");
        var = s[i++];
        power = 1;
        if (i < s.size() && (s[i] == '^' || (s[i] == '*' && i + 1 < s.size() && s[i + 1] == '*'))) {
          i += s[i] == '^' ? 1 : 2;
          std::string e;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e += s[i++];
          if (e.empty()) throw std::invalid_argument("missing exponent in '" + text + "'");
          power = std::stoi(e);
        }
      } else if (digits.empty()) {
        throw std::invalid_argument("malformed polynomial '" + text + "'");
      }
      terms[power] += sign * coef;
    }
    int deg = terms.empty() ? -1 : terms.rbegin()->first;
    std::vector<BigInt> c(static_cast<size_t>(deg + 1));
    for (auto &[k, v] : terms) c[static_cast<size_t>(k)] = v;
    return IntPolynomial(std::move(c));
  }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

/// Order used for canonical sorting of factors: degree, then coefficients
/// from the constant term upward.
inline bool canonical_less(const IntPolynomial &a, const IntPolynomial &b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = 0; i <= a.degree(); ++i) {
    int c = cmp(a[static_cast<size_t>(i)], b[static_cast<size_t>(i)]);
    if (c != 0) return c < 0;
  }
  return false;
}

inline BigInt max_norm(const IntPolynomial &f) {
  BigInt m = 0;
  for (const auto &a : f.coeffs())
    if (abs(a) > m) m = abs(a);
  return m;
}

/// Ceiling of the Euclidean coefficient norm.
inline BigInt l2_norm_ceil(const IntPolynomial &f) {
  BigInt s = 0;
  for (const auto &a : f.coeffs()) s += a * a;
  BigInt r = isqrt(s);
  if (r * r < s) r += 1;
  return r;
}

} // namespace deltalab
