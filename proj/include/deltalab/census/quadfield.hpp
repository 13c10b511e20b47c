#pragma once

#include "deltalab/arith/intfactor.hpp"
#include "deltalab/fields/number_field.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace deltalab {

/// Sign times the product of primes dividing n to an odd power.
inline BigInt squarefree_part(const BigInt &n) {
  if (n == 0) throw std::domain_error("squarefree_part: zero");
  BigInt r = n < 0 ? BigInt(-1) : BigInt(1);
  for (const auto &[p, e] : factor_integer(abs(n)))
    if (e % 2) r *= p;
  return r;
}

inline bool is_fundamental_discriminant(long d) {
  if (d == 0 || d == 1) return false;
  long r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree_part(BigInt(d)) == d;
  if (r != 0) return false;
  long m = d / 4;
  long mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree_part(BigInt(m)) == m;
}

/// a + b sqrt(m), exact.
struct QuadElt {
  BigRational a, b;
  bool is_zero() const { return a == 0 && b == 0; }
  friend bool operator==(const QuadElt &, const QuadElt &) = default;
};

/// Q(sqrt(m)), m squarefree, with integral basis (1, w):
/// w = sqrt(m), or (1 + sqrt(m))/2 when m = 1 mod 4; w^2 = t w + s.
class QuadField {
public:
  QuadField() = default;
  explicit QuadField(long m) : m_(m) {
    if (m == 0 || m == 1 || squarefree_part(BigInt(m)) != m)
      throw std::domain_error("QuadField: m must be squarefree and different from 0, 1");
    if (((m % 4) + 4) % 4 == 1) {
      t_ = 1;
      s_ = (m - 1) / 4;
      disc_ = m;
    } else {
      t_ = 0;
      s_ = m;
      disc_ = 4 * m;
    }
  }

  /// The quadratic field generated by a root of a degree-2 polynomial.
  static QuadField of(const IntPolynomial &f) {
    if (f.degree() != 2) throw std::domain_error("QuadField: degree-2 polynomial required");
    BigInt d = f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
    if (deltalab::is_square(d)) throw std::domain_error("QuadField: reducible polynomial");
    BigInt m = squarefree_part(d);
    if (!m.fits_slong_p()) throw std::domain_error("QuadField: radicand too large");
    return QuadField(m.get_si());
  }

  long m() const { return m_; }
  long t() const { return t_; }
  long s() const { return s_; }
  long discriminant() const { return disc_; }
  bool is_real() const { return m_ > 0; }
  IntPolynomial defining_poly() const { return t_ ? IntPolynomial{-s_, -1, 1} : IntPolynomial{-m_, 0, 1}; }

  /// x + y w
  QuadElt elt(const BigInt &x, const BigInt &y) const {
    if (t_) return {BigRational(x) + BigRational(y, 2), BigRational(y, 2)};
    return {BigRational(x), BigRational(y)};
  }
  /// Integral coordinates (x, y) of an element of O_F.
  std::pair<BigInt, BigInt> coords(const QuadElt &e) const {
    BigRational y = t_ ? 2 * e.b : e.b;
    BigRational x = e.a - (t_ ? BigRational(y / 2) : BigRational(0));
    if (x.get_den() != 1 || y.get_den() != 1) throw std::domain_error("QuadField: element is not integral");
    return {BigInt(x), BigInt(y)};
  }

  QuadElt conj(const QuadElt &e) const { return {e.a, -e.b}; }
  QuadElt mul(const QuadElt &u, const QuadElt &v) const { return {u.a * v.a + m_ * u.b * v.b, u.a * v.b + u.b * v.a}; }
  BigRational norm(const QuadElt &e) const { return e.a * e.a - m_ * e.b * e.b; }
  BigRational trace(const QuadElt &e) const { return 2 * e.a; }

  /// Real embeddings (real F) or the complex embedding (imaginary F).
  std::pair<double, double> embeddings(const QuadElt &e) const {
    double r = std::sqrt(std::fabs(static_cast<double>(m_)));
    return {e.a.get_d() + e.b.get_d() * r, e.a.get_d() - e.b.get_d() * r};
  }
  std::complex<double> complex_embedding(const QuadElt &e) const {
    double r = std::sqrt(std::fabs(static_cast<double>(m_)));
    return m_ > 0 ? std::complex<double>(e.a.get_d() + e.b.get_d() * r, 0.0)
                  : std::complex<double>(e.a.get_d(), e.b.get_d() * r);
  }

  bool is_square(const QuadElt &e) const {
    if (e.is_zero()) return true;
    if (e.b == 0) return deltalab::is_square(e.a) || deltalab::is_square(e.a / m_);
    BigRational n = norm(e);
    if (!deltalab::is_square(n)) return false;
    BigRational r = sqrt_exact(n);
    for (const BigRational &rr : {r, BigRational(-r)}) {
      BigRational s2 = (e.a + rr) / 2;
      if (s2 <= 0 || !deltalab::is_square(s2)) continue;
      BigRational s = sqrt_exact(s2), t = e.b / (2 * s);
      if (s * s + m_ * t * t == e.a) return true;
    }
    return false;
  }

  /// F(sqrt(b1)) and F(sqrt(b2)) isomorphic over Q.
  bool same_kummer_class(const QuadElt &b1, const QuadElt &b2) const {
    return is_square(mul(b1, b2)) || is_square(mul(b1, conj(b2)));
  }

  /// Fundamental unit > 1 of a real field, from the continued fraction of -conj(w).
  QuadElt fundamental_unit() const {
    if (m_ < 0) throw std::domain_error("fundamental_unit: imaginary field");
    BigInt r = isqrt(BigInt(m_));
    // theta = (P + sqrt m)/Q
    BigInt P = t_ ? BigInt(-1) : BigInt(0), Q = t_ ? BigInt(2) : BigInt(1);
    BigInt p0 = 1, q0 = 0, p1, q1;
    bool first = true;
    for (int it = 0; it < 100000; ++it) {
      BigInt a;
      if (Q > 0)
        mpz_fdiv_q(a.get_mpz_t(), BigInt(P + r).get_mpz_t(), Q.get_mpz_t());
      else {
        BigInt aq = -Q;
        mpz_fdiv_q(a.get_mpz_t(), BigInt(P + r).get_mpz_t(), aq.get_mpz_t());
        a = -(a + 1);
      }
      BigInt p, q;
      if (first) {
        p = a;
        q = 1;
        first = false;
      } else {
        p = a * p1 + p0;
        q = a * q1 + q0;
      }
      p0 = p1;
      q0 = q1;
      p1 = p;
      q1 = q;
      if (q > 0 && p >= 0) {
        BigInt n = p * p + t_ * p * q - s_ * q * q;
        if (n == 1 || n == -1) return elt(p, q);
      }
      P = a * Q - P;
      Q = (BigInt(m_) - P * P) / Q;
    }
    throw std::runtime_error("fundamental_unit: continued fraction did not close");
  }

  /// Representatives of O_F^* modulo squares.
  std::vector<QuadElt> units_mod_squares() const {
    if (m_ > 0) {
      QuadElt e = fundamental_unit();
      return {{1, 0}, {-1, 0}, e, {-e.a, -e.b}};
    }
    if (m_ == -1) return {{1, 0}, {0, 1}};
    return {{1, 0}, {-1, 0}};
  }

  /// floor of the Minkowski bound.
  long minkowski_floor() const {
    double b = m_ > 0 ? std::sqrt(static_cast<double>(disc_)) / 2.0
                      : 2.0 * std::sqrt(static_cast<double>(-disc_)) / 3.14159265358979323846;
    return std::max(1L, static_cast<long>(std::floor(b * (1 + 1e-12))));
  }

  /// Integer defining polynomial of F(sqrt(beta)), beta in O_F not a square.
  IntPolynomial kummer_poly(const QuadElt &beta) const {
    if (is_square(beta)) throw std::domain_error("kummer_poly: beta is a square in F");
    if (beta.b != 0) {
      BigRational tr = trace(beta), n = norm(beta);
      if (tr.get_den() != 1 || n.get_den() != 1) throw std::domain_error("kummer_poly: beta is not integral");
      return IntPolynomial(std::vector<BigInt>{BigInt(n), 0, BigInt(-tr), 0, 1});
    }
    // sqrt(r) + sqrt(m)
    BigInt r(beta.a);
    return IntPolynomial(std::vector<BigInt>{(r - m_) * (r - m_), 0, -2 * (r + m_), 0, 1});
  }

  friend bool operator==(const QuadField &x, const QuadField &y) { return x.m_ == y.m_; }

private:
  long m_ = 2, t_ = 0, s_ = 2, disc_ = 8;
};

} // namespace deltalab
