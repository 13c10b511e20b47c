#pragma once

#include "deltalab/fields/round2.hpp"
#include "deltalab/poly/qpoly.hpp"
#include "deltalab/poly/roots.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deltalab {

/// Isomorphism-class representative of Q[x]/(f).
struct NumberField {
  IntPolynomial defining_poly;
  int degree = 0;
  int r1 = 0, r2 = 0;
  BigInt discriminant;
  RatMatrix order_basis;

  static NumberField from_poly(const IntPolynomial &f, const FactorEffort &effort = {}) {
    if (f.degree() < 1) throw std::domain_error("number field: defining polynomial must have degree >= 1");
    IntPolynomial g = f.primitive_part();
    if (g.lc() < 0) g = -g;
    NumberField K;
    auto mo = field_discriminant(g, effort);
    K.defining_poly = g;
    K.degree = g.degree();
    std::tie(K.r1, K.r2) = root_signature(g);
    K.discriminant = mo.discriminant;
    K.order_basis = std::move(mo.basis);
    return K;
  }

  /// [disc(f) : Delta]^(1/2)
  BigInt index() const {
    BigInt q = discriminant_poly(defining_poly) / discriminant;
    return isqrt(q);
  }
};

inline std::pair<int, int> signature(const IntPolynomial &f) {
  if (f.degree() < 1) throw std::domain_error("signature: constant polynomial");
  return root_signature(f);
}

namespace detail {

/// Univariate polynomials over K = Q[t]/(m), coefficients reduced mod m.
struct KPoly {
  std::vector<QPoly> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

inline void ktrim(KPoly &a) {
  while (!a.c.empty() && a.c.back().is_zero()) a.c.pop_back();
}

inline QPoly kinv(const QPoly &a, const QPoly &m) {
  auto [g, s, t] = xgcd(a, m);
  if (g.degree() != 0) throw std::logic_error("non-invertible element in a field");
  return s % m;
}

inline KPoly kmod(KPoly a, const KPoly &b, const QPoly &m) {
  QPoly inv = kinv(b.c.back(), m);
  while (a.degree() >= b.degree()) {
    QPoly t = (a.c.back() * inv) % m;
    int shift = a.degree() - b.degree();
    for (int i = 0; i <= b.degree(); ++i) {
      auto &x = a.c[static_cast<size_t>(i + shift)];
      x = (x - t * b.c[static_cast<size_t>(i)]) % m;
    }
    ktrim(a);
  }
  return a;
}

inline KPoly kgcd(KPoly a, KPoly b, const QPoly &m) {
  ktrim(a);
  ktrim(b);
  while (!b.c.empty()) {
    KPoly r = kmod(a, b, m);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.c.empty()) return a;
  QPoly inv = kinv(a.c.back(), m);
  for (auto &x : a.c) x = (x * inv) % m;
  return a;
}

/// p(x + s t) over K.
inline KPoly shifted(const IntPolynomial &p, long s, const QPoly &m) {
  KPoly lin{{QPoly(std::vector<BigRational>{0, s}) % m, QPoly::constant(1)}};
  ktrim(lin);
  KPoly acc;
  for (int i = p.degree(); i >= 0; --i) {
    KPoly next;
    next.c.assign(acc.c.size() + 1, QPoly{});
    for (size_t a = 0; a < acc.c.size(); ++a)
      for (size_t b = 0; b < lin.c.size(); ++b) next.c[a + b] = (next.c[a + b] + acc.c[a] * lin.c[b]) % m;
    if (next.c.empty()) next.c.emplace_back();
    next.c[0] = next.c[0] + QPoly::constant(BigRational(p.coeff(i)));
    ktrim(next);
    acc = std::move(next);
  }
  return acc;
}

/// Res_y(m(y), q(x - s y)) by evaluation at integer points and interpolation.
inline IntPolynomial trager_norm(const IntPolynomial &m, const IntPolynomial &q, long s) {
  int N = m.degree() * q.degree();
  std::vector<BigRational> xs, ys;
  for (int k = 0; k <= N; ++k) {
    IntPolynomial lin = IntPolynomial{k, -s};
    IntPolynomial qq;
    for (int i = q.degree(); i >= 0; --i) qq = qq * lin + IntPolynomial::constant(q.coeff(i));
    xs.emplace_back(k);
    ys.emplace_back(resultant(m, qq));
  }
  // Newton divided differences
  std::vector<BigRational> dd = ys;
  for (int j = 1; j <= N; ++j)
    for (int i = N; i >= j; --i) dd[static_cast<size_t>(i)] = (dd[static_cast<size_t>(i)] - dd[static_cast<size_t>(i - 1)]) /
                                                              (xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(i - j)]);
  QPoly r = QPoly::constant(dd[static_cast<size_t>(N)]);
  for (int i = N - 1; i >= 0; --i)
    r = r * QPoly(std::vector<BigRational>{-xs[static_cast<size_t>(i)], 1}) + QPoly::constant(dd[static_cast<size_t>(i)]);
  std::vector<BigInt> c;
  for (const auto &v : r.coeffs()) {
    if (v.get_den() != 1) throw std::logic_error("trager norm is not integral");
    c.push_back(BigInt(v));
  }
  return IntPolynomial(std::move(c));
}

/// Top-down coefficient order; larger first.
inline bool witness_before(const QPoly &a, const QPoly &b) {
  int n = std::max(a.degree(), b.degree());
  for (int i = n; i >= 0; --i) {
    int c = cmp(a.coeff(i), b.coeff(i));
    if (c != 0) return c > 0;
  }
  return false;
}

} // namespace detail

/// All roots of q lying in Q[t]/(m), as polynomials h(t) of degree < deg m,
/// by Trager's norm construction. m and q irreducible over Q.
inline std::vector<QPoly> roots_in_field(const IntPolynomial &m, const IntPolynomial &q) {
  std::vector<QPoly> out;
  QPoly M(m);
  if (m.degree() == 1) {
    for (const auto &[g, e] : factor_rational(q).factors)
      if (g.degree() == 1) out.push_back(QPoly::constant(BigRational(-g.coeff(0), g.coeff(1))));
  } else {
    for (long s = 1;; s = s > 0 ? -s : 1 - s) {
      IntPolynomial N = detail::trager_norm(m, q, s);
      if (!is_squarefree(N)) continue;
      detail::KPoly qk;
      for (const auto &a : q.coeffs()) qk.c.push_back(QPoly::constant(BigRational(a)));
      for (const auto &[g, e] : factor_rational(N).factors) {
        if (g.degree() != m.degree()) continue;
        detail::KPoly G = detail::kgcd(qk, detail::shifted(g, s, M), M);
        if (G.degree() != 1) throw std::logic_error("trager: expected a linear factor");
        out.push_back(-G.c[0]);
      }
      break;
    }
  }
  for (const auto &h : out)
    if (!(QPoly(q).compose(h) % M).is_zero()) throw std::logic_error("trager: root verification failed");
  std::sort(out.begin(), out.end(), detail::witness_before);
  return out;
}

namespace detail {

/// Sorted factor degrees of f mod p.
inline std::vector<int> splitting_type(const IntPolynomial &f, u64 p) {
  std::vector<int> d;
  for (const auto &g : berlekamp(ZpPoly::from(f, p).monic())) d.push_back(g.degree());
  return d;
}

} // namespace detail

inline bool is_isomorphic(const NumberField &K1, const NumberField &K2) {
  if (K1.degree != K2.degree || K1.r1 != K2.r1 || K1.discriminant != K2.discriminant) return false;
  if (K1.defining_poly == K2.defining_poly) return true;
  // unramified primes not dividing either index split alike in isomorphic fields
  BigInt bad = discriminant_poly(K1.defining_poly) * discriminant_poly(K2.defining_poly) * K1.defining_poly.lc() *
               K2.defining_poly.lc();
  int tested = 0;
  for (u64 p : detail::small_primes()) {
    if (tested >= 8) break;
    if (mpz_divisible_ui_p(bad.get_mpz_t(), p)) continue;
    ++tested;
    if (detail::splitting_type(K1.defining_poly, p) != detail::splitting_type(K2.defining_poly, p)) return false;
  }
  return !roots_in_field(K1.defining_poly, K2.defining_poly).empty();
}

struct SubfieldWitness {
  QPoly embedding_poly; // root of F's defining polynomial as h(root of L's)
};

inline std::optional<SubfieldWitness> has_subfield(const NumberField &L, const NumberField &F) {
  if (L.degree % F.degree != 0) throw std::domain_error("has_subfield: degree of F does not divide degree of L");
  unsigned long b = static_cast<unsigned long>(L.degree / F.degree);
  if (!mpz_divisible_p(BigInt(abs(L.discriminant)).get_mpz_t(), pow(BigInt(abs(F.discriminant)), b).get_mpz_t()))
    return std::nullopt;
  auto roots = roots_in_field(L.defining_poly, F.defining_poly);
  if (roots.empty()) return std::nullopt;
  return SubfieldWitness{roots.front()};
}

/// |Delta_L| / |Delta_F|^b for F a subfield of L.
inline BigInt relative_discriminant_norm(const NumberField &L, const NumberField &F) {
  if (!has_subfield(L, F)) throw std::domain_error("relative_discriminant_norm: F is not a subfield of L");
  unsigned long b = static_cast<unsigned long>(L.degree / F.degree);
  BigInt num = abs(L.discriminant), den = pow(BigInt(abs(F.discriminant)), b);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::logic_error("internal inconsistency: |Delta_F|^b does not divide |Delta_L|");
  return num / den;
}

} // namespace deltalab
