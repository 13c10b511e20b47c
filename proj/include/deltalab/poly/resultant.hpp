#pragma once

#include "deltalab/poly/int_poly.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace deltalab {

/// Resultant by the subresultant pseudo-remainder sequence; exact over Z.
inline BigInt resultant(const IntPolynomial &f, const IntPolynomial &g) {
  if (f.is_zero() || g.is_zero()) throw std::domain_error("resultant of the zero polynomial");
  IntPolynomial A = f, B = g;
  BigInt s = 1;
  if (A.degree() < B.degree()) {
    std::swap(A, B);
    if ((A.degree() & 1) && (B.degree() & 1)) s = -1;
  }
  if (B.degree() == 0) return s * pow(B.lc(), static_cast<unsigned long>(A.degree()));
  BigInt a = A.content(), b = B.content();
  BigInt t = pow(a, static_cast<unsigned long>(B.degree())) * pow(b, static_cast<unsigned long>(A.degree()));
  A = A.divexact(a);
  B = B.divexact(b);
  BigInt gg = 1, h = 1;
  while (true) {
    int delta = A.degree() - B.degree();
    if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
    IntPolynomial R = pseudo_divmod(A, B).second;
    if (R.is_zero()) return 0;
    A = B;
    BigInt d = gg * pow(h, static_cast<unsigned long>(delta));
    B = R.divexact(d);
    gg = A.lc();
    // h <- g^delta / h^(delta-1)
    if (delta != 0) {
      BigInt num = pow(gg, static_cast<unsigned long>(delta));
      BigInt den = pow(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    if (B.degree() == 0) {
      BigInt num = pow(B.lc(), static_cast<unsigned long>(A.degree()));
      BigInt den = pow(h, static_cast<unsigned long>(A.degree() - 1));
      BigInt hh;
      mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      return s * t * hh;
    }
  }
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f).
inline BigInt discriminant_poly(const IntPolynomial &f) {
  int n = f.degree();
  if (n < 1) throw std::domain_error("discriminant of a constant polynomial");
  if (n == 1) return 1;
  BigInt r = resultant(f, f.derivative());
  BigInt d;
  mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.lc().get_mpz_t());
  if (((n * (n - 1)) / 2) & 1) d = -d;
  return d;
}

/// gcd over Z with positive leading coefficient (primitive PRS).
inline IntPolynomial gcd(const IntPolynomial &f, const IntPolynomial &g) {
  if (f.is_zero()) return g.is_zero() || g.lc() > 0 ? g : -g;
  if (g.is_zero()) return f.lc() > 0 ? f : -f;
  BigInt c = gcd(f.content(), g.content());
  IntPolynomial a = f.primitive_part(), b = g.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = pseudo_divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive_part();
  }
  return c * a.primitive_part();
}

inline bool is_squarefree(const IntPolynomial &f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

/// Yun's squarefree decomposition of a primitive polynomial: pairs
/// (squarefree primitive factor, multiplicity), factors of degree >= 1.
inline std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial &f) {
  std::vector<std::pair<IntPolynomial, int>> out;
  IntPolynomial a = f.primitive_part();
  if (a.degree() < 1) return out;
  IntPolynomial b = a.derivative();
  IntPolynomial c = gcd(a, b);
  IntPolynomial w, y, z;
  divides(c, a, &w);
  divides(c, b, &y);
  z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    IntPolynomial g = gcd(w, z);
    IntPolynomial w2, y2;
    divides(g, w, &w2);
    divides(g, z, &y2);
    if (g.degree() > 0) out.emplace_back(g.primitive_part(), i);
    w = w2;
    z = y2 - w.derivative();
    ++i;
  }
  return out;
}

} // namespace deltalab
