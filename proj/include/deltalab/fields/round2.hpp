#pragma once

#include "deltalab/arith/intfactor.hpp"
#include "deltalab/fields/lattice.hpp"
#include "deltalab/poly/factor.hpp"
#include "deltalab/poly/resultant.hpp"
#include "deltalab/poly/zp.hpp"

#include <stdexcept>
#include <vector>

namespace deltalab {

namespace detail {

/// Elements of Q[y]/(g), g monic, as coefficient vectors of length n.
inline std::vector<BigRational> mul_mod_monic(const std::vector<BigRational> &a, const std::vector<BigRational> &b,
                                              const IntPolynomial &g) {
  size_t n = static_cast<size_t>(g.degree());
  std::vector<BigRational> c(2 * n - 1);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) c[i + j] += a[i] * b[j];
  }
  for (size_t k = c.size(); k-- > n;) {
    if (c[k] == 0) continue;
    BigRational t = c[k];
    for (size_t i = 0; i < n; ++i) c[k - n + i] -= t * g[i];
    c[k] = 0;
  }
  c.resize(n);
  return c;
}

/// Structure constants of an order with basis B: T[i][j] = coords of w_i w_j.
using MulTable = std::vector<std::vector<std::vector<BigInt>>>;

inline MulTable multiplication_table(const RatMatrix &B, const IntPolynomial &g) {
  size_t n = B.size();
  MulTable T(n, std::vector<std::vector<BigInt>>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      auto c = triangular_coords(B, mul_mod_monic(B[i], B[j], g));
      std::vector<BigInt> z;
      for (const auto &v : c) {
        if (v.get_den() != 1) throw std::logic_error("order basis is not closed under multiplication");
        z.push_back(BigInt(v));
      }
      T[i][j] = z;
      T[j][i] = z;
    }
  return T;
}

/// Product in O/pO given by the table.
inline std::vector<u64> mul_mod_p(const std::vector<u64> &a, const std::vector<u64> &b, const MulTable &T, u64 p) {
  size_t n = a.size();
  std::vector<u64> c(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < n; ++j) {
      if (!b[j]) continue;
      u64 ab = mulmod(a[i], b[j], p);
      for (size_t k = 0; k < n; ++k) c[k] = addmod(c[k], mulmod(ab, reduce(T[i][j][k], p), p), p);
    }
  }
  return c;
}

/// Dedekind criterion: true when Z[y] is p-maximal (g monic).
inline bool dedekind_maximal(const IntPolynomial &g, u64 p) {
  ZpPoly gp = ZpPoly::from(g, p);
  ZpPoly rad = ZpPoly::one(p);
  for (const auto &[h, m] : squarefree_decomposition(gp)) rad = rad * h;
  ZpPoly hbar = gp / rad;
  IntPolynomial G = rad.lift(), H = hbar.lift();
  IntPolynomial F = g - G * H;
  F = F.divexact(BigInt(static_cast<unsigned long>(p)));
  ZpPoly Z = gcd(gcd(ZpPoly::from(F, p), rad), hbar);
  return Z.degree() == 0;
}

/// One Round-2 enlargement at p: returns the p-maximal order containing B.
inline RatMatrix p_maximal_order(RatMatrix B, const IntPolynomial &g, u64 p) {
  size_t n = B.size();
  BigInt P(static_cast<unsigned long>(p));
  while (true) {
    MulTable T = multiplication_table(B, g);
    // p-radical: kernel of Frobenius^j on O/pO with p^j >= n
    BigInt q = P;
    while (q < static_cast<long>(n)) q *= P;
    std::vector<u64> one(n, 0);
    {
      std::vector<BigRational> unit(n, 0);
      unit[0] = 1;
      auto c = triangular_coords(B, unit);
      for (size_t k = 0; k < n; ++k) one[k] = reduce(BigInt(c[k]), p);
    }
    std::vector<std::vector<u64>> A(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<u64> r = one, base(n, 0);
      base[i] = 1;
      BigInt k = q;
      while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mul_mod_p(r, base, T, p);
        k >>= 1;
        if (k > 0) base = mul_mod_p(base, base, T, p);
      }
      A[i] = r;
    }
    auto rad = left_kernel(A, p);
    IntMatrix gens;
    for (size_t i = 0; i < n; ++i) {
      std::vector<BigInt> row(n, 0);
      row[i] = P;
      gens.push_back(row);
    }
    for (const auto &v : rad) {
      std::vector<BigInt> row;
      for (u64 x : v) row.push_back(BigInt(static_cast<unsigned long>(x)));
      gens.push_back(row);
    }
    IntMatrix G = hnf_lower(gens, n); // radical in O-coordinates
    RatMatrix Gq(n, std::vector<BigRational>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) Gq[i][j] = BigRational(G[i][j]);
    // multipliers: alpha in O with alpha * I subset p I
    std::vector<std::vector<u64>> M(n, std::vector<u64>(n * n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        std::vector<BigRational> prod(n, 0);
        for (size_t l = 0; l < n; ++l) {
          if (G[k][l] == 0) continue;
          for (size_t m = 0; m < n; ++m) prod[m] += BigRational(G[k][l] * T[i][l][m]);
        }
        auto c = triangular_coords(Gq, prod);
        for (size_t m = 0; m < n; ++m) {
          if (c[m].get_den() != 1) throw std::logic_error("p-radical is not an ideal");
          M[i][k * n + m] = reduce(BigInt(c[m]), p);
        }
      }
    auto U = left_kernel(M, p);
    // new order (1/p) U in O-coordinates, then in power-basis coordinates
    RatMatrix ngens;
    for (size_t i = 0; i < n; ++i) ngens.push_back(B[i]);
    for (const auto &u : U) {
      std::vector<BigRational> row(n, 0);
      for (size_t i = 0; i < n; ++i)
        if (u[i])
          for (size_t k = 0; k < n; ++k) row[k] += BigRational(BigInt(static_cast<unsigned long>(u[i]))) * B[i][k];
      for (auto &v : row) v /= BigRational(P);
      ngens.push_back(row);
    }
    RatMatrix nb = hnf_lower(ngens, n);
    if (diagonal_product(nb) == diagonal_product(B)) return B;
    B = std::move(nb);
  }
}

} // namespace detail

struct MaximalOrder {
  BigInt discriminant;
  RatMatrix basis; // rows in the power basis of a root of the input polynomial
};

/// Exact field discriminant and maximal-order basis of Q[x]/(f) by Round 2.
inline MaximalOrder field_discriminant(const IntPolynomial &f, const FactorEffort &effort = {}) {
  if (f.degree() < 1) throw std::domain_error("field_discriminant: constant polynomial");
  if (!f.is_primitive()) throw std::domain_error("field_discriminant: polynomial is not primitive");
  if (!is_irreducible(f)) throw std::domain_error("field_discriminant: reducible polynomial " + f.to_string());
  size_t n = static_cast<size_t>(f.degree());
  // monic model g(y) = a^{n-1} f(y/a), y = a x
  BigInt a = f.lc();
  std::vector<BigInt> gc(n + 1);
  for (size_t i = 0; i < n; ++i) gc[i] = f[i] * pow(a, static_cast<unsigned long>(n - 1 - i));
  gc[n] = 1;
  IntPolynomial g(std::move(gc));
  RatMatrix B(n, std::vector<BigRational>(n, 0));
  for (size_t i = 0; i < n; ++i) B[i][i] = 1;
  BigInt dg = discriminant_poly(g);
  if (n > 1) {
    for (const auto &[p, e] : factor_integer(dg, effort)) {
      if (e < 2) continue;
      if (!p.fits_ulong_p()) throw UnfactoredError("unfactored discriminant: prime " + p.get_str() + " exceeds word size");
      u64 pp = p.get_ui();
      if (detail::dedekind_maximal(g, pp)) continue;
      B = detail::p_maximal_order(std::move(B), g, pp);
    }
  }
  BigRational d = diagonal_product(B);
  BigRational disc = BigRational(dg) * d * d;
  if (disc.get_den() != 1) throw std::logic_error("field discriminant is not an integer");
  // back to the power basis of x: column i scaled by a^i
  RatMatrix Bx = B;
  for (auto &row : Bx)
    for (size_t i = 0; i < n; ++i) row[i] *= BigRational(pow(a, static_cast<unsigned long>(i)));
  return {BigInt(disc), hnf_lower(Bx, n)};
}

} // namespace deltalab
