#pragma once

#include "deltalab/poly/int_poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deltalab {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
inline u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return (s >= p || s < a) ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 invmod(u64 a, u64 p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  return powmod(a, p - 2, p); // p prime
}
inline u64 reduce(const BigInt &z, u64 p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

/// Polynomial over F_p, constant term first, no trailing zeros.
struct ZpPoly {
  std::vector<u64> c;
  u64 p = 2;

  ZpPoly() = default;
  ZpPoly(std::vector<u64> coeffs, u64 mod) : c(std::move(coeffs)), p(mod) { trim(); }
  static ZpPoly from(const IntPolynomial &f, u64 mod) {
    ZpPoly r;
    r.p = mod;
    for (const auto &a : f.coeffs()) r.c.push_back(reduce(a, mod));
    r.trim();
    return r;
  }
  static ZpPoly one(u64 mod) { return ZpPoly({1}, mod); }
  static ZpPoly x(u64 mod) { return ZpPoly({0, 1}, mod); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  u64 lc() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  ZpPoly monic() const {
    if (is_zero()) return *this;
    u64 inv = invmod(lc(), p);
    ZpPoly r = *this;
    for (auto &v : r.c) v = mulmod(v, inv, p);
    return r;
  }

  /// Lift with coefficients in the symmetric range (-p/2, p/2].
  IntPolynomial lift_symmetric() const {
    std::vector<BigInt> out;
    for (u64 v : c) {
      BigInt z(static_cast<unsigned long>(v));
      if (v > p / 2) z -= BigInt(static_cast<unsigned long>(p));
      out.push_back(z);
    }
    return IntPolynomial(std::move(out));
  }
  IntPolynomial lift() const {
    std::vector<BigInt> out;
    for (u64 v : c) out.emplace_back(static_cast<unsigned long>(v));
    return IntPolynomial(std::move(out));
  }

  friend ZpPoly operator+(const ZpPoly &a, const ZpPoly &b) {
    std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = addmod(r[i], b.c[i], a.p);
    return ZpPoly(std::move(r), a.p);
  }
  friend ZpPoly operator-(const ZpPoly &a, const ZpPoly &b) {
    std::vector<u64> r(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = submod(r[i], b.c[i], a.p);
    return ZpPoly(std::move(r), a.p);
  }
  friend ZpPoly operator*(const ZpPoly &a, const ZpPoly &b) {
    if (a.is_zero() || b.is_zero()) return ZpPoly({}, a.p);
    std::vector<u64> r(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a.c[i], b.c[j], a.p), a.p);
    return ZpPoly(std::move(r), a.p);
  }
  ZpPoly scaled(u64 s) const {
    ZpPoly r = *this;
    for (auto &v : r.c) v = mulmod(v, s, p);
    r.trim();
    return r;
  }

  friend std::pair<ZpPoly, ZpPoly> divmod(const ZpPoly &a, const ZpPoly &b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial mod p");
    if (a.degree() < b.degree()) return {ZpPoly({}, a.p), a};
    u64 p = a.p;
    std::vector<u64> r = a.c, q(static_cast<size_t>(a.degree() - b.degree()) + 1, 0);
    u64 inv = invmod(b.lc(), p);
    int n = b.degree();
    for (int k = a.degree(); k >= n; --k) {
      u64 t = mulmod(r[static_cast<size_t>(k)], inv, p);
      q[static_cast<size_t>(k - n)] = t;
      if (!t) continue;
      for (int i = 0; i <= n; ++i) {
        auto idx = static_cast<size_t>(k - n + i);
        r[idx] = submod(r[idx], mulmod(t, b.c[static_cast<size_t>(i)], p), p);
      }
    }
    r.resize(static_cast<size_t>(n));
    return {ZpPoly(std::move(q), p), ZpPoly(std::move(r), p)};
  }
  friend ZpPoly operator%(const ZpPoly &a, const ZpPoly &b) { return divmod(a, b).second; }
  friend ZpPoly operator/(const ZpPoly &a, const ZpPoly &b) { return divmod(a, b).first; }
  friend bool operator==(const ZpPoly &a, const ZpPoly &b) { return a.p == b.p && a.c == b.c; }

  ZpPoly derivative() const {
    if (c.size() <= 1) return ZpPoly({}, p);
    std::vector<u64> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = mulmod(c[i], i % p, p);
    return ZpPoly(std::move(r), p);
  }
};

inline ZpPoly gcd(ZpPoly a, ZpPoly b) {
  while (!b.is_zero()) {
    ZpPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// (g, s, t) with s a + t b = g monic.
inline std::tuple<ZpPoly, ZpPoly, ZpPoly> xgcd(ZpPoly a, ZpPoly b) {
  u64 p = a.p;
  ZpPoly s0 = ZpPoly::one(p), s1({}, p), t0({}, p), t1 = ZpPoly::one(p);
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    ZpPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = invmod(a.lc(), p);
  return {a.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

/// base^e mod m, e given as a big integer.
inline ZpPoly powmod(ZpPoly base, BigInt e, const ZpPoly &m) {
  ZpPoly r = ZpPoly::one(m.p) % m;
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    e >>= 1;
    if (e > 0) base = (base * base) % m;
  }
  return r;
}

/// Squarefree decomposition over F_p of a monic polynomial: pairs
/// (squarefree monic factor, multiplicity) whose product is f.
inline std::vector<std::pair<ZpPoly, int>> squarefree_decomposition(const ZpPoly &f) {
  std::vector<std::pair<ZpPoly, int>> out;
  u64 p = f.p;
  ZpPoly fm = f.monic();
  if (fm.degree() < 1) return out;
  // c = gcd(f, f'), w = f / c
  ZpPoly c = gcd(fm, fm.derivative());
  ZpPoly w = fm / c;
  int i = 1;
  while (w.degree() > 0) {
    ZpPoly y = gcd(w, c);
    ZpPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a p-th power: take the p-th root (coefficients of x^{kp})
    std::vector<u64> root;
    for (size_t k = 0; k < c.c.size(); k += p) root.push_back(c.c[k]);
    ZpPoly r(std::move(root), p);
    for (auto &[g, m] : squarefree_decomposition(r)) out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

/// Left kernel over F_p of an n x m matrix (rows as vectors): all x with x*A = 0.
inline std::vector<std::vector<u64>> left_kernel(std::vector<std::vector<u64>> A, u64 p) {
  size_t n = A.size();
  size_t m = n ? A[0].size() : 0;
  // augment with identity and row-reduce
  for (size_t i = 0; i < n; ++i) {
    A[i].resize(m + n, 0);
    A[i][m + i] = 1;
  }
  size_t row = 0;
  for (size_t col = 0; col < m && row < n; ++col) {
    size_t piv = row;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(A[piv], A[row]);
    u64 inv = invmod(A[row][col], p);
    for (auto &v : A[row]) v = mulmod(v, inv, p);
    for (size_t r = 0; r < n; ++r) {
      if (r == row || A[r][col] == 0) continue;
      u64 f = A[r][col];
      for (size_t k = 0; k < m + n; ++k) A[r][k] = submod(A[r][k], mulmod(f, A[row][k], p), p);
    }
    ++row;
  }
  std::vector<std::vector<u64>> ker;
  for (size_t r = row; r < n; ++r) ker.emplace_back(A[r].begin() + static_cast<long>(m), A[r].end());
  return ker;
}

/// Berlekamp factorization of a squarefree monic polynomial over F_p into
/// monic irreducibles (sorted by degree then coefficients). Deterministic.
inline std::vector<ZpPoly> berlekamp(const ZpPoly &f) {
  u64 p = f.p;
  int n = f.degree();
  if (n <= 1) return {f};
  // Q matrix rows: x^{ip} mod f
  std::vector<std::vector<u64>> Q(static_cast<size_t>(n), std::vector<u64>(static_cast<size_t>(n), 0));
  ZpPoly xp = powmod(ZpPoly::x(p), BigInt(static_cast<unsigned long>(p)), f);
  ZpPoly cur = ZpPoly::one(p);
  for (int i = 0; i < n; ++i) {
    for (size_t k = 0; k < cur.c.size(); ++k) Q[static_cast<size_t>(i)][k] = cur.c[k];
    Q[static_cast<size_t>(i)][static_cast<size_t>(i)] = submod(Q[static_cast<size_t>(i)][static_cast<size_t>(i)], 1, p);
    cur = (cur * xp) % f;
  }
  auto ker = left_kernel(Q, p);
  size_t r = ker.size();
  std::vector<ZpPoly> factors{f};
  if (r == 1) return factors;
  for (size_t k = 0; k < ker.size() && factors.size() < r; ++k) {
    ZpPoly v(ker[k], p);
    std::vector<ZpPoly> next;
    for (const auto &g : factors) {
      if (g.degree() <= 1) {
        next.push_back(g);
        continue;
      }
      ZpPoly rest = g;
      for (u64 s = 0; s < p && rest.degree() > 0; ++s) {
        ZpPoly vs = v - ZpPoly({s}, p);
        ZpPoly h = gcd(rest, vs);
        if (h.degree() > 0 && h.degree() < rest.degree()) {
          next.push_back(h);
          rest = (rest / h).monic();
        } else if (h.degree() == rest.degree()) {
          break;
        }
      }
      if (rest.degree() > 0) next.push_back(rest);
    }
    factors = std::move(next);
  }
  std::sort(factors.begin(), factors.end(), [](const ZpPoly &a, const ZpPoly &b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.c < b.c;
  });
  return factors;
}

} // namespace deltalab
