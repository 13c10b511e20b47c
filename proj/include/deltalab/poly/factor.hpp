#pragma once

#include "deltalab/poly/resultant.hpp"
#include "deltalab/poly/zp.hpp"

#include <algorithm>
#include <bitset>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deltalab {

struct Factorization {
  BigRational content;
  std::vector<std::pair<IntPolynomial, int>> factors;
};

namespace detail {

inline IntPolynomial mod_poly(const IntPolynomial &f, const BigInt &m) {
  std::vector<BigInt> c;
  for (const auto &a : f.coeffs()) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    c.push_back(r);
  }
  return IntPolynomial(std::move(c));
}

inline IntPolynomial symmetric_mod(const IntPolynomial &f, const BigInt &m) {
  std::vector<BigInt> c;
  BigInt half = m / 2;
  for (const auto &a : f.coeffs()) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r > half) r -= m;
    c.push_back(r);
  }
  return IntPolynomial(std::move(c));
}

/// Division by a monic polynomial over Z.
inline std::pair<IntPolynomial, IntPolynomial> monic_divmod(const IntPolynomial &a, const IntPolynomial &b) {
  int m = a.degree(), n = b.degree();
  if (m < n) return {IntPolynomial{}, a};
  std::vector<BigInt> r = a.coeffs(), q(static_cast<size_t>(m - n) + 1);
  for (int k = m; k >= n; --k) {
    BigInt t = r[static_cast<size_t>(k)];
    q[static_cast<size_t>(k - n)] = t;
    if (t == 0) continue;
    for (int i = 0; i <= n; ++i) r[static_cast<size_t>(k - n + i)] -= t * b[static_cast<size_t>(i)];
  }
  r.resize(static_cast<size_t>(n));
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

/// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
/// Returns the same relations mod m^2.
inline void hensel_step(const IntPolynomial &f, IntPolynomial &g, IntPolynomial &h, IntPolynomial &s,
                        IntPolynomial &t, const BigInt &m) {
  BigInt m2 = m * m;
  IntPolynomial e = mod_poly(f - g * h, m2);
  auto [q, r] = monic_divmod(mod_poly(s * e, m2), h);
  q = mod_poly(q, m2);
  r = mod_poly(r, m2);
  IntPolynomial gs = mod_poly(g + t * e + q * g, m2);
  IntPolynomial hs = mod_poly(h + r, m2);
  IntPolynomial b = mod_poly(s * gs + t * hs - IntPolynomial::constant(1), m2);
  auto [c, d] = monic_divmod(mod_poly(s * b, m2), hs);
  c = mod_poly(c, m2);
  d = mod_poly(d, m2);
  s = mod_poly(s - d, m2);
  t = mod_poly(t - t * b - c * gs, m2);
  g = std::move(gs);
  h = std::move(hs);
}

/// Lifts f = lc(f) * prod(u_i) mod p (u_i monic, pairwise coprime) to mod
/// p^(2^steps); results are the monic lifted factors in the same order.
inline void multifactor_lift(const IntPolynomial &f, const std::vector<ZpPoly> &u, u64 p, int steps,
                             std::vector<IntPolynomial> &out) {
  if (u.size() == 1) {
    // monic lift: lc^{-1} f mod p^(2^steps)
    BigInt M = pow(BigInt(static_cast<unsigned long>(p)), 1UL << steps);
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), f.lc().get_mpz_t(), M.get_mpz_t());
    out.push_back(mod_poly(inv * f, M));
    return;
  }
  size_t k = u.size() / 2;
  std::vector<ZpPoly> A(u.begin(), u.begin() + static_cast<long>(k)), B(u.begin() + static_cast<long>(k), u.end());
  ZpPoly ga = ZpPoly({reduce(f.lc(), p)}, p), hb = ZpPoly::one(p);
  for (const auto &a : A) ga = ga * a;
  for (const auto &b : B) hb = hb * b;
  auto [one, s0, t0] = xgcd(ga, hb);
  IntPolynomial g = ga.lift(), h = hb.lift(), s = s0.lift(), t = t0.lift();
  BigInt m(static_cast<unsigned long>(p));
  for (int i = 0; i < steps; ++i) {
    hensel_step(f, g, h, s, t, m);
    m *= m;
  }
  multifactor_lift(g, A, p, steps, out);
  multifactor_lift(h, B, p, steps, out);
}

inline const std::vector<u64> &small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> v;
    for (u64 n = 2; v.size() < 200; ++n) {
      bool prime = true;
      for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
          prime = false;
          break;
        }
      if (prime) v.push_back(n);
    }
    return v;
  }();
  return primes;
}

struct ModularData {
  u64 p = 0;
  std::vector<ZpPoly> factors;
};

/// Factor degrees modulo the first few good primes; returns the prime with
/// the fewest factors and the achievable factor-degree set (bit i set when a
/// true factor of degree i remains possible).
inline std::pair<ModularData, std::vector<bool>> modular_survey(const IntPolynomial &f, int nprimes) {
  int n = f.degree();
  std::vector<bool> possible(static_cast<size_t>(n) + 1, true);
  ModularData best;
  int used = 0;
  for (u64 p : small_primes()) {
    if (used >= nprimes) break;
    if (reduce(f.lc(), p) == 0) continue;
    ZpPoly fp = ZpPoly::from(f, p);
    ZpPoly fm = fp.monic();
    if (gcd(fm, fm.derivative()).degree() > 0) continue;
    ++used;
    std::vector<ZpPoly> fac = berlekamp(fm);
    std::vector<bool> sums(static_cast<size_t>(n) + 1, false);
    sums[0] = true;
    for (const auto &q : fac)
      for (int d = n; d >= q.degree(); --d)
        if (sums[static_cast<size_t>(d - q.degree())]) sums[static_cast<size_t>(d)] = true;
    for (int d = 0; d <= n; ++d) possible[static_cast<size_t>(d)] = possible[static_cast<size_t>(d)] && sums[static_cast<size_t>(d)];
    if (best.p == 0 || fac.size() < best.factors.size()) best = {p, std::move(fac)};
    bool any = false;
    for (int d = 1; d < n; ++d) any = any || possible[static_cast<size_t>(d)];
    if (!any) break;
  }
  if (best.p == 0) throw std::runtime_error("no good prime found for modular factoring");
  return {best, possible};
}

inline bool nontrivial_degree_possible(const std::vector<bool> &possible) {
  for (size_t d = 1; d + 1 < possible.size(); ++d)
    if (possible[d]) return true;
  return false;
}

/// Zassenhaus factorization of a squarefree primitive polynomial with
/// positive leading coefficient.
inline std::vector<IntPolynomial> zassenhaus(const IntPolynomial &f) {
  int n = f.degree();
  if (n <= 1) return {f};
  auto [md, possible] = modular_survey(f, 5);
  if (!nontrivial_degree_possible(possible) || md.factors.size() == 1) return {f};
  u64 p = md.p;
  // Mignotte-type bound on coefficients of lc * (factor)
  BigInt bound = 2 * abs(f.lc()) * pow(BigInt(2), static_cast<unsigned long>(n)) * l2_norm_ceil(f);
  int steps = 0;
  BigInt M(static_cast<unsigned long>(p));
  while (M <= bound) {
    M *= M;
    ++steps;
  }
  std::vector<IntPolynomial> lifted;
  multifactor_lift(f, md.factors, p, steps, lifted);

  std::vector<IntPolynomial> found;
  IntPolynomial rest = f;
  std::vector<IntPolynomial> u = lifted;
  size_t k = 1;
  while (2 * k <= u.size()) {
    bool progressed = false;
    size_t r = u.size();
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      int deg = 0;
      for (size_t i : idx) deg += u[i].degree();
      if (possible[static_cast<size_t>(deg)]) {
        IntPolynomial g = IntPolynomial::constant(rest.lc());
        for (size_t i : idx) g = symmetric_mod(g * u[i], M);
        IntPolynomial cand = g.primitive_part(), quot;
        if (divides(cand, rest, &quot)) {
          found.push_back(cand);
          rest = quot;
          std::vector<IntPolynomial> nu;
          for (size_t i = 0; i < r; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) nu.push_back(u[i]);
          u = std::move(nu);
          progressed = true;
          break;
        }
      }
      // next combination
      size_t i = k;
      while (i > 0 && idx[i - 1] == r - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!progressed) ++k;
  }
  if (rest.degree() > 0) found.push_back(rest.primitive_part());
  return found;
}

} // namespace detail

/// Complete factorization over Q: f = content * prod(factor^mult).
inline Factorization factor_rational(const IntPolynomial &f) {
  if (f.is_zero()) throw std::domain_error("factor_rational: zero polynomial");
  Factorization out;
  BigInt c = f.content();
  if (f.lc() < 0) c = -c;
  out.content = BigRational(c);
  if (f.degree() == 0) return out;
  for (auto &[g, m] : squarefree_decomposition(f)) {
    for (auto &h : detail::zassenhaus(g)) out.factors.emplace_back(h, m);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto &a, const auto &b) { return canonical_less(a.first, b.first); });
  return out;
}

/// Irreducibility over Q of a primitive polynomial.
inline bool is_irreducible(const IntPolynomial &f) {
  if (f.degree() < 1) throw std::domain_error("is_irreducible: degree must be at least 1");
  if (!f.is_primitive()) throw std::domain_error("is_irreducible: polynomial is not primitive");
  if (f.degree() == 1) return true;
  if (!is_squarefree(f)) return false;
  IntPolynomial g = f.primitive_part();
  auto [md, possible] = detail::modular_survey(g, 5);
  if (!detail::nontrivial_degree_possible(possible) || md.factors.size() == 1) return true;
  return detail::zassenhaus(g).size() == 1;
}

} // namespace deltalab
