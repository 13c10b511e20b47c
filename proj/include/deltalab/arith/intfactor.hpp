#pragma once

#include "deltalab/arith/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace deltalab {

struct UnfactoredError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FactorEffort {
  unsigned long trial_limit = 1000000;
  unsigned long rho_iterations = 4000000;
  int rho_restarts = 16;
};

namespace detail {

inline const std::vector<unsigned long> &sieve_primes() {
  static const std::vector<unsigned long> primes = [] {
    const unsigned long limit = 1000000;
    std::vector<unsigned long> v;
    std::vector<bool> comp(limit + 1, false);
    for (unsigned long i = 2; i <= limit; ++i) {
      if (comp[i]) continue;
      v.push_back(i);
      for (unsigned long j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return v;
  }();
  return primes;
}

inline bool is_probable_prime(const BigInt &n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

/// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
inline BigInt rho_brent(const BigInt &n, unsigned long c, unsigned long max_iter) {
  BigInt y = 2, x, g = 1, q = 1, ys;
  unsigned long r = 1, m = 128, iter = 0;
  auto f = [&](const BigInt &v) {
    BigInt t = v * v + c;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return t;
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        BigInt d = abs(x - y);
        q = q * d;
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      g = gcd(q, n);
      k += m;
      iter += m;
      if (iter > max_iter) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(BigInt(abs(x - ys)), n);
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

inline void split_composite(const BigInt &n, std::map<BigInt, int> &out, const FactorEffort &effort) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2;; ++k) {
      BigInt r;
      if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
        std::map<BigInt, int> sub;
        split_composite(r, sub, effort);
        for (auto &[p, e] : sub) out[p] += e * static_cast<int>(k);
        return;
      }
    }
  }
  for (int i = 0; i < effort.rho_restarts; ++i) {
    BigInt d = rho_brent(n, static_cast<unsigned long>(2 * i + 1), effort.rho_iterations);
    if (d != 0) {
      split_composite(d, out, effort);
      split_composite(BigInt(n / d), out, effort);
      return;
    }
  }
  throw UnfactoredError("unfactored discriminant: cofactor " + n.get_str() + " resisted rho at the configured effort");
}

} // namespace detail

/// Prime factorization of |n| (n != 0), primes ascending.
inline std::vector<std::pair<BigInt, int>> factor_integer(const BigInt &n, const FactorEffort &effort = {}) {
  if (n == 0) throw std::domain_error("factor_integer: zero");
  BigInt m = abs(n);
  std::map<BigInt, int> out;
  auto trial = [&](unsigned long p) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++out[BigInt(p)];
    }
  };
  unsigned long last = 1;
  for (unsigned long p : detail::sieve_primes()) {
    if (p > effort.trial_limit || BigInt(p) * p > m) break;
    trial(p);
    last = p;
  }
  for (unsigned long d = last + 2; d <= effort.trial_limit && BigInt(d) * d <= m; d += 2) trial(d);
  if (m > 1) {
    unsigned long lim = effort.trial_limit;
    if (m <= BigInt(lim) * lim)
      ++out[m];
    else
      detail::split_composite(m, out, effort);
  }
  return {out.begin(), out.end()};
}

} // namespace deltalab
