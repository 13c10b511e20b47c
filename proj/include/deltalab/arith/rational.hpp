#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace deltalab {

using BigInt = mpz_class;
/// Canonical (reduced, positive denominator) rational; every GMP operation
/// leaves mpq_class canonical, parse() canonicalizes explicitly.
using BigRational = mpq_class;

inline std::string to_string(const BigInt &z) { return z.get_str(); }

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const BigRational &q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigRational parse_rational(const std::string &s) {
  BigRational q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational: '" + s + "'");
  if (q.get_den() == 0) throw std::domain_error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline BigInt parse_integer(const std::string &s) {
  BigInt z;
  if (s.empty() || z.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed integer: '" + s + "'");
  return z;
}

inline BigInt pow(const BigInt &b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline BigRational pow(const BigRational &b, long e) {
  BigRational r;
  unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), ae);
  mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), ae);
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw std::domain_error("negative power of zero");
    r = 1 / r;
  }
  return r;
}

inline BigInt floor(const BigRational &q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline BigInt ceil(const BigRational &q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_square(const BigInt &z) { return z >= 0 && mpz_perfect_square_p(z.get_mpz_t()) != 0; }

inline bool is_square(const BigRational &q) {
  return q >= 0 && is_square(BigInt(q.get_num())) && is_square(BigInt(q.get_den()));
}

inline BigInt isqrt(const BigInt &z) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), z.get_mpz_t());
  return r;
}

/// Exact square root of a rational square.
inline BigRational sqrt_exact(const BigRational &q) {
  if (!is_square(q)) throw std::domain_error("not a rational square");
  BigRational r(isqrt(BigInt(q.get_num())), isqrt(BigInt(q.get_den())));
  r.canonicalize();
  return r;
}

inline BigInt gcd(const BigInt &a, const BigInt &b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt lcm(const BigInt &a, const BigInt &b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline bool fits_int64(const BigInt &z) { return z.fits_slong_p(); }

} // namespace deltalab
