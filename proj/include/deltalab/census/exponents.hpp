#pragma once

#include "deltalab/arith/ball.hpp"
#include "deltalab/heights/exact.hpp"

#include <optional>
#include <stdexcept>

namespace deltalab {

inline long smallest_divisor(long D) {
  for (long b = 2; b * b <= D; ++b)
    if (D % b == 0) return b;
  return D;
}

/// Threshold exponent for degree D, b the smallest divisor > 1 of D.
inline BigRational gamma_threshold(long D) {
  if (D <= 1) throw std::domain_error("gamma_threshold: degree must be at least 2");
  long b = smallest_divisor(D);
  BigRational g;
  if (b <= 3)
    g = BigRational(1, D * (b + 1));
  else
    g = BigRational(1, 2 * D * (b + 1)) + BigRational(1, D * b * b * (b + 1));
  g.canonicalize();
  return g;
}

/// Exponent of |Delta| in the lower bound for delta.
inline BigRational silverman_exponent(long D) {
  if (D <= 1) throw std::domain_error("silverman_exponent: degree must be at least 2");
  return BigRational(1, 2 * D * (D - 1));
}

/// D^(-1/(2(D-1))) |Delta|^(1/(2D(D-1))) = (|Delta| / D^D)^(1/(2D(D-1))).
inline BigRational silverman_base(long D, const BigInt &disc) {
  if (disc == 0) throw std::domain_error("silverman_bound: zero discriminant");
  BigRational q(abs(disc), pow(BigInt(D), static_cast<unsigned long>(D)));
  q.canonicalize();
  return q;
}

inline RealBall silverman_bound(long D, const BigInt &disc, long prec = 128) {
  return ball_pow_rational(RealBall(silverman_base(D, disc), prec + 16), silverman_exponent(D)).with_precision(prec);
}

struct ExponentReport {
  long degree = 0;
  long smallest_divisor = 0;
  BigRational gamma;
  BigRational silverman;  // 1/(2D(D-1))
  RealBall sqrt_exponent; // 1/(2D(sqrt(D)+1))
  Comparison gamma_vs_sqrt = Comparison::Undecided;
  Comparison sqrt_vs_silverman = Comparison::Undecided;
  Comparison gamma_vs_silverman = Comparison::Undecided;
  std::optional<BigRational> nu;
  std::optional<BigRational> nu_over_theta; // theta = D(D+1)
  Comparison nu_ratio_vs_silverman = Comparison::Undecided;
};

namespace detail {

inline Comparison from_cmp(int c) { return c < 0 ? Comparison::Less : (c > 0 ? Comparison::Greater : Comparison::Equal); }

/// sqrt(D) vs r, exactly.
inline Comparison compare_sqrt(long D, const BigRational &r) {
  if (r < 0) return Comparison::Greater;
  return from_cmp(cmp(BigRational(D), r * r));
}

} // namespace detail

inline ExponentReport exponent_comparison(long D, std::optional<BigRational> nu = std::nullopt) {
  ExponentReport r;
  r.degree = D;
  r.smallest_divisor = smallest_divisor(D);
  r.gamma = gamma_threshold(D);
  r.silverman = silverman_exponent(D);
  long prec = 128;
  RealBall sd = sqrt(RealBall(BigInt(D), prec));
  r.sqrt_exponent = RealBall(BigInt(1), prec) / (RealBall(BigInt(2 * D), prec) * (sd + RealBall(BigInt(1), prec)));
  // gamma > 1/(2D(s+1))  <=>  s > 1/(2D gamma) - 1
  Comparison c = detail::compare_sqrt(D, BigRational(1) / (BigRational(2 * D) * r.gamma) - 1);
  r.gamma_vs_sqrt = c == Comparison::Greater ? Comparison::Greater
                                             : (c == Comparison::Less ? Comparison::Less : Comparison::Equal);
  // 1/(2D(s+1)) vs 1/(2D(D-1))  <=>  D-2 vs s
  Comparison s = detail::compare_sqrt(D, BigRational(D - 2));
  r.sqrt_vs_silverman = s == Comparison::Less ? Comparison::Greater
                                              : (s == Comparison::Greater ? Comparison::Less : Comparison::Equal);
  r.gamma_vs_silverman = detail::from_cmp(cmp(r.gamma, r.silverman));
  if (nu) {
    r.nu = nu;
    r.nu_over_theta = *nu / BigRational(D * (D + 1));
    r.nu_ratio_vs_silverman = detail::from_cmp(cmp(*r.nu_over_theta, r.silverman));
  }
  return r;
}

} // namespace deltalab
