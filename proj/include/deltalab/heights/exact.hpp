#pragma once

#include "deltalab/heights/mahler.hpp"

#include <optional>
#include <vector>

namespace deltalab {

enum class Comparison { Less, Equal, Greater, Undecided };

inline const char *to_string(Comparison c) {
  switch (c) {
  case Comparison::Less: return "Less";
  case Comparison::Equal: return "Equal";
  case Comparison::Greater: return "Greater";
  default: return "Undecided";
  }
}

namespace detail {

struct RootList {
  std::vector<ComplexBall> roots; // with multiplicity
  std::vector<bool> outside;
  BigInt lc;
};

inline RootList root_list(const MahlerStructure &ms, long prec) {
  MahlerStructure r = ms.refined(prec);
  RootList out;
  out.lc = ms.poly().lc();
  for (const auto &f : r.factors())
    for (int m = 0; m < f.multiplicity; ++m)
      for (size_t i = 0; i < f.roots.size(); ++i) {
        out.roots.push_back(f.roots[i].location);
        out.outside.push_back(f.position[i] == RootPosition::Outside);
      }
  return out;
}

inline ComplexBall cconst(const BigInt &z, long prec) { return {RealBall(z, prec), RealBall(BigInt(0), prec)}; }

/// The real algebraic integer P = lc * prod_{outside} root, with M = |P|.
inline ComplexBall outside_product(const RootList &rl, long prec) {
  ComplexBall p = cconst(rl.lc, prec);
  for (size_t i = 0; i < rl.roots.size(); ++i)
    if (rl.outside[i]) p = p * rl.roots[i];
  return p;
}

/// Rounds a ball to the unique integer it contains, if its diameter is < 1.
inline std::optional<BigInt> round_ball(const RealBall &b) {
  if (!(mpfr_cmp_d(b.radius().get(), 0.5) < 0)) return std::nullopt;
  Mpfr c = b.center();
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), c.get(), MPFR_RNDN);
  if (!b.contains(BigRational(z))) return std::nullopt;
  return z;
}

/// Monic integer polynomial whose roots are lc * prod_{T} root over all
/// k-subsets T of the roots (with multiplicity).
inline IntPolynomial compound_polynomial(const MahlerStructure &ms, int k) {
  long cap = precision_cap();
  for (long wp = 128;; wp *= 2) {
    RootList rl = root_list(ms, wp);
    size_t n = rl.roots.size();
    std::vector<ComplexBall> coef{cconst(BigInt(1), wp)};
    std::vector<size_t> idx(static_cast<size_t>(k));
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    while (true) {
      ComplexBall v = cconst(rl.lc, wp);
      for (size_t i : idx) v = v * rl.roots[i];
      // multiply coef by (x - v)
      std::vector<ComplexBall> next(coef.size() + 1, cconst(BigInt(0), wp));
      for (size_t i = 0; i < coef.size(); ++i) {
        next[i + 1] = next[i + 1] + coef[i];
        next[i] = next[i] - coef[i] * v;
      }
      coef = std::move(next);
      size_t i = idx.size();
      while (i > 0 && idx[i - 1] == n - idx.size() + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
    std::vector<BigInt> c;
    bool ok = true;
    for (const auto &z : coef) {
      auto re = round_ball(z.re);
      if (!re || !z.im.contains(BigRational(0)) || !(mpfr_cmp_d(z.im.radius().get(), 0.5) < 0)) {
        ok = false;
        break;
      }
      c.push_back(*re);
    }
    if (ok) return IntPolynomial(std::move(c));
    if (wp >= cap) throw RefinementError("compound polynomial coefficients not resolved at the precision cap");
  }
}

inline ComplexBall eval_ball(const IntPolynomial &q, const ComplexBall &z, long prec) {
  ComplexBall acc = cconst(BigInt(0), prec);
  for (int i = q.degree(); i >= 0; --i) acc = acc * z + cconst(q.coeff(i), prec);
  return acc;
}

} // namespace detail

/// Minimal polynomial of P = lc * prod_{outside} root (so M = |P|); monic
/// with integer coefficients.
inline IntPolynomial outside_product_minpoly(const MahlerStructure &ms) {
  int k = ms.outside_count();
  if (k == 0) return IntPolynomial(std::vector<BigInt>{-ms.poly().lc(), BigInt(1)});
  IntPolynomial C = detail::compound_polynomial(ms, k);
  auto fz = factor_rational(C);
  std::vector<IntPolynomial> cands;
  for (auto &[g, m] : fz.factors) cands.push_back(g);
  long cap = precision_cap();
  for (long wp = 64;; wp *= 2) {
    detail::RootList rl = detail::root_list(ms, wp);
    ComplexBall P = detail::outside_product(rl, wp);
    std::vector<IntPolynomial> keep;
    for (const auto &g : cands)
      if (detail::eval_ball(g, P, wp).contains_zero()) keep.push_back(g);
    cands = keep;
    if (cands.size() == 1) return cands[0];
    if (cands.empty()) throw std::logic_error("outside product is a root of no compound factor");
    if (wp >= cap) throw RefinementError("minimal polynomial of the outside product not isolated at the cap");
  }
}

/// True iff P^{2b} * den^{2a} == num^{2a} where Q is the monic minimal
/// polynomial of P, i.e. M^b = (num/den)^a for M = |P|, a >= 0.
inline bool measure_power_equals(const IntPolynomial &Q, unsigned long b, const BigRational &base, unsigned long a) {
  BigInt num = pow(BigInt(base.get_num()), 2 * a), den = pow(BigInt(base.get_den()), 2 * a);
  // x^{2b} mod Q by square and multiply with monic reduction
  IntPolynomial r = IntPolynomial::constant(1), x{0, 1};
  unsigned long e = 2 * b;
  IntPolynomial base_p = detail::monic_divmod(x, Q).second;
  while (e) {
    if (e & 1) r = detail::monic_divmod(r * base_p, Q).second;
    e >>= 1;
    if (e) base_p = detail::monic_divmod(base_p * base_p, Q).second;
  }
  return den * r == IntPolynomial::constant(num);
}

inline BigRational rational_power(const BigRational &b, const BigInt &e) {
  if (!e.fits_slong_p()) throw std::domain_error("exponent too large");
  return pow(b, e.get_si());
}

/// Certified comparison of M(f) against base^exponent (base > 0 rational,
/// exponent >= 0 rational). Equal is only returned when proven exactly.
inline Comparison compare_mahler_power(const MahlerStructure &ms, const BigRational &base, const BigRational &exponent,
                                       bool exact_machinery = true) {
  if (base <= 0) throw std::domain_error("compare_mahler_power: base must be positive");
  if (exponent < 0) throw std::domain_error("compare_mahler_power: exponent must be non-negative");
  BigInt a = exponent.get_num(), b = exponent.get_den();
  if (auto m = ms.exact_integer()) {
    // m^b vs base^a
    BigRational lhs = rational_power(BigRational(*m), b), rhs = rational_power(base, a);
    int c = cmp(lhs, rhs);
    return c < 0 ? Comparison::Less : (c > 0 ? Comparison::Greater : Comparison::Equal);
  }
  long cap = precision_cap();
  bool tried_exact = false;
  for (long prec = 64;; prec *= 2) {
    prec = std::min(prec, cap);
    RealBall lhs = ms.value(prec);
    RealBall rhs = exponent == 0 ? RealBall(BigInt(1), prec) : ball_pow_rational(RealBall(base, prec + 16), exponent);
    BallOrder o = ball_compare(lhs, rhs);
    if (o == BallOrder::Less) return Comparison::Less;
    if (o == BallOrder::Greater) return Comparison::Greater;
    if (exact_machinery && !tried_exact && prec >= 128) {
      tried_exact = true;
      IntPolynomial Q = outside_product_minpoly(ms);
      if (measure_power_equals(Q, b.get_ui(), base, a.get_ui())) return Comparison::Equal;
    }
    if (prec >= cap) return Comparison::Undecided;
  }
}

namespace detail {

/// Index of the unique root disk of `q` meeting ball z, refining both.
inline std::optional<int> locate_root(const IntPolynomial &q, const ComplexBall &z, long prec) {
  auto disks = isolate_roots(q, std::min(prec, precision_cap()));
  std::optional<int> hit;
  for (const auto &d : disks) {
    // box intersection test
    bool meets = !(ball_compare(d.location.re, z.re) != BallOrder::Overlapping ||
                   ball_compare(d.location.im, z.im) != BallOrder::Overlapping);
    if (meets) {
      if (hit) return std::nullopt;
      hit = d.index;
    }
  }
  return hit;
}

} // namespace detail

/// Certified comparison of two Mahler measures; Equal proven exactly by
/// identifying both outside products as the same root of one minimal
/// polynomial (up to sign).
inline Comparison compare_mahler(const MahlerStructure &m1, const MahlerStructure &m2, bool exact_machinery = true) {
  auto e1 = m1.exact_integer(), e2 = m2.exact_integer();
  if (e1 && e2) {
    int c = cmp(*e1, *e2);
    return c < 0 ? Comparison::Less : (c > 0 ? Comparison::Greater : Comparison::Equal);
  }
  if (e1) {
    Comparison c = compare_mahler_power(m2, BigRational(*e1), BigRational(1), exact_machinery);
    if (c == Comparison::Less) return Comparison::Greater;
    if (c == Comparison::Greater) return Comparison::Less;
    return c;
  }
  if (e2) return compare_mahler_power(m1, BigRational(*e2), BigRational(1), exact_machinery);
  long cap = precision_cap();
  bool tried_exact = false;
  for (long prec = 64;; prec *= 2) {
    prec = std::min(prec, cap);
    BallOrder o = ball_compare(m1.value(prec), m2.value(prec));
    if (o == BallOrder::Less) return Comparison::Less;
    if (o == BallOrder::Greater) return Comparison::Greater;
    if (exact_machinery && !tried_exact && prec >= 128) {
      tried_exact = true;
      IntPolynomial q1 = outside_product_minpoly(m1), q2 = outside_product_minpoly(m2);
      IntPolynomial q2neg = q2.negate_x();
      if (q2neg.lc() < 0) q2neg = -q2neg;
      for (int sign : {1, -1}) {
        if ((sign == 1 && q2 != q1) || (sign == -1 && q2neg != q1)) continue;
        for (long wp = 64; wp <= cap; wp *= 2) {
          ComplexBall p1 = detail::outside_product(detail::root_list(m1, wp), wp);
          ComplexBall p2 = detail::outside_product(detail::root_list(m2, wp), wp);
          if (sign == -1) p2 = {-p2.re, -p2.im};
          auto i1 = detail::locate_root(q1, p1, wp), i2 = detail::locate_root(q1, p2, wp);
          if (i1 && i2) {
            if (*i1 == *i2) return Comparison::Equal;
            break;
          }
        }
      }
    }
    if (prec >= cap) return Comparison::Undecided;
  }
}

} // namespace deltalab
