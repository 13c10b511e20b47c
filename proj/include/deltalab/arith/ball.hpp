#pragma once

#include "deltalab/arith/mpfr.hpp"
#include "deltalab/arith/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace deltalab {

enum class BallOrder { Less, Greater, Overlapping };

/// Real ball [center - radius, center + radius] with a dyadic center at
/// `prec` bits and an upward-rounded dyadic radius. Every operation returns a
/// ball containing the exact image of its inputs.
class RealBall {
public:
  RealBall() : RealBall(BigInt(0), 64) {}

  RealBall(const BigInt &z, long prec) : center_(z, std::max(prec, bits_of(z))), radius_(kRadiusPrec) {}

  RealBall(const BigRational &q, long prec) : center_(prec), radius_(kRadiusPrec) {
    int t = mpfr_set_q(center_.get(), q.get_mpq_t(), MPFR_RNDN);
    if (t != 0) ulp_into_radius();
  }

  /// Interval hull of [lo, hi] (lo <= hi), center at `prec` bits.
  static RealBall from_bounds(const Mpfr &lo, const Mpfr &hi, long prec) {
    RealBall b;
    b.center_ = Mpfr(prec);
    mpfr_add(b.center_.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(b.center_.get(), b.center_.get(), 1, MPFR_RNDN);
    Mpfr d1(kRadiusPrec), d2(kRadiusPrec);
    mpfr_sub(d1.get(), hi.get(), b.center_.get(), MPFR_RNDU);
    mpfr_sub(d2.get(), b.center_.get(), lo.get(), MPFR_RNDU);
    b.radius_ = Mpfr(kRadiusPrec);
    mpfr_max(b.radius_.get(), d1.get(), d2.get(), MPFR_RNDU);
    if (mpfr_sgn(b.radius_.get()) < 0) mpfr_set_zero(b.radius_.get(), 1);
    return b;
  }

  static RealBall from_center_radius(Mpfr center, Mpfr radius) {
    RealBall b;
    b.center_ = std::move(center);
    b.radius_ = Mpfr(kRadiusPrec);
    mpfr_set(b.radius_.get(), radius.get(), MPFR_RNDU);
    return b;
  }

  const Mpfr &center() const { return center_; }
  const Mpfr &radius() const { return radius_; }
  long precision() const { return center_.prec(); }
  bool is_exact() const { return radius_.is_zero(); }

  Mpfr lower(long prec = 0) const {
    Mpfr r(prec ? prec : precision() + 2);
    mpfr_sub(r.get(), center_.get(), radius_.get(), MPFR_RNDD);
    return r;
  }
  Mpfr upper(long prec = 0) const {
    Mpfr r(prec ? prec : precision() + 2);
    mpfr_add(r.get(), center_.get(), radius_.get(), MPFR_RNDU);
    return r;
  }

  bool contains_zero() const { return lower().sign() <= 0 && upper().sign() >= 0; }
  bool is_positive() const { return lower().sign() > 0; }
  bool is_negative() const { return upper().sign() < 0; }

  bool contains(const BigRational &q) const {
    Mpfr lo = lower(), hi = upper();
    return mpfr_cmp_q(lo.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.get(), q.get_mpq_t()) >= 0;
  }
  bool contains(const RealBall &o) const {
    return mpfr_lessequal_p(lower().get(), o.lower().get()) && mpfr_greaterequal_p(upper().get(), o.upper().get());
  }

  /// "center ± radius (bits)"
  std::string to_string(int digits = 20) const {
    return center_.to_decimal(digits) + " ± " + radius_.to_decimal(3) + " (" + std::to_string(precision()) + " bits)";
  }

  friend RealBall operator+(const RealBall &a, const RealBall &b) { return add_sub(a, b, false); }
  friend RealBall operator-(const RealBall &a, const RealBall &b) { return add_sub(a, b, true); }
  RealBall operator-() const {
    RealBall r = *this;
    mpfr_neg(r.center_.get(), r.center_.get(), MPFR_RNDN);
    return r;
  }

  friend RealBall operator*(const RealBall &a, const RealBall &b) {
    long p = std::max(a.precision(), b.precision());
    RealBall r;
    r.center_ = Mpfr(p);
    int t = mpfr_mul(r.center_.get(), a.center_.get(), b.center_.get(), MPFR_RNDN);
    Mpfr ac = abs_up(a.center_), bc = abs_up(b.center_);
    Mpfr t1(kRadiusPrec), t2(kRadiusPrec), t3(kRadiusPrec);
    mpfr_mul(t1.get(), ac.get(), b.radius_.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), bc.get(), a.radius_.get(), MPFR_RNDU);
    mpfr_mul(t3.get(), a.radius_.get(), b.radius_.get(), MPFR_RNDU);
    r.radius_ = Mpfr(kRadiusPrec);
    mpfr_add(r.radius_.get(), t1.get(), t2.get(), MPFR_RNDU);
    mpfr_add(r.radius_.get(), r.radius_.get(), t3.get(), MPFR_RNDU);
    if (t != 0) r.ulp_into_radius();
    return r;
  }

  friend RealBall operator/(const RealBall &a, const RealBall &b) {
    if (b.contains_zero()) throw std::domain_error("ball division by a ball containing zero");
    long p = std::max(a.precision(), b.precision());
    // interval quotient via endpoint products with directed rounding
    Mpfr alo = a.lower(p + 4), ahi = a.upper(p + 4), blo = b.lower(p + 4), bhi = b.upper(p + 4);
    Mpfr lo(p + 4), hi(p + 4);
    const Mpfr *num[2] = {&alo, &ahi};
    const Mpfr *den[2] = {&blo, &bhi};
    bool first = true;
    for (auto *n : num)
      for (auto *d : den) {
        Mpfr l(p + 4), h(p + 4);
        mpfr_div(l.get(), n->get(), d->get(), MPFR_RNDD);
        mpfr_div(h.get(), n->get(), d->get(), MPFR_RNDU);
        if (first || l < lo) lo = l;
        if (first || h > hi) hi = h;
        first = false;
      }
    return from_bounds(lo, hi, p);
  }

  RealBall &operator+=(const RealBall &b) { return *this = *this + b; }
  RealBall &operator-=(const RealBall &b) { return *this = *this - b; }
  RealBall &operator*=(const RealBall &b) { return *this = *this * b; }

  RealBall with_precision(long prec) const {
    RealBall r;
    r.center_ = Mpfr(prec);
    int t = mpfr_set(r.center_.get(), center_.get(), MPFR_RNDN);
    r.radius_ = radius_;
    if (t != 0) r.ulp_into_radius();
    return r;
  }

  static constexpr long kRadiusPrec = 32;

private:
  static long bits_of(const BigInt &z) { return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2)) + 1; }

  static Mpfr abs_up(const Mpfr &x) {
    Mpfr r(kRadiusPrec);
    mpfr_abs(r.get(), x.get(), MPFR_RNDU);
    return r;
  }

  // widen the radius by one ulp of the (rounded) center
  void ulp_into_radius() {
    if (center_.is_zero()) return;
    Mpfr u(kRadiusPrec);
    mpfr_set_ui_2exp(u.get(), 1, mpfr_get_exp(center_.get()) - center_.prec(), MPFR_RNDU);
    mpfr_add(radius_.get(), radius_.get(), u.get(), MPFR_RNDU);
  }

  static RealBall add_sub(const RealBall &a, const RealBall &b, bool sub) {
    long p = std::max(a.precision(), b.precision());
    RealBall r;
    r.center_ = Mpfr(p);
    int t = sub ? mpfr_sub(r.center_.get(), a.center_.get(), b.center_.get(), MPFR_RNDN)
                : mpfr_add(r.center_.get(), a.center_.get(), b.center_.get(), MPFR_RNDN);
    r.radius_ = Mpfr(kRadiusPrec);
    mpfr_add(r.radius_.get(), a.radius_.get(), b.radius_.get(), MPFR_RNDU);
    if (t != 0) r.ulp_into_radius();
    return r;
  }

  Mpfr center_;
  Mpfr radius_;
};

inline BallOrder ball_compare(const RealBall &a, const RealBall &b) {
  if (mpfr_less_p(a.upper().get(), b.lower().get())) return BallOrder::Less;
  if (mpfr_greater_p(a.lower().get(), b.upper().get())) return BallOrder::Greater;
  return BallOrder::Overlapping;
}

inline BallOrder ball_compare(const RealBall &a, const BigRational &q) {
  if (mpfr_cmp_q(a.upper().get(), q.get_mpq_t()) < 0) return BallOrder::Less;
  if (mpfr_cmp_q(a.lower().get(), q.get_mpq_t()) > 0) return BallOrder::Greater;
  return BallOrder::Overlapping;
}

namespace detail {

// Applies an increasing function endpoint-wise with directed rounding.
template <class Fn>
RealBall monotone_increasing(const RealBall &x, long prec, Fn &&fn) {
  Mpfr lo = x.lower(prec + 8), hi = x.upper(prec + 8);
  Mpfr flo(prec + 8), fhi(prec + 8);
  fn(flo, lo, MPFR_RNDD);
  fn(fhi, hi, MPFR_RNDU);
  return RealBall::from_bounds(flo, fhi, prec);
}

} // namespace detail

inline RealBall sqrt(const RealBall &x) {
  if (x.is_negative()) throw std::domain_error("sqrt of a negative ball");
  long p = x.precision();
  Mpfr lo = x.lower(p + 8);
  if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
  Mpfr hi = x.upper(p + 8);
  Mpfr slo(p + 8), shi(p + 8);
  mpfr_sqrt(slo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(shi.get(), hi.get(), MPFR_RNDU);
  return RealBall::from_bounds(slo, shi, p);
}

inline RealBall log(const RealBall &x) {
  if (!x.is_positive()) throw std::domain_error("log of a ball not strictly positive");
  return detail::monotone_increasing(x, x.precision(), [](Mpfr &out, const Mpfr &in, mpfr_rnd_t r) {
    mpfr_log(out.get(), in.get(), r);
  });
}

inline RealBall exp(const RealBall &x) {
  return detail::monotone_increasing(x, x.precision(), [](Mpfr &out, const Mpfr &in, mpfr_rnd_t r) {
    mpfr_exp(out.get(), in.get(), r);
  });
}

inline RealBall abs(const RealBall &x) {
  if (!x.contains_zero()) return x.is_negative() ? -x : x;
  Mpfr zero(x.precision());
  Mpfr hi(x.precision() + 8), a(x.precision() + 8), b(x.precision() + 8);
  mpfr_abs(a.get(), x.lower().get(), MPFR_RNDU);
  mpfr_abs(b.get(), x.upper().get(), MPFR_RNDU);
  mpfr_max(hi.get(), a.get(), b.get(), MPFR_RNDU);
  return RealBall::from_bounds(zero, hi, x.precision());
}

/// Non-negative integer power.
inline RealBall pow(const RealBall &x, unsigned long n) {
  if (n == 0) return RealBall(BigInt(1), x.precision());
  if (x.is_positive())
    return detail::monotone_increasing(x, x.precision(), [n](Mpfr &out, const Mpfr &in, mpfr_rnd_t r) {
      mpfr_pow_ui(out.get(), in.get(), n, r);
    });
  RealBall result(BigInt(1), x.precision()), base = x;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

/// x^e for a ball of positive reals and rational e.
inline RealBall ball_pow_rational(const RealBall &x, const BigRational &e) {
  if (!x.is_positive()) throw std::domain_error("ball_pow_rational: base must be positive");
  if (e == 0) return RealBall(BigInt(1), x.precision());
  BigInt num = e.get_num(), den = e.get_den();
  if (!den.fits_ulong_p() || !num.fits_slong_p()) throw std::domain_error("ball_pow_rational: exponent too large");
  unsigned long q = den.get_ui();
  long pnum = num.get_si();
  unsigned long pa = static_cast<unsigned long>(pnum < 0 ? -pnum : pnum);
  long prec = x.precision();
  long wp = prec + 16;
  Mpfr lo = x.lower(wp), hi = x.upper(wp);
  auto up = [&](const Mpfr &v, mpfr_rnd_t r) {
    Mpfr root(wp), out(wp);
    mpfr_rootn_ui(root.get(), v.get(), q, r);
    mpfr_pow_ui(out.get(), root.get(), pa, r);
    return out;
  };
  Mpfr rlo(wp), rhi(wp);
  if (pnum > 0) {
    rlo = up(lo, MPFR_RNDD);
    rhi = up(hi, MPFR_RNDU);
  } else {
    Mpfr dlo = up(hi, MPFR_RNDU), dhi = up(lo, MPFR_RNDD);
    mpfr_ui_div(rlo.get(), 1, dlo.get(), MPFR_RNDD);
    mpfr_ui_div(rhi.get(), 1, dhi.get(), MPFR_RNDU);
  }
  return RealBall::from_bounds(rlo, rhi, prec);
}

/// Complex box with ball coordinates.
struct ComplexBall {
  RealBall re;
  RealBall im;

  friend ComplexBall operator+(const ComplexBall &a, const ComplexBall &b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexBall operator-(const ComplexBall &a, const ComplexBall &b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexBall operator*(const ComplexBall &a, const ComplexBall &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexBall operator/(const ComplexBall &a, const ComplexBall &b) {
    RealBall n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  RealBall abs() const { return sqrt(re * re + im * im); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

} // namespace deltalab
