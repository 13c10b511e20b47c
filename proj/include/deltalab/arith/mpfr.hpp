#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdlib>
#include <string>
#include <utility>

namespace deltalab {

/// Owning wrapper around mpfr_t. Arithmetic operators round to nearest at the
/// larger operand precision; directed rounding goes through the raw handle.
class Mpfr {
public:
  explicit Mpfr(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Mpfr(const mpz_class &z, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  Mpfr(const mpq_class &q, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  Mpfr(const Mpfr &o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr &&o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mpfr &operator=(const Mpfr &o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr &operator=(Mpfr &&o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Exact binary form "m*2^e" (m integer), used for lossless persistence.
  std::string to_exact_string() const {
    if (mpfr_zero_p(v_)) return "0";
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    // strip trailing zero bits so the text is canonical
    auto tz = mpz_scan1(m.get_mpz_t(), 0);
    if (tz > 0) {
      mpz_fdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), tz);
      e += static_cast<mpfr_exp_t>(tz);
    }
    return m.get_str() + "*2^" + std::to_string(e);
  }

  static Mpfr from_exact_string(const std::string &s, mpfr_prec_t prec) {
    Mpfr r(prec);
    if (s == "0") return r;
    auto star = s.find("*2^");
    mpz_class m(s.substr(0, star));
    long e = std::stol(s.substr(star + 3));
    auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(m.get_mpz_t(), 2));
    if (bits > prec) r = Mpfr(bits);
    mpfr_set_z_2exp(r.v_, m.get_mpz_t(), e, MPFR_RNDN);
    return r;
  }

  /// Decimal rendering with `digits` significant digits.
  std::string to_decimal(int digits = 20) const {
    if (mpfr_zero_p(v_)) return "0";
    char *buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  friend Mpfr operator+(const Mpfr &a, const Mpfr &b) {
    Mpfr r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Mpfr operator-(const Mpfr &a, const Mpfr &b) {
    Mpfr r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Mpfr operator*(const Mpfr &a, const Mpfr &b) {
    Mpfr r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Mpfr operator/(const Mpfr &a, const Mpfr &b) {
    Mpfr r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  Mpfr operator-() const {
    Mpfr r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Mpfr &operator+=(const Mpfr &b) { return *this = *this + b; }
  Mpfr &operator-=(const Mpfr &b) { return *this = *this - b; }
  Mpfr &operator*=(const Mpfr &b) { return *this = *this * b; }

  friend bool operator<(const Mpfr &a, const Mpfr &b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Mpfr &a, const Mpfr &b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Mpfr &a, const Mpfr &b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Mpfr &a, const Mpfr &b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Mpfr &a, const Mpfr &b) { return mpfr_equal_p(a.v_, b.v_); }

private:
  mpfr_t v_;
};

inline Mpfr abs(const Mpfr &a) {
  Mpfr r(a.prec());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline Mpfr sqrt(const Mpfr &a) {
  Mpfr r(a.prec());
  mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
  return r;
}

inline Mpfr hypot(const Mpfr &a, const Mpfr &b) {
  Mpfr r(std::max(a.prec(), b.prec()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

/// Same value re-rounded to a new precision.
inline Mpfr with_prec(const Mpfr &a, mpfr_prec_t prec) {
  Mpfr r(prec);
  mpfr_set(r.get(), a.get(), MPFR_RNDN);
  return r;
}

/// Upper limit of the certified-comparison precision ladder, from
/// DELTA_LAB_PRECISION_CAP (bits), default 4096.
inline long precision_cap() {
  static const long cap = [] {
    if (const char *env = std::getenv("DELTA_LAB_PRECISION_CAP")) {
      char *end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 64) return v;
    }
    return 4096L;
  }();
  return cap;
}

} // namespace deltalab
