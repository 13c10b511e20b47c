#pragma once

#include "deltalab/arith/ball.hpp"
#include "deltalab/arith/fast_interval.hpp"
#include "deltalab/poly/resultant.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltalab {

struct RefinementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Certified isolating disk {|z - c| <= radius} for one root of `polynomial`.
/// `location` is the bounding box of the disk.
struct RootDisk {
  ComplexBall location;
  Mpfr radius{RealBall::kRadiusPrec};
  IntPolynomial polynomial;
  int index = 0;
  bool real = false;

  const Mpfr &center_re() const { return location.re.center(); }
  const Mpfr &center_im() const { return location.im.center(); }
};

namespace detail {

template <class R> struct IntervalOps;

template <> struct IntervalOps<FastInterval> {
  using Scalar = double;
  static FastInterval point(double x) { return FastInterval::point(x); }
  static FastInterval integer(const BigInt &z, long) { return FastInterval::from_integer(z); }
  static double lo(const FastInterval &x) { return x.lo; }
  static double hi(const FastInterval &x) { return x.hi; }
  static FastInterval sq(const FastInterval &x) { return x.sqr(); }
  static bool usable(const FastInterval &x) { return x.finite(); }
  static Mpfr to_mpfr(double x) { return Mpfr(x, 53); }
};

template <> struct IntervalOps<RealBall> {
  using Scalar = Mpfr;
  static RealBall point(const Mpfr &x) { return RealBall::from_center_radius(x, Mpfr(RealBall::kRadiusPrec)); }
  static RealBall integer(const BigInt &z, long prec) { return RealBall(z, prec); }
  static Mpfr lo(const RealBall &x) { return x.lower(); }
  static Mpfr hi(const RealBall &x) { return x.upper(); }
  static RealBall sq(const RealBall &x) { return x * x; }
  static bool usable(const RealBall &x) { return mpfr_number_p(x.upper().get()) && mpfr_number_p(x.lower().get()); }
  static Mpfr to_mpfr(const Mpfr &x) { return x; }
};

template <class R> struct CInterval {
  R re, im;
  friend CInterval operator+(const CInterval &a, const CInterval &b) { return {a.re + b.re, a.im + b.im}; }
  friend CInterval operator-(const CInterval &a, const CInterval &b) { return {a.re - b.re, a.im - b.im}; }
  friend CInterval operator*(const CInterval &a, const CInterval &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

template <class R> R magnitude(const CInterval<R> &z) {
  using Ops = IntervalOps<R>;
  return sqrt(Ops::sq(z.re) + Ops::sq(z.im));
}

inline bool scalar_zero(double x) { return x == 0.0; }
inline bool scalar_zero(const Mpfr &x) { return x.is_zero(); }
inline int scalar_sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline int scalar_sign(const Mpfr &x) { return x.sign(); }
inline double scalar_abs(double x) { return std::fabs(x); }
inline Mpfr scalar_abs(const Mpfr &x) { return abs(x); }
inline void scalar_set_zero(double &x) { x = 0.0; }
inline void scalar_set_zero(Mpfr &x) { mpfr_set_zero(x.get(), 1); }

template <class S> struct Approx {
  S re, im;
};

/// Weierstrass inclusion disks: with W_i = f(z_i) / (lc prod_{j != i}(z_i - z_j)),
/// the disks D(z_i, n|W_i|) cover the roots and every connected component
/// made of k disks holds exactly k roots. Returns upper bounds on the radii
/// when all disks are pairwise disjoint and each disk either has a real
/// center or misses the real axis; nullopt otherwise.
template <class R>
std::optional<std::vector<typename IntervalOps<R>::Scalar>>
weierstrass_certify(const IntPolynomial &f, const std::vector<Approx<typename IntervalOps<R>::Scalar>> &z, long prec) {
  using Ops = IntervalOps<R>;
  using S = typename Ops::Scalar;
  size_t n = z.size();
  std::vector<R> coef;
  for (const auto &a : f.coeffs()) coef.push_back(Ops::integer(a, prec));
  R zero = Ops::integer(BigInt(0), prec);
  R nball = Ops::integer(BigInt(static_cast<unsigned long>(n)), prec);
  std::vector<CInterval<R>> pts;
  for (const auto &p : z) pts.push_back({Ops::point(p.re), Ops::point(p.im)});

  std::vector<R> radius;
  for (size_t i = 0; i < n; ++i) {
    CInterval<R> acc{zero, zero};
    for (size_t k = coef.size(); k-- > 0;) acc = acc * pts[i] + CInterval<R>{coef[k], zero};
    R num = magnitude(acc);
    R den = magnitude(CInterval<R>{coef.back(), zero});
    for (size_t j = 0; j < n; ++j)
      if (j != i) den = den * magnitude(pts[i] - pts[j]);
    if (!Ops::usable(num) || !Ops::usable(den) || scalar_sign(Ops::lo(den)) <= 0) return std::nullopt;
    R r = nball * num / den;
    if (!Ops::usable(r)) return std::nullopt;
    radius.push_back(r);
  }
  for (size_t i = 0; i < n; ++i) {
    // a disk with non-real center must miss the real axis
    if (!scalar_zero(z[i].im)) {
      R aim = magnitude(CInterval<R>{zero, pts[i].im});
      if (!(Ops::lo(aim) > Ops::hi(radius[i]))) return std::nullopt;
    }
    for (size_t j = i + 1; j < n; ++j) {
      R d = magnitude(pts[i] - pts[j]);
      R s = radius[i] + radius[j];
      if (!(Ops::lo(d) > Ops::hi(s))) return std::nullopt;
    }
  }
  std::vector<S> out;
  for (const auto &r : radius) out.push_back(Ops::hi(r));
  return out;
}

/// Companion-matrix eigenvalues as starting points.
inline std::vector<std::complex<double>> eigen_seeds(const IntPolynomial &f) {
  int n = f.degree();
  std::vector<std::complex<double>> out;
  double lc = f.lc().get_d();
  bool ok = std::isfinite(lc) && lc != 0.0;
  if (ok && n >= 1) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) {
      double v = -f.coeff(i).get_d() / lc;
      if (!std::isfinite(v)) ok = false;
      C(i, n - 1) = v;
    }
    if (ok) {
      Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
      if (es.info() == Eigen::Success)
        for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
    }
  }
  if (static_cast<int>(out.size()) != n) {
    out.clear();
    for (int i = 0; i < n; ++i) out.push_back(std::polar(1.0 + 0.1 * i, 0.4 + 6.283185307179586 * i / n));
  }
  // separate coincident seeds
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (out[i] == out[j]) out[i] += std::complex<double>(1e-7 * (1.0 + std::abs(out[i])), 1e-7 * (double)(i + 1));
  return out;
}

inline void aberth_double(const IntPolynomial &f, std::vector<std::complex<double>> &z) {
  std::vector<double> c;
  for (const auto &a : f.coeffs()) c.push_back(a.get_d());
  size_t n = z.size();
  for (int it = 0; it < 100; ++it) {
    double maxstep = 0.0;
    for (size_t i = 0; i < n; ++i) {
      std::complex<double> p = 0.0, dp = 0.0;
      for (size_t k = c.size(); k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (dp == 0.0) continue;
      std::complex<double> N = p / dp, S = 0.0;
      for (size_t j = 0; j < n; ++j)
        if (j != i) S += 1.0 / (z[i] - z[j]);
      std::complex<double> w = N / (1.0 - N * S);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      maxstep = std::max(maxstep, std::abs(w) / (1.0 + std::abs(z[i])));
    }
    if (maxstep < 1e-17) break;
  }
}

struct MpC {
  Mpfr re, im;
};

inline MpC mp_add(const MpC &a, const MpC &b) { return {a.re + b.re, a.im + b.im}; }
inline MpC mp_sub(const MpC &a, const MpC &b) { return {a.re - b.re, a.im - b.im}; }
inline MpC mp_mul(const MpC &a, const MpC &b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline MpC mp_div(const MpC &a, const MpC &b) {
  Mpfr n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline Mpfr mp_abs(const MpC &a) { return hypot(a.re, a.im); }

inline void aberth_mpfr(const IntPolynomial &f, std::vector<MpC> &z, long wp) {
  std::vector<Mpfr> c;
  for (const auto &a : f.coeffs()) c.emplace_back(a, wp);
  size_t n = z.size();
  Mpfr zero(wp), one(1.0, wp);
  Mpfr tol(wp);
  mpfr_set_ui_2exp(tol.get(), 1, -(wp - 6), MPFR_RNDN);
  for (int it = 0; it < 80 + static_cast<int>(wp / 8); ++it) {
    Mpfr maxstep(wp);
    for (size_t i = 0; i < n; ++i) {
      MpC p{zero, zero}, dp{zero, zero};
      for (size_t k = c.size(); k-- > 0;) {
        dp = mp_add(mp_mul(dp, z[i]), p);
        p = mp_add(mp_mul(p, z[i]), MpC{c[k], zero});
      }
      if (dp.re.is_zero() && dp.im.is_zero()) continue;
      MpC N = mp_div(p, dp), S{zero, zero};
      for (size_t j = 0; j < n; ++j)
        if (j != i) {
          MpC d = mp_sub(z[i], z[j]);
          if (d.re.is_zero() && d.im.is_zero()) continue;
          S = mp_add(S, mp_div(MpC{one, zero}, d));
        }
      MpC den = mp_sub(MpC{one, zero}, mp_mul(N, S));
      if (den.re.is_zero() && den.im.is_zero()) continue;
      MpC w = mp_div(N, den);
      if (!mpfr_number_p(w.re.get()) || !mpfr_number_p(w.im.get())) continue;
      z[i] = mp_sub(z[i], w);
      Mpfr step = mp_abs(w) / (one + mp_abs(z[i]));
      if (step > maxstep) maxstep = step;
    }
    if (maxstep < tol) break;
  }
}

/// Snap near-real approximations onto the axis and make non-real ones come
/// in exact conjugate pairs.
template <class S> void symmetrize(std::vector<Approx<S>> &z, const S &tol) {
  size_t n = z.size();
  std::vector<bool> done(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (scalar_abs(z[i].im) <= tol * scalar_abs(z[i].re) + tol) {
      scalar_set_zero(z[i].im);
      done[i] = true;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (done[i] || scalar_sign(z[i].im) <= 0) continue;
    // nearest unpaired approximation with negative imaginary part
    size_t best = n;
    S bestd = tol;
    for (size_t j = 0; j < n; ++j) {
      if (done[j] || j == i || scalar_sign(z[j].im) >= 0) continue;
      S d = scalar_abs(z[j].re - z[i].re) + scalar_abs(z[j].im + z[i].im);
      if (best == n || d < bestd) {
        best = j;
        bestd = d;
      }
    }
    if (best == n) continue;
    z[best].re = z[i].re;
    z[best].im = -z[i].im;
    done[i] = done[best] = true;
  }
}

inline bool radius_ok(const Mpfr &r, const Mpfr &re, const Mpfr &im, long precision) {
  Mpfr bound(64);
  Mpfr a(64);
  mpfr_hypot(a.get(), re.get(), im.get(), MPFR_RNDD);
  mpfr_add_ui(bound.get(), a.get(), 1, MPFR_RNDD);
  mpfr_div_2si(bound.get(), bound.get(), precision, MPFR_RNDD);
  return r <= bound;
}

template <class S>
std::vector<RootDisk> make_disks(const IntPolynomial &f, const std::vector<Approx<S>> &z, const std::vector<S> &rad) {
  using Ops = IntervalOps<std::conditional_t<std::is_same_v<S, double>, FastInterval, RealBall>>;
  std::vector<RootDisk> out;
  for (size_t i = 0; i < z.size(); ++i) {
    RootDisk d;
    Mpfr r(RealBall::kRadiusPrec);
    mpfr_set(r.get(), Ops::to_mpfr(rad[i]).get(), MPFR_RNDU);
    d.radius = r;
    d.location = {RealBall::from_center_radius(Ops::to_mpfr(z[i].re), r),
                  RealBall::from_center_radius(Ops::to_mpfr(z[i].im), r)};
    d.polynomial = f;
    d.real = d.location.im.center().is_zero();
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const RootDisk &a, const RootDisk &b) {
    if (a.center_re() != b.center_re()) return a.center_re() < b.center_re();
    return a.center_im() < b.center_im();
  });
  for (size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
  return out;
}

} // namespace detail

/// Certified isolation of all complex roots of a squarefree polynomial.
/// Each disk has radius at most 2^-precision (1 + |center|).
inline std::vector<RootDisk> isolate_roots(const IntPolynomial &f, long precision = 53) {
  if (f.degree() < 1) throw std::domain_error("isolate_roots: degree must be at least 1");
  if (!is_squarefree(f)) throw std::domain_error("isolate_roots: polynomial is not squarefree");
  if (precision > precision_cap())
    throw RefinementError("isolate_roots: requested precision " + std::to_string(precision) + " exceeds cap " +
                          std::to_string(precision_cap()));
  std::vector<std::complex<double>> seeds = detail::eigen_seeds(f);
  detail::aberth_double(f, seeds);

  // 53-bit rung
  if (precision <= 40) {
    std::vector<detail::Approx<double>> z;
    for (auto s : seeds) z.push_back({s.real(), s.imag()});
    detail::symmetrize(z, 1e-9);
    if (auto rad = detail::weierstrass_certify<FastInterval>(f, z, 53)) {
      bool ok = true;
      for (size_t i = 0; i < z.size() && ok; ++i)
        ok = detail::radius_ok(Mpfr((*rad)[i], 53), Mpfr(z[i].re, 53), Mpfr(z[i].im, 53), precision);
      if (ok) return detail::make_disks<double>(f, z, *rad);
    }
  }

  long cap = precision_cap();
  long wp = std::max<long>(64, precision + 32);
  std::vector<detail::MpC> z;
  for (auto s : seeds) z.push_back({Mpfr(s.real(), wp), Mpfr(s.imag(), wp)});
  while (wp <= 4 * cap) {
    for (auto &v : z) {
      v.re = with_prec(v.re, wp);
      v.im = with_prec(v.im, wp);
    }
    detail::aberth_mpfr(f, z, wp);
    std::vector<detail::Approx<Mpfr>> a;
    for (const auto &v : z) a.push_back({v.re, v.im});
    Mpfr tol(wp);
    mpfr_set_ui_2exp(tol.get(), 1, -(wp / 2), MPFR_RNDN);
    detail::symmetrize(a, tol);
    if (auto rad = detail::weierstrass_certify<RealBall>(f, a, wp)) {
      bool ok = true;
      for (size_t i = 0; i < a.size() && ok; ++i) ok = detail::radius_ok((*rad)[i], a[i].re, a[i].im, precision);
      if (ok) return detail::make_disks<Mpfr>(f, a, *rad);
    }
    for (size_t i = 0; i < z.size(); ++i) z[i] = {a[i].re, a[i].im};
    wp *= 2;
  }
  throw RefinementError("isolate_roots: certification failed below working precision " + std::to_string(4 * cap) +
                        " for " + f.to_string());
}

/// Real embeddings and complex-conjugate pairs of a squarefree polynomial.
inline std::pair<int, int> root_signature(const IntPolynomial &f) {
  auto disks = isolate_roots(f, 20);
  int r1 = 0;
  for (const auto &d : disks) r1 += d.real ? 1 : 0;
  return {r1, (f.degree() - r1) / 2};
}

} // namespace deltalab
