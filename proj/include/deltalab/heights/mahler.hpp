#pragma once

#include "deltalab/poly/factor.hpp"
#include "deltalab/poly/roots.hpp"
#include "deltalab/poly/sturm.hpp"

#include <optional>
#include <string>
#include <vector>

namespace deltalab {

enum class RootPosition { Inside, OnCircle, Outside };

namespace detail {

/// h with g(x) = x^m h(x + 1/x) for a palindromic g of degree 2m.
inline IntPolynomial trace_polynomial(const IntPolynomial &g) {
  int m = g.degree() / 2;
  IntPolynomial y{0, 1};
  IntPolynomial vprev{2}, v = y; // V_0, V_1
  IntPolynomial h = IntPolynomial::constant(g.coeff(m));
  for (int j = 1; j <= m; ++j) {
    h = h + IntPolynomial::constant(g.coeff(m + j)) * v;
    IntPolynomial next = y * v - vprev;
    vprev = v;
    v = next;
  }
  return h;
}

/// Number of roots of an irreducible polynomial on the unit circle (exact).
inline int unit_circle_roots(const IntPolynomial &g) {
  if (g.degree() == 1) return abs(g.coeff(0)) == abs(g.coeff(1)) ? 1 : 0;
  if (g.reversed() != g) return 0;
  IntPolynomial h = trace_polynomial(g);
  SturmSequence s(h);
  // roots in (-2, 2): h(2) = g(1) != 0 for irreducible g of degree >= 2
  return 2 * s.count(BigRational(-2), BigRational(2));
}

inline RootPosition classify_disk(const RootDisk &d, bool &decided) {
  long p = std::max<long>(64, d.location.re.precision());
  Mpfr c(p), lo(p), hi(p);
  mpfr_hypot(c.get(), d.center_re().get(), d.center_im().get(), MPFR_RNDU);
  mpfr_add(hi.get(), c.get(), d.radius.get(), MPFR_RNDU);
  decided = true;
  if (mpfr_cmp_ui(hi.get(), 1) < 0) return RootPosition::Inside;
  mpfr_hypot(c.get(), d.center_re().get(), d.center_im().get(), MPFR_RNDD);
  mpfr_sub(lo.get(), c.get(), d.radius.get(), MPFR_RNDD);
  if (mpfr_cmp_ui(lo.get(), 1) > 0) return RootPosition::Outside;
  decided = false;
  return RootPosition::OnCircle;
}

} // namespace detail

/// Root data of one irreducible factor, with each root placed relative to
/// the unit circle.
struct MahlerFactor {
  IntPolynomial poly;
  int multiplicity = 1;
  int on_circle = 0;
  long precision = 0;
  std::vector<RootDisk> roots;
  std::vector<RootPosition> position;

  int outside_count() const {
    int n = 0;
    for (auto p : position) n += p == RootPosition::Outside;
    return n;
  }

  /// Isolate at `prec` and place every root; the on-circle count is known
  /// exactly, so refinement stops as soon as all other roots are decided.
  static MahlerFactor analyze(const IntPolynomial &g, int mult, long prec) {
    MahlerFactor mf;
    mf.poly = g;
    mf.multiplicity = mult;
    mf.on_circle = detail::unit_circle_roots(g);
    if (g.degree() == 1) {
      const BigInt &a = g.coeff(1), &b = g.coeff(0);
      long wp = std::max<long>(prec, 64);
      RootDisk d;
      RealBall r(BigRational(-b, a), wp);
      d.location = {r, RealBall(BigInt(0), wp)};
      d.radius = r.radius();
      d.polynomial = g;
      d.real = true;
      mf.roots.push_back(d);
      int c = cmp(abs(a), abs(b));
      mf.position.push_back(c > 0 ? RootPosition::Inside : (c < 0 ? RootPosition::Outside : RootPosition::OnCircle));
      mf.precision = wp;
      return mf;
    }
    long cap = precision_cap();
    for (long p = prec;; p = std::min(2 * p, cap)) {
      mf.roots = isolate_roots(g, p);
      mf.position.clear();
      int undecided = 0;
      for (const auto &d : mf.roots) {
        bool ok;
        mf.position.push_back(detail::classify_disk(d, ok));
        undecided += !ok;
      }
      mf.precision = p;
      if (undecided == mf.on_circle) return mf;
      if (undecided < mf.on_circle) throw std::logic_error("unit circle root count mismatch for " + g.to_string());
      if (p >= cap)
        throw RefinementError("mahler_measure: roots of " + g.to_string() +
                              " straddle the unit circle at the precision cap; offending disk center " +
                              mf.roots[0].center_re().to_decimal(20));
    }
  }

  /// Same factor re-isolated at a higher precision, positions preserved.
  MahlerFactor refined(long prec) const {
    if (prec <= precision || poly.degree() == 1) {
      if (poly.degree() == 1 && prec > precision) return analyze(poly, multiplicity, prec);
      return *this;
    }
    return analyze(poly, multiplicity, prec);
  }
};

/// Mahler measure of an integer polynomial with its exact structure: the
/// factorization, the unit-circle placement of every root and the set S of
/// roots outside the circle, so that M = |lc * prod_{S} root|.
class MahlerStructure {
public:
  static MahlerStructure analyze(const IntPolynomial &f, long precision = 30) {
    if (f.is_zero()) throw std::domain_error("mahler_measure: zero polynomial");
    MahlerStructure ms;
    ms.poly_ = f;
    auto fz = factor_rational(f);
    ms.content_ = abs(BigInt(fz.content));
    for (const auto &[g, m] : fz.factors) ms.factors_.push_back(MahlerFactor::analyze(g, m, precision));
    return ms;
  }

  /// Irreducible input, factorization skipped.
  static MahlerStructure analyze_irreducible(const IntPolynomial &g, long precision = 30) {
    MahlerStructure ms;
    ms.poly_ = g;
    BigInt c = g.content();
    ms.content_ = c;
    ms.factors_.push_back(MahlerFactor::analyze(g.primitive_part(), 1, precision));
    return ms;
  }

  const IntPolynomial &poly() const { return poly_; }
  const std::vector<MahlerFactor> &factors() const { return factors_; }
  const BigInt &content() const { return content_; }

  bool boundary_free() const {
    for (const auto &f : factors_)
      if (f.on_circle) return false;
    return true;
  }

  /// M as an exact integer when every factor has all roots on one side.
  std::optional<BigInt> exact_integer() const {
    BigInt m = content_;
    for (const auto &f : factors_) {
      int out = f.outside_count();
      BigInt v;
      if (out == 0)
        v = abs(f.poly.lc());
      else if (out == f.poly.degree())
        v = abs(f.poly.coeff(0));
      else
        return std::nullopt;
      m *= pow(v, static_cast<unsigned long>(f.multiplicity));
    }
    return m;
  }

  /// Number of outside roots counted with multiplicity.
  int outside_count() const {
    int n = 0;
    for (const auto &f : factors_) n += f.outside_count() * f.multiplicity;
    return n;
  }

  MahlerStructure refined(long prec) const {
    MahlerStructure ms = *this;
    for (auto &f : ms.factors_) f = f.refined(prec);
    return ms;
  }

  /// Enclosure of M with radius roughly 2^-prec M.
  RealBall value(long prec) const {
    if (auto m = exact_integer()) return RealBall(*m, prec);
    long wp = prec + 16 + 2 * static_cast<long>(poly_.degree());
    MahlerStructure ms = refined(wp);
    RealBall acc(ms.content_, wp);
    for (const auto &f : ms.factors_) {
      RealBall m(BigInt(abs(f.poly.lc())), wp);
      for (size_t i = 0; i < f.roots.size(); ++i)
        if (f.position[i] == RootPosition::Outside) m = m * f.roots[i].location.abs();
      acc = acc * pow(m, static_cast<unsigned long>(f.multiplicity));
    }
    return acc.with_precision(prec + 8);
  }

private:
  IntPolynomial poly_;
  BigInt content_;
  std::vector<MahlerFactor> factors_;
};

struct MahlerResult {
  RealBall value;
  bool boundary_free = false;
  std::optional<BigInt> exact;
};

/// Certified Mahler measure |lc| prod max(1, |root|).
inline MahlerResult mahler_measure(const IntPolynomial &f, long precision = 64) {
  MahlerStructure ms = MahlerStructure::analyze(f);
  return {ms.value(precision), ms.boundary_free(), ms.exact_integer()};
}

} // namespace deltalab
