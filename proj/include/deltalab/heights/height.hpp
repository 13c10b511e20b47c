#pragma once

#include "deltalab/heights/exact.hpp"

#include <memory>
#include <string>

namespace deltalab {

/// An algebraic number: its primitive irreducible minimal polynomial and a
/// certified disk selecting one conjugate.
struct AlgebraicNumber {
  IntPolynomial minpoly;
  RootDisk root;

  static AlgebraicNumber from_root(const IntPolynomial &f, int index, long precision = 53) {
    IntPolynomial g = f.primitive_part();
    if (!is_irreducible(g)) throw std::domain_error("AlgebraicNumber: minimal polynomial must be irreducible");
    auto disks = isolate_roots(g, precision);
    if (index < 0 || index >= static_cast<int>(disks.size())) throw std::out_of_range("AlgebraicNumber: root index");
    return {g, disks[static_cast<size_t>(index)]};
  }
  int degree() const { return minpoly.degree(); }
};

/// H = M(measure_poly)^(1/degree), with the Mahler structure kept so that
/// the enclosure can be refined and compared exactly.
class HeightValue {
public:
  HeightValue() = default;
  HeightValue(IntPolynomial poly, int degree, long precision = 64)
      : poly_(std::move(poly)), degree_(degree),
        ms_(std::make_shared<MahlerStructure>(MahlerStructure::analyze(poly_))) {
    value_ = compute(precision);
  }
  HeightValue(std::shared_ptr<const MahlerStructure> ms, int degree, long precision = 64)
      : poly_(ms->poly()), degree_(degree), ms_(std::move(ms)) {
    value_ = compute(precision);
  }

  const IntPolynomial &measure_poly() const { return poly_; }
  int degree() const { return degree_; }
  const RealBall &value() const { return value_; }
  const MahlerStructure &structure() const { return *ms_; }
  std::shared_ptr<const MahlerStructure> structure_ptr() const { return ms_; }

  /// Enclosure at a new precision; the stored value is left untouched.
  RealBall value_at(long precision) const { return compute(precision); }
  /// Same height carrying a previously computed enclosure.
  HeightValue with_value(RealBall v) const {
    HeightValue h = *this;
    h.value_ = std::move(v);
    return h;
  }
  HeightValue refined(long precision) const {
    HeightValue h = *this;
    h.value_ = compute(precision);
    return h;
  }

private:
  RealBall compute(long precision) const {
    RealBall m = ms_->value(precision + 8);
    if (auto e = ms_->exact_integer(); e && *e == 1) return RealBall(BigInt(1), precision);
    return ball_pow_rational(m, BigRational(1, degree_)).with_precision(precision);
  }

  IntPolynomial poly_;
  int degree_ = 1;
  std::shared_ptr<const MahlerStructure> ms_;
  RealBall value_;
};

/// Absolute multiplicative Weil height; the same for all conjugates.
inline HeightValue weil_height(const AlgebraicNumber &alpha, long precision = 64) {
  return HeightValue(alpha.minpoly, alpha.degree(), precision);
}

/// h vs base^exponent, certified; Equal only when proven exactly.
inline Comparison compare_height_power(const HeightValue &h, const BigRational &base, const BigRational &exponent,
                                       bool exact_machinery = true) {
  if (base < 1) throw std::domain_error("compare_height_power: base must be at least 1");
  return compare_mahler_power(h.structure(), base, exponent * h.degree(), exact_machinery);
}

/// h1 vs h2 for heights of the same degree.
inline Comparison compare_heights(const HeightValue &h1, const HeightValue &h2) {
  if (h1.degree() != h2.degree()) throw std::domain_error("compare_heights: degrees differ");
  return compare_mahler(h1.structure(), h2.structure());
}

} // namespace deltalab
