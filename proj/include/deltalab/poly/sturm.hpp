#pragma once

#include "deltalab/poly/qpoly.hpp"

#include <optional>
#include <vector>

namespace deltalab {

/// Sturm sequence of a squarefree polynomial over Q.
class SturmSequence {
public:
  explicit SturmSequence(const IntPolynomial &f) {
    seq_.push_back(QPoly(f));
    seq_.push_back(QPoly(f).derivative());
    while (!seq_.back().is_zero() && seq_.back().degree() > 0) {
      QPoly r = seq_[seq_.size() - 2] % seq_.back();
      if (r.is_zero()) break;
      seq_.push_back(-r);
    }
  }

  /// Distinct real roots in the half-open interval (a, b]; nullopt bounds are infinite.
  int count(const std::optional<BigRational> &a, const std::optional<BigRational> &b) const {
    return changes(a, false) - changes(b, true);
  }
  int count_real() const { return count(std::nullopt, std::nullopt); }

private:
  int changes(const std::optional<BigRational> &x, bool plus_inf) const {
    int prev = 0, n = 0;
    for (const auto &p : seq_) {
      int s;
      if (x) {
        s = sgn(p.eval(*x));
      } else {
        s = sgn(p.lc());
        if (!plus_inf && (p.degree() & 1)) s = -s;
      }
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++n;
      prev = s;
    }
    return n;
  }
  std::vector<QPoly> seq_;
};

inline int count_real_roots(const IntPolynomial &f) { return SturmSequence(f).count_real(); }

} // namespace deltalab
