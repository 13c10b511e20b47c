#pragma once

#include "deltalab/census/parallel.hpp"
#include "deltalab/census/quadfield.hpp"
#include "deltalab/heights/height.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace deltalab {

/// A certified comparison stayed Undecided at the precision cap.
struct ClassificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Upper bound base^exponent on Mahler measures; H <= X is M <= X^D.
struct MeasureBound {
  BigRational base{1};
  BigRational exponent{1};

  static MeasureBound value(const BigRational &v) { return {v, 1}; }
  static MeasureBound height(const BigRational &X, int D) { return {X, D}; }
  double approx() const { return std::pow(base.get_d(), exponent.get_d()); }
  std::string to_string() const {
    return exponent == 1 ? deltalab::to_string(base) : "(" + deltalab::to_string(base) + ")^(" + deltalab::to_string(exponent) + ")";
  }
};

/// Relative width of the band around a bound in which double-precision
/// measures are not trusted and the certified comparison decides.
inline constexpr double kMeasureBand = 1e-6;

inline Comparison certified_compare(const MahlerStructure &ms, const MeasureBound &b) {
  Comparison c = compare_mahler_power(ms, b.base, b.exponent);
  if (c == Comparison::Undecided)
    throw ClassificationFailure("undecided comparison of M(" + ms.poly().to_string() + ") with " + b.to_string() +
                                " at precision cap " + std::to_string(precision_cap()));
  return c;
}

/// M(f) <= bound for primitive irreducible f, with `approx` a double estimate.
inline bool measure_within(const IntPolynomial &f, double approx, const MeasureBound &b) {
  double B = b.approx();
  if (approx < B * (1 - kMeasureBand)) return true;
  if (approx > B * (1 + kMeasureBand)) return false;
  return certified_compare(MahlerStructure::analyze_irreducible(f), b) != Comparison::Greater;
}

namespace detail {

inline double measure2(double c2, double c1, double c0) {
  double d = c1 * c1 - 4 * c2 * c0;
  if (d < 0) return std::max(std::fabs(c2), std::fabs(c0));
  double q = -0.5 * (c1 + std::copysign(std::sqrt(d), c1));
  if (q == 0) return std::fabs(c2);
  return std::fabs(c2) * std::max(1.0, std::fabs(q / c2)) * std::max(1.0, std::fabs(c0 / q));
}

inline double measure2(std::complex<double> c2, std::complex<double> c1, std::complex<double> c0) {
  std::complex<double> sd = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  std::complex<double> q1 = c1 + sd, q2 = c1 - sd;
  std::complex<double> q = -0.5 * (std::abs(q1) >= std::abs(q2) ? q1 : q2);
  if (std::abs(q) == 0) return std::abs(c2);
  return std::abs(c2) * std::max(1.0, std::abs(q / c2)) * std::max(1.0, std::abs(c0 / q));
}

/// Double estimate of M(f) from companion-matrix roots polished by Aberth.
inline double measure_estimate(const IntPolynomial &f) {
  if (f.degree() == 2) return measure2(f.coeff(2).get_d(), f.coeff(1).get_d(), f.coeff(0).get_d());
  auto z = eigen_seeds(f);
  aberth_double(f, z);
  double m = std::fabs(f.lc().get_d());
  for (const auto &r : z) m *= std::max(1.0, std::abs(r));
  return m;
}

/// Squarefree parts of integers up to a limit from a smallest-prime-factor sieve.
class SquarefreeSieve {
public:
  explicit SquarefreeSieve(long limit) : spf_(static_cast<size_t>(limit + 1), 0) {
    for (long i = 2; i <= limit; ++i) {
      if (spf_[static_cast<size_t>(i)]) continue;
      for (long j = i; j <= limit; j += i)
        if (!spf_[static_cast<size_t>(j)]) spf_[static_cast<size_t>(j)] = static_cast<uint32_t>(i);
    }
  }
  long limit() const { return static_cast<long>(spf_.size()) - 1; }
  long part(long n) const {
    long sign = n < 0 ? -1 : 1, a = n < 0 ? -n : n, r = 1;
    if (a > limit()) return squarefree_part(BigInt(n)).get_si();
    while (a > 1) {
      long p = spf_[static_cast<size_t>(a)];
      int e = 0;
      while (a % p == 0) {
        a /= p;
        ++e;
      }
      if (e % 2) r *= p;
    }
    return sign * r;
  }

private:
  std::vector<uint32_t> spf_;
};

inline bool is_square_i64(long n) {
  if (n < 0) return false;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  for (long k = std::max(0L, r - 1); k <= r + 1; ++k)
    if (k * k == n) return true;
  return false;
}

} // namespace detail

/// Generators of smallest measure seen so far for one field class; entries
/// within the band of the minimum are kept for the certified tie-break.
struct ClassBest {
  double approx = std::numeric_limits<double>::infinity();
  std::vector<IntPolynomial> polys;
  std::vector<double> measures;

  bool empty() const { return polys.empty(); }
  bool wants(double m) const { return m <= approx * (1 + kMeasureBand); }
  void offer(const IntPolynomial &p, double m) {
    if (!wants(m)) return;
    if (m < approx) {
      approx = m;
      std::vector<IntPolynomial> kp;
      std::vector<double> km;
      for (size_t i = 0; i < polys.size(); ++i)
        if (measures[i] <= m * (1 + kMeasureBand)) {
          kp.push_back(polys[i]);
          km.push_back(measures[i]);
        }
      polys = std::move(kp);
      measures = std::move(km);
    }
    for (const auto &q : polys)
      if (q == p) return;
    polys.push_back(p);
    measures.push_back(m);
  }
  void merge(const ClassBest &o) {
    for (size_t i = 0; i < o.polys.size(); ++i) offer(o.polys[i], o.measures[i]);
  }
};

// ---------------------------------------------------------------------------
// integer quadratics a2 x^2 + a1 x + a0

struct QuadraticSweep {
  MeasureBound bound;
  std::map<long, ClassBest> classes; // squarefree radicand -> smallest generators
  unsigned long long polys = 0;      // primitive irreducible, a2 > 0, M <= bound
  std::vector<IntPolynomial> listed; // filled when requested
};

/// All primitive irreducible quadratics with M <= bound, grouped by field.
inline QuadraticSweep sweep_quadratics(const MeasureBound &bound, bool collect = false) {
  double B = bound.approx();
  long Bi = static_cast<long>(std::floor(B * (1 + kMeasureBand)));
  QuadraticSweep out;
  out.bound = bound;
  if (Bi < 1) return out;
  detail::SquarefreeSieve sieve(8 * Bi * Bi + 8);
  struct Chunk {
    std::map<long, ClassBest> classes;
    unsigned long long polys = 0;
    std::vector<IntPolynomial> listed;
  };
  auto chunks = parallel_chunks<Chunk>(static_cast<size_t>(Bi), [&](size_t k) {
    Chunk c;
    long a2 = static_cast<long>(k) + 1;
    for (long a0 = -Bi; a0 <= Bi; ++a0) {
      if (a0 == 0) continue;
      long g20 = std::gcd(a2, a0);
      for (long a1 = -2 * Bi; a1 <= 2 * Bi; ++a1) {
        if (std::gcd(g20, a1) != 1) continue;
        long disc = a1 * a1 - 4 * a2 * a0;
        if (detail::is_square_i64(disc)) continue;
        double m = detail::measure2(static_cast<double>(a2), static_cast<double>(a1), static_cast<double>(a0));
        if (m > B * (1 + kMeasureBand)) continue;
        IntPolynomial f{a0, a1, a2};
        if (!measure_within(f, m, bound)) continue;
        ++c.polys;
        if (collect) c.listed.push_back(f);
        auto &best = c.classes[sieve.part(disc)];
        if (best.wants(m)) best.offer(f, m);
      }
    }
    return c;
  });
  for (auto &c : chunks) {
    out.polys += c.polys;
    for (auto &[key, best] : c.classes) out.classes[key].merge(best);
    for (auto &f : c.listed) out.listed.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// quartics h * conj(h) with h a quadratic over O_F

namespace detail {

struct OElt {
  long x = 0, y = 0; // x + y w
};

struct RelativeHit {
  std::array<long, 5> poly; // constant term first, primitive, positive leading coefficient
  OElt beta;                // discriminant of h
  double measure = 0;
};

} // namespace detail

struct RelativeSweep {
  MeasureBound bound;
  std::vector<QuadElt> radicands; // one per field class, seeds first
  std::vector<ClassBest> classes; // parallel to radicands
  unsigned long long polys = 0;   // distinct quartics with M <= bound
};

/// Registry of Kummer classes F(sqrt(beta)) up to isomorphism over Q.
class KummerRegistry {
public:
  explicit KummerRegistry(const QuadField &F) : F_(F) {}

  /// Index of the class of beta, adding a new class when none matches.
  size_t classify(const QuadElt &beta) {
    BigInt key = squarefree_part(BigInt(F_.norm(beta)));
    auto &bucket = buckets_[key];
    for (size_t idx : bucket)
      if (F_.same_kummer_class(beta, reps_[idx])) return idx;
    reps_.push_back(beta);
    bucket.push_back(reps_.size() - 1);
    return reps_.size() - 1;
  }
  std::optional<size_t> find(const QuadElt &beta) const {
    BigInt key = squarefree_part(BigInt(F_.norm(beta)));
    auto it = buckets_.find(key);
    if (it == buckets_.end()) return std::nullopt;
    for (size_t idx : it->second)
      if (F_.same_kummer_class(beta, reps_[idx])) return idx;
    return std::nullopt;
  }
  const std::vector<QuadElt> &representatives() const { return reps_; }

private:
  QuadField F_;
  std::map<BigInt, std::vector<size_t>> buckets_;
  std::vector<QuadElt> reps_;
};

/// Every quartic generator of a field containing F with M <= bound arises
/// as the primitive part of h * conj(h), h = b2 x^2 + b1 x + b0 over O_F.
/// Up to units, M(sigma_1 h) / M(sigma_2 h) lies in [1/eps, eps), and up to
/// scaling the content ideal of h has norm at most the Minkowski bound.
inline RelativeSweep sweep_relative(const QuadField &F, const MeasureBound &bound,
                                    const std::vector<QuadElt> &seeds = {}) {
  using detail::OElt;
  const long t = F.t(), s = F.s();
  const bool real = F.is_real();
  double rm = std::sqrt(std::fabs(static_cast<double>(F.m())));
  double w1 = real ? (t ? (1 + rm) / 2 : rm) : (t ? 0.5 : 0.0);
  double w2 = real ? (t ? (1 - rm) / 2 : -rm) : (t ? rm / 2 : rm); // imaginary: Im w
  double B = bound.approx();
  double Bhi = B * (1 + kMeasureBand);
  double K = Bhi * static_cast<double>(F.minkowski_floor());
  double eps = real ? F.embeddings(F.fundamental_unit()).first : 1.0;
  double R = std::sqrt(K * eps) * (1 + 1e-12);

  auto emb1 = [&](const OElt &e) { return real ? e.x + e.y * w1 : 0.0; };
  auto emb2 = [&](const OElt &e) { return real ? e.x + e.y * w2 : 0.0; };
  auto cemb = [&](const OElt &e) { return std::complex<double>(e.x + e.y * w1, e.y * w2); };
  auto box = [&](double R1, double R2, auto &&visit) {
    double pad = 1e-9 * (1 + R1 + R2);
    if (real) {
      long ymax = static_cast<long>(std::floor((R1 + R2) / (w1 - w2) + pad));
      for (long y = -ymax; y <= ymax; ++y) {
        double lo = std::max(-R1 - y * w1, -R2 - y * w2), hi = std::min(R1 - y * w1, R2 - y * w2);
        for (long x = static_cast<long>(std::ceil(lo - pad)); x <= static_cast<long>(std::floor(hi + pad)); ++x)
          visit(OElt{x, y});
      }
    } else {
      long ymax = static_cast<long>(std::floor(R1 / w2 + pad));
      for (long y = -ymax; y <= ymax; ++y) {
        double r2 = R1 * R1 - (y * w2) * (y * w2);
        double h = std::sqrt(std::max(0.0, r2));
        for (long x = static_cast<long>(std::ceil(-y * w1 - h - pad)); x <= static_cast<long>(std::floor(-y * w1 + h + pad));
             ++x)
          visit(OElt{x, y});
      }
    }
  };
  auto mul = [&](const OElt &a, const OElt &b) {
    return OElt{a.x * b.x + s * a.y * b.y, a.x * b.y + a.y * b.x + t * a.y * b.y};
  };
  auto conj = [&](const OElt &a) { return OElt{a.x + t * a.y, -a.y}; };
  auto add = [](const OElt &a, const OElt &b) { return OElt{a.x + b.x, a.y + b.y}; };

  std::vector<OElt> lead, cons;
  box(R, R, [&](const OElt &e) {
    if (e.x == 0 && e.y == 0) return;
    cons.push_back(e);
    if (e.y > 0 || (e.y == 0 && e.x > 0)) lead.push_back(e);
  });

  using Hits = std::map<std::array<long, 5>, detail::RelativeHit>;
  auto chunks = parallel_chunks<Hits>(lead.size(), [&](size_t k) {
    Hits hits;
    const OElt b2 = lead[k];
    for (const OElt &b0 : cons) {
      double L1, L2;
      if (real) {
        L1 = std::max(std::fabs(emb1(b2)), std::fabs(emb1(b0)));
        L2 = std::max(std::fabs(emb2(b2)), std::fabs(emb2(b0)));
        if (L1 * L2 > K) continue;
      } else {
        L1 = L2 = std::max(std::abs(cemb(b2)), std::abs(cemb(b0)));
        if (L1 * L1 > K) continue;
      }
      double R1 = 2 * std::min(R, K / L2), R2 = 2 * std::min(R, K / L1);
      box(R1, R2, [&](const OElt &b1) {
        double mt;
        if (real) {
          double m1 = detail::measure2(emb1(b2), emb1(b1), emb1(b0));
          if (m1 * L2 > K) return;
          mt = m1 * detail::measure2(emb2(b2), emb2(b1), emb2(b0));
        } else {
          double m1 = detail::measure2(cemb(b2), cemb(b1), cemb(b0));
          mt = m1 * m1;
        }
        if (mt > K) return;
        // h proportional to conj(h): the roots have degree 2 over Q
        if (mul(b1, conj(b2)).y == 0 && mul(b0, conj(b2)).y == 0) return;
        OElt c1 = conj(b1), c0 = conj(b0), c2 = conj(b2);
        std::array<OElt, 5> P{mul(b0, c0), add(mul(b1, c0), mul(b0, c1)), add(add(mul(b2, c0), mul(b1, c1)), mul(b0, c2)),
                              add(mul(b2, c1), mul(b1, c2)), mul(b2, c2)};
        std::array<long, 5> p{};
        long g = 0;
        for (int i = 0; i < 5; ++i) {
          if (P[static_cast<size_t>(i)].y != 0) throw std::logic_error("relative sweep: h * conj(h) is not rational");
          p[static_cast<size_t>(i)] = P[static_cast<size_t>(i)].x;
          g = std::gcd(g, p[static_cast<size_t>(i)]);
        }
        double mp = mt / static_cast<double>(g);
        if (mp > Bhi) return;
        OElt beta{b1.x * b1.x + s * b1.y * b1.y - 4 * (b0.x * b2.x + s * b0.y * b2.y),
                  2 * b1.x * b1.y + t * b1.y * b1.y - 4 * (b0.x * b2.y + b0.y * b2.x + t * b0.y * b2.y)};
        long nb = beta.x * beta.x + t * beta.x * beta.y - s * beta.y * beta.y;
        if (detail::is_square_i64(nb) && F.is_square(F.elt(beta.x, beta.y))) return;
        if (p[4] < 0) g = -g;
        for (auto &v : p) v /= g;
        hits.emplace(p, detail::RelativeHit{p, beta, mp});
      });
    }
    return hits;
  });

  Hits all;
  for (auto &c : chunks)
    for (auto &[k, v] : c) all.emplace(k, v);

  RelativeSweep out;
  out.bound = bound;
  KummerRegistry reg(F);
  for (const auto &sd : seeds) reg.classify(sd);
  std::map<size_t, ClassBest> best;
  for (const auto &[k, hit] : all) {
    IntPolynomial f{k[0], k[1], k[2], k[3], k[4]};
    if (!measure_within(f, hit.measure, bound)) continue;
    ++out.polys;
    size_t idx = reg.classify(F.elt(hit.beta.x, hit.beta.y));
    best[idx].offer(f, hit.measure);
  }
  out.radicands = reg.representatives();
  out.classes.resize(out.radicands.size());
  for (auto &[idx, b] : best) out.classes[idx] = std::move(b);
  return out;
}

// ---------------------------------------------------------------------------
// general degree: coefficient box |a_i| <= binom(D, i) M

/// Primitive irreducible degree-D polynomials with positive leading
/// coefficient and M <= bound, in lexicographic enumeration order, with
/// their double measure estimates.
inline std::vector<std::pair<IntPolynomial, double>> sweep_generic(int D, const MeasureBound &bound) {
  if (D < 1) throw std::domain_error("sweep_generic: degree must be positive");
  double B = bound.approx();
  long Bi = static_cast<long>(std::floor(B * (1 + kMeasureBand)));
  if (Bi < 1) return {};
  std::vector<long> lim(static_cast<size_t>(D + 1));
  for (int i = 0; i <= D; ++i)
    lim[static_cast<size_t>(i)] = static_cast<long>(std::floor(binomial(static_cast<unsigned long>(D), static_cast<unsigned long>(i)).get_d() * B * (1 + kMeasureBand)));
  using Out = std::vector<std::pair<IntPolynomial, double>>;
  auto chunks = parallel_chunks<Out>(static_cast<size_t>(Bi), [&](size_t k) {
    Out out;
    std::vector<long> c(static_cast<size_t>(D + 1), 0);
    c[static_cast<size_t>(D)] = static_cast<long>(k) + 1;
    auto rec = [&](auto &&self, int i) -> void {
      if (i < 0) {
        if (c[0] == 0 && D > 1) return;
        long g = 0;
        for (long v : c) g = std::gcd(g, v);
        if (g != 1) return;
        std::vector<BigInt> bc(c.begin(), c.end());
        IntPolynomial f(std::move(bc));
        double m = D == 1 ? static_cast<double>(std::max(std::labs(c[0]), std::labs(c[1]))) : detail::measure_estimate(f);
        if (m > B * (1 + kMeasureBand)) return;
        if (D > 1 && !is_irreducible(f)) return;
        if (!measure_within(f, m, bound)) return;
        out.emplace_back(std::move(f), m);
        return;
      }
      long L = i == 0 ? std::min(lim[0], Bi) : lim[static_cast<size_t>(i)];
      for (long v = -L; v <= L; ++v) {
        c[static_cast<size_t>(i)] = v;
        self(self, i - 1);
      }
    };
    rec(rec, D - 1);
    return out;
  });
  Out all;
  for (auto &c : chunks)
    for (auto &e : c) all.push_back(std::move(e));
  return all;
}

} // namespace deltalab
