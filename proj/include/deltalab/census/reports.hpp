#pragma once

#include "deltalab/census/census.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace deltalab {

// ---------------------------------------------------------------------------
// height-bounded enumeration

/// Primitive irreducible minimal polynomials of the algebraic numbers of
/// degree d with H <= T, positive leading coefficient, in canonical order.
inline std::vector<IntPolynomial> height_polynomials(int d, const BigRational &T) {
  if (d < 1) throw std::domain_error("enumerate_heights: degree must be positive");
  if (T < 1) throw std::domain_error("enumerate_heights: height bound must be at least 1");
  MeasureBound b = MeasureBound::height(T, d);
  std::vector<IntPolynomial> out;
  if (d == 1) {
    long B = floor(T).get_si();
    for (long q = 1; q <= B; ++q)
      for (long a = -B; a <= B; ++a)
        if (std::gcd(a, q) == 1) out.push_back(IntPolynomial{-a, q});
  } else if (d == 2) {
    out = sweep_quadratics(b, true).listed;
  } else {
    for (auto &[f, m] : sweep_generic(d, b)) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), canonical_poly_less);
  return out;
}

/// Every algebraic number of degree d with H(alpha) <= T, conjugates listed
/// together under their minimal polynomial.
inline std::vector<AlgebraicNumber> enumerate_heights(int d, const BigRational &T) {
  std::vector<AlgebraicNumber> out;
  for (const auto &f : height_polynomials(d, T)) {
    auto disks = isolate_roots(f, 53);
    for (auto &disk : disks) out.push_back({f, std::move(disk)});
  }
  return out;
}

/// N_H(d, X): algebraic numbers of degree d with H <= X, X = base^exponent.
inline unsigned long long count_heights(int d, const MeasureBound &height) {
  MeasureBound m{height.base, height.exponent * d};
  if (d == 1) return height_polynomials(1, BigRational(static_cast<long>(std::floor(m.approx() * (1 + kMeasureBand))))).size();
  if (d == 2) return 2 * sweep_quadratics(m).polys;
  return static_cast<unsigned long long>(d) * sweep_generic(d, m).size();
}

/// Class representative of L: the least realizing polynomial of delta(L)
/// under canonical_poly_less.
inline IntPolynomial canonical_polynomial(const NumberField &L, const BigRational &height_cap = 64) {
  return delta(L, height_cap).realizing_poly;
}

/// Quadratic extensions L = F(sqrt beta) of a quadratic field F with
/// |Delta_L| <= T, one per isomorphism class over Q.
inline std::vector<NumberField> enumerate_relative_quadratic(const NumberField &F, const BigInt &T) {
  if (F.degree != 2) throw std::domain_error("enumerate_relative_quadratic: F must be quadratic");
  std::vector<NumberField> out;
  for (auto &e : Selection::relative_fields(QuadField::of(F.defining_poly), T)) out.push_back(std::move(e.field));
  return out;
}

// ---------------------------------------------------------------------------
// counting functions

struct CountRow {
  BigRational T;
  unsigned long long n_disc = 0;   // fields with |Delta| <= T
  unsigned long long n_delta = 0;  // fields with delta <= T
  unsigned long long n_height = 0; // generators with H <= T, conjugates counted
};

struct CountingReport {
  std::string selection;
  int degree = 0;
  std::vector<CountRow> rows;
  std::optional<double> height_slope; // least-squares slope of log N_H against log T
};

inline std::optional<double> loglog_slope(const std::vector<std::pair<double, double>> &pts) {
  std::vector<std::pair<double, double>> v;
  for (auto [x, y] : pts)
    if (x > 1 && y > 0) v.emplace_back(std::log(x), std::log(y));
  if (v.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : v) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(v.size());
  my /= static_cast<double>(v.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : v) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

/// N_Delta(S,T), N_delta(S,T), N_H(P_S,T) for each T. Refuses when T^D
/// exceeds `max_measure`, the largest measure the generator sweep may cover.
inline CountingReport counting_report(const Selection &sel, std::vector<BigRational> schedule,
                                      const BigRational &max_measure = 4096) {
  std::sort(schedule.begin(), schedule.end());
  CountingReport rep;
  rep.selection = sel.name();
  rep.degree = sel.degree();
  int D = sel.degree();
  for (const auto &T : schedule) {
    if (T < 1) throw std::domain_error("counting_report: bounds must be at least 1");
    if (pow(T, D) > max_measure)
      throw IncompleteCensus("counting_report: heights up to " + to_string(T) + " need generators with M <= " +
                             to_string(pow(T, D)) + ", beyond the sweep limit " + to_string(max_measure));
    CountRow row;
    row.T = T;
    row.n_disc = sel.fields_up_to(floor(T)).size();
    Level L = sel.level(MeasureBound::height(T, D));
    for (const auto &c : L.classes) row.n_delta += c.best.empty() ? 0 : 1;
    row.n_height = static_cast<unsigned long long>(D) * L.polys;
    rep.rows.push_back(row);
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto &r : rep.rows) pts.emplace_back(r.T.get_d(), static_cast<double>(r.n_height));
  rep.height_slope = loglog_slope(pts);
  return rep;
}

// ---------------------------------------------------------------------------
// counting chain

struct ChainResult {
  BigRational T, gamma;
  unsigned long long disc_outside = 0;  // |Delta| <= T, not in S_gamma
  unsigned long long delta_outside = 0; // delta <= T^gamma, not in S_gamma
  unsigned long long delta_all = 0;     // delta <= T^gamma
  unsigned long long heights = 0;       // generators with H <= T^gamma
  unsigned long long failures = 0;
  bool holds = false;
};

/// N_Delta(S \ S_g, T) <= N_delta(S \ S_g, T^g) <= N_delta(S, T^g) <= N_H(P_S, T^g).
inline ChainResult prop1_chain_check(const Selection &sel, const BigRational &T, const BigRational &gamma) {
  ChainResult r;
  r.T = T;
  r.gamma = gamma;
  int D = sel.degree();
  Census c = build_census(sel, floor(T), {gamma});
  for (const auto &rec : c.records) {
    Membership m = rec.flags.front().second;
    if (m == Membership::Failed)
      ++r.failures;
    else if (m != Membership::In)
      ++r.disc_outside;
  }
  Level L = sel.level(MeasureBound{T, gamma * D});
  for (const auto &cls : L.classes) {
    if (cls.best.empty()) continue;
    ++r.delta_all;
    DeltaResult d = resolve_minimum(cls.best, D);
    FieldEntry e{NumberField::from_poly(d.realizing_poly), cls.radicand};
    Membership m = make_record(e, d, {gamma}).flags.front().second;
    if (m == Membership::Failed)
      ++r.failures;
    else if (m != Membership::In)
      ++r.delta_outside;
  }
  r.heights = static_cast<unsigned long long>(D) * L.polys;
  r.holds = r.failures == 0 && r.disc_outside <= r.delta_outside && r.delta_outside <= r.delta_all &&
            r.delta_all <= r.heights;
  return r;
}

// ---------------------------------------------------------------------------
// density of S_gamma

struct DensityConfig {
  int degree = 2;
  int base_degree = 1;
  std::optional<IntPolynomial> subfield;
  BigRational gamma;
  std::vector<BigInt> schedule; // increasing discriminant bounds
  BigRational height_cap = 64;
  std::string convention = "isomorphism-classes";
};

struct DensityRow {
  BigInt T;
  unsigned long long fields = 0, in = 0, boundary = 0, out = 0, failures = 0;
  BigRational ratio; // in / fields
};

struct DensityReport {
  DensityConfig config;
  Census census;
  std::vector<DensityRow> rows;
};

inline Selection selection_for(int degree, const std::optional<IntPolynomial> &subfield) {
  if (!subfield) {
    if (degree == 2) return Selection::quadratics();
    throw IncompleteCensus("no complete census policy for degree " + std::to_string(degree) +
                           " without a quadratic subfield");
  }
  if (subfield->degree() != 2 || degree != 4)
    throw IncompleteCensus("the relative enumerator covers quadratic extensions of a quadratic subfield only");
  return Selection::quartics_over(QuadField::of(*subfield));
}

/// Default schedule: T/16, T/8, T/4, T/2, T.
inline std::vector<BigInt> default_schedule(const BigInt &T) {
  std::vector<BigInt> s;
  for (int k = 4; k >= 0; --k) {
    BigInt v = T >> k;
    if (v >= 1 && (s.empty() || s.back() != v)) s.push_back(v);
  }
  return s;
}

inline DensityReport density_report(DensityConfig cfg, const std::vector<CensusRecord> &existing = {},
                                    const std::function<void(const CensusRecord &)> &on_record = {}) {
  if (cfg.gamma < 0) throw std::domain_error("density_report: gamma must be non-negative");
  if (cfg.degree < 2) throw std::domain_error("density_report: degree must exceed 1");
  if (cfg.schedule.empty()) throw std::domain_error("density_report: empty schedule");
  std::sort(cfg.schedule.begin(), cfg.schedule.end());
  Selection sel = selection_for(cfg.degree, cfg.subfield);
  DensityReport rep;
  rep.config = cfg;
  rep.census = build_census(sel, cfg.schedule.back(), {cfg.gamma}, cfg.height_cap, existing, on_record);
  for (const auto &T : cfg.schedule) {
    DensityRow row;
    row.T = T;
    for (const auto &rec : rep.census.records) {
      if (abs(rec.field.discriminant) > T) continue;
      ++row.fields;
      Membership m = Membership::Failed;
      for (const auto &[g, f] : rec.flags)
        if (g == cfg.gamma) m = f;
      switch (m) {
      case Membership::In: ++row.in; break;
      case Membership::Boundary: ++row.boundary; break;
      case Membership::Out: ++row.out; break;
      case Membership::Failed: ++row.failures; break;
      }
    }
    row.ratio = row.fields ? BigRational(BigInt(static_cast<unsigned long>(row.in)), BigInt(static_cast<unsigned long>(row.fields))) : BigRational(0);
    row.ratio.canonicalize();
    rep.rows.push_back(row);
  }
  return rep;
}

/// Fields found by the generator sweep up to the largest delta^D among the
/// census fields with |Delta| <= T, compared with the census.
struct CrossCheck {
  BigInt T;
  BigRational swept;
  size_t census_fields = 0, sweep_fields = 0;
  std::vector<std::string> missing_from_census, missing_from_sweep;
  bool agree = false;
};

inline CrossCheck relative_cross_check(const Selection &sel, const Census &census, const BigInt &T) {
  CrossCheck cc;
  cc.T = T;
  int D = sel.degree();
  std::vector<const CensusRecord *> recs;
  BigRational Mb = 1;
  for (const auto &r : census.records) {
    if (abs(r.field.discriminant) > T) continue;
    recs.push_back(&r);
    Mb = std::max(Mb, measure_upper_bound(r.realizing_poly));
  }
  cc.census_fields = recs.size();
  cc.swept = Mb;
  Level L = sel.level(MeasureBound::value(Mb));
  std::vector<bool> seen(recs.size(), false);
  for (const auto &cls : L.classes) {
    if (cls.best.empty()) continue;
    DeltaResult d = resolve_minimum(cls.best, D);
    NumberField K = NumberField::from_poly(d.realizing_poly);
    if (abs(K.discriminant) > T) continue;
    ++cc.sweep_fields;
    bool found = false;
    for (size_t i = 0; i < recs.size() && !found; ++i)
      if (recs[i]->field.discriminant == K.discriminant && is_isomorphic(recs[i]->field, K)) {
        found = true;
        seen[i] = true;
      }
    if (!found) cc.missing_from_census.push_back(d.realizing_poly.to_string());
  }
  for (size_t i = 0; i < recs.size(); ++i)
    if (!seen[i]) cc.missing_from_sweep.push_back(recs[i]->realizing_poly.to_string());
  cc.agree = cc.missing_from_census.empty() && cc.missing_from_sweep.empty();
  return cc;
}

// ---------------------------------------------------------------------------
// partial census from the generator box

/// Fields of degree D with |Delta| <= T having a generator of height <= H.
/// Complete only for the fields whose delta does not exceed H.
inline Census sweep_census(int D, const BigInt &T, const BigRational &H, const std::vector<BigRational> &gammas = {},
                           const std::function<void(const CensusRecord &)> &on_record = {}) {
  if (D < 2) throw std::domain_error("sweep census: degree must be at least 2");
  if (H < 1) throw std::domain_error("sweep census: height bound must be at least 1");
  struct Group {
    NumberField field;
    ClassBest best;
  };
  std::map<BigInt, std::vector<Group>> groups;
  auto hits = sweep_generic(D, MeasureBound::height(H, D));
  std::sort(hits.begin(), hits.end(), [](const auto &a, const auto &b) { return canonical_poly_less(a.first, b.first); });
  for (auto &[f, m] : hits) {
    BigInt df = discriminant_poly(f);
    if (df == 0) continue;
    NumberField K = NumberField::from_poly(f);
    if (abs(K.discriminant) > T) continue;
    auto &list = groups[K.discriminant];
    Group *g = nullptr;
    for (auto &c : list)
      if (is_isomorphic(c.field, K)) g = &c;
    if (!g) g = &list.emplace_back(Group{K, {}});
    g->best.merge(ClassBest{m, {f}, {m}});
  }
  std::vector<std::pair<FieldEntry, DeltaResult>> found;
  for (auto &[disc, list] : groups)
    for (auto &g : list) {
      DeltaResult d = resolve_minimum(g.best, D);
      found.push_back({FieldEntry{NumberField::from_poly(d.realizing_poly), {}}, d});
    }
  std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) {
    const BigInt &x = a.first.field.discriminant, &y = b.first.field.discriminant;
    if (abs(x) != abs(y)) return abs(x) < abs(y);
    if (x != y) return x < y;
    return canonical_poly_less(a.second.realizing_poly, b.second.realizing_poly);
  });
  std::vector<FieldEntry> entries;
  for (auto &f : found) entries.push_back(f.first);
  auto ids = class_ids(entries);
  Census c;
  c.selection = "degree " + std::to_string(D) + " fields with a generator of height <= " + to_string(H);
  c.degree = D;
  c.disc_bound = T;
  c.policy = "sweep";
  c.swept_measure = pow(H, D);
  for (size_t i = 0; i < found.size(); ++i) {
    CensusRecord r = make_record(found[i].first, found[i].second, gammas);
    r.class_id = ids[i];
    if (on_record) on_record(r);
    c.records.push_back(std::move(r));
  }
  return c;
}

// ---------------------------------------------------------------------------
// ratios

struct RatioRow {
  std::string class_id;
  BigInt disc;
  IntPolynomial realizing_poly;
  RealBall delta;
  RealBall ratio;
  std::optional<BigRational> exact;
};

/// log delta / log |Delta| as an exact rational when delta is a rational
/// power of |Delta| with small denominator, proven by the exact comparison.
inline std::optional<BigRational> exact_ratio(const CensusRecord &rec, long max_den = 1000) {
  if (auto e = rec.delta.structure().exact_integer(); e && *e == 1) return BigRational(0);
  if (!rec.ratio) return std::nullopt;
  double x = rec.ratio->center().to_double();
  // continued fraction convergents of x
  long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(r);
    long ai = static_cast<long>(a);
    long h = ai * h0 + h1, k = ai * k0 + k1;
    if (k > max_den) break;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    BigRational q(h, k);
    q.canonicalize();
    if (q > 0 && rec.ratio->contains(q)) {
      Comparison c = compare_mahler_power(rec.delta.structure(), BigRational(abs(rec.field.discriminant)), q * rec.degree());
      if (c == Comparison::Equal) return q;
    }
    if (r - a < 1e-15) break;
    r = 1.0 / (r - a);
  }
  return std::nullopt;
}

inline std::vector<RatioRow> ratio_scatter(const std::vector<CensusRecord> &records) {
  std::vector<RatioRow> rows;
  for (const auto &rec : records) {
    if (abs(rec.field.discriminant) == 1) throw std::logic_error("ratio_scatter: field with |Delta| = 1");
    RatioRow row;
    row.class_id = rec.class_id;
    row.disc = rec.field.discriminant;
    row.realizing_poly = rec.realizing_poly;
    row.delta = rec.delta.value();
    row.ratio = rec.ratio ? *rec.ratio : ratio_ball(rec.delta, rec.field.discriminant);
    row.exact = exact_ratio(rec);
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace deltalab
