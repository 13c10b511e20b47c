#pragma once

#include "deltalab/census/exponents.hpp"
#include "deltalab/census/sweep.hpp"
#include "deltalab/fields/number_field.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltalab {

/// The census cannot back the requested bound.
struct IncompleteCensus : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Class representative order: leading coefficient, then the remaining
/// coefficients from the top by absolute value, a non-negative coefficient
/// before a negative one of the same size.
inline bool canonical_poly_less(const IntPolynomial &a, const IntPolynomial &b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const BigInt x = a.coeff(i), y = b.coeff(i);
    if (x == y) continue;
    int c = cmp(abs(x), abs(y));
    if (c != 0) return c < 0;
    return x > 0;
  }
  return false;
}

struct DeltaResult {
  IntPolynomial realizing_poly;
  HeightValue height;
  std::vector<IntPolynomial> ties; // all generators attaining the minimum, canonical order
};

/// Certified minimum of the candidates, ties broken by canonical order.
inline DeltaResult resolve_minimum(const ClassBest &best, int D) {
  if (best.empty()) throw std::logic_error("resolve_minimum: no candidates");
  std::vector<size_t> order(best.polys.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    if (best.measures[i] != best.measures[j]) return best.measures[i] < best.measures[j];
    return canonical_poly_less(best.polys[i], best.polys[j]);
  });
  std::vector<std::shared_ptr<const MahlerStructure>> ms;
  for (size_t i : order) ms.push_back(std::make_shared<MahlerStructure>(MahlerStructure::analyze_irreducible(best.polys[i])));
  std::vector<size_t> mins{0};
  for (size_t k = 1; k < order.size(); ++k) {
    Comparison c = compare_mahler(*ms[k], *ms[mins[0]]);
    if (c == Comparison::Undecided)
      throw ClassificationFailure("undecided measure comparison between " + best.polys[order[k]].to_string() + " and " +
                                  best.polys[order[mins[0]]].to_string());
    if (c == Comparison::Less)
      mins = {k};
    else if (c == Comparison::Equal)
      mins.push_back(k);
  }
  DeltaResult r;
  for (size_t k : mins) r.ties.push_back(best.polys[order[k]]);
  std::sort(r.ties.begin(), r.ties.end(), canonical_poly_less);
  size_t pick = mins[0];
  for (size_t k : mins)
    if (canonical_poly_less(best.polys[order[k]], best.polys[order[pick]])) pick = k;
  r.realizing_poly = best.polys[order[pick]];
  r.height = HeightValue(ms[pick], D, 128);
  return r;
}

/// A field of the census before its delta is known.
struct FieldEntry {
  NumberField field;
  QuadElt radicand; // L = F(sqrt(radicand)); Q(sqrt(radicand)) for quadratics
  std::string id() const { return deltalab::to_string(field.discriminant) + ":" + field.defining_poly.to_string(); }
};

/// Fundamental discriminants d with |d| <= T, ordered by (|d|, d).
inline std::vector<long> fundamental_discriminants(long T) {
  std::vector<long> out;
  for (long a = 3; a <= T; ++a)
    for (long d : {-a, a})
      if (is_fundamental_discriminant(d)) out.push_back(d);
  return out;
}

/// Sweep results at one measure bound, grouped by field class.
struct LevelClass {
  QuadElt radicand;
  ClassBest best;
};
struct Level {
  MeasureBound bound;
  unsigned long long polys = 0;
  std::vector<LevelClass> classes;
};

/// A family of fields with a completeness-backed census: all quadratic
/// fields, or all quartic fields containing a fixed quadratic field F.
class Selection {
public:
  static Selection quadratics() { return Selection(); }
  static Selection quartics_over(const QuadField &F) {
    Selection s;
    s.F_ = F;
    return s;
  }
  static Selection quartics_over(const NumberField &F) { return quartics_over(QuadField::of(F.defining_poly)); }

  int degree() const { return F_ ? 4 : 2; }
  const std::optional<QuadField> &subfield() const { return F_; }
  std::string name() const { return F_ ? "quartic fields containing Q[x]/(" + F_->defining_poly().to_string() + ")" : "quadratic fields"; }
  std::string policy() const { return F_ ? "relative" : "oracle"; }

  /// All fields of the selection with |Delta| <= T.
  std::vector<FieldEntry> fields_up_to(const BigInt &T) const {
    if (!F_) {
      if (!T.fits_slong_p()) throw IncompleteCensus("quadratic oracle: bound too large");
      std::vector<FieldEntry> out;
      for (long d : fundamental_discriminants(T.get_si())) {
        long m = d % 4 == 0 ? d / 4 : d;
        QuadField K(m);
        out.push_back({NumberField::from_poly(K.defining_poly()), {m, 0}});
      }
      return out;
    }
    return relative_fields(*F_, T);
  }

  /// Generators with M <= bound of fields in the selection.
  Level level(const MeasureBound &bound, const std::vector<QuadElt> &seeds = {}) const {
    Level L;
    L.bound = bound;
    if (!F_) {
      auto sw = sweep_quadratics(bound);
      L.polys = sw.polys;
      for (auto &[m, best] : sw.classes) L.classes.push_back({{m, 0}, std::move(best)});
      return L;
    }
    auto sw = sweep_relative(*F_, bound, seeds);
    L.polys = sw.polys;
    for (size_t i = 0; i < sw.radicands.size(); ++i) L.classes.push_back({sw.radicands[i], std::move(sw.classes[i])});
    return L;
  }

  /// Complete list of relative quadratic extensions L = F(sqrt(beta)) with
  /// |Delta_L| <= T. The odd-valuation part of (beta) divides the relative
  /// discriminant, so beta can be taken with |N(beta)| <= T/Delta_F^2 times
  /// the squared Minkowski bound, then reduced by unit squares into a box.
  static std::vector<FieldEntry> relative_fields(const QuadField &F, const BigInt &T) {
    BigInt dF2 = BigInt(F.discriminant()) * F.discriminant();
    long nm = F.minkowski_floor();
    BigInt Nb = T * nm * nm / dF2;
    std::vector<FieldEntry> out;
    if (Nb < 1) return out;
    if (!Nb.fits_slong_p()) throw IncompleteCensus("relative enumerator: bound too large");
    long N = Nb.get_si();
    double eps = F.is_real() ? F.embeddings(F.fundamental_unit()).first : 1.0;
    double R = (F.is_real() ? eps : 1.0) * std::sqrt(static_cast<double>(N)) * (1 + 1e-12) + 1e-9;
    double rm = std::sqrt(std::fabs(static_cast<double>(F.m())));
    const long t = F.t(), s = F.s();
    std::vector<QuadElt> betas;
    long ymax = static_cast<long>(std::floor(2 * R / (F.is_real() ? rm : rm / (t ? 2 : 1)) + 1));
    long xmax = static_cast<long>(std::floor(R + ymax * (rm + 1) + 1));
    for (long y = -ymax; y <= ymax; ++y)
      for (long x = -xmax; x <= xmax; ++x) {
        if (x == 0 && y == 0) continue;
        long n = x * x + t * x * y - s * y * y;
        if (std::labs(n) > N) continue;
        QuadElt b = F.elt(x, y);
        if (F.is_real()) {
          auto [e1, e2] = F.embeddings(b);
          if (std::fabs(e1) > R || std::fabs(e2) > R) continue;
        }
        betas.push_back(b);
      }
    KummerRegistry reg(F);
    std::set<size_t> seen;
    for (const auto &b : betas) {
      if (F.is_square(b)) continue;
      size_t idx = reg.classify(b);
      if (!seen.insert(idx).second) continue;
      NumberField L = NumberField::from_poly(F.kummer_poly(reg.representatives()[idx]));
      if (abs(L.discriminant) <= T) out.push_back({std::move(L), reg.representatives()[idx]});
    }
    std::stable_sort(out.begin(), out.end(), [](const FieldEntry &a, const FieldEntry &b) {
      int c = cmp(abs(a.field.discriminant), abs(b.field.discriminant));
      if (c != 0) return c < 0;
      if (a.field.discriminant != b.field.discriminant) return a.field.discriminant < b.field.discriminant;
      return canonical_poly_less(a.field.defining_poly, b.field.defining_poly);
    });
    return out;
  }

  /// Index in `classes` of the class of the given radicand.
  std::optional<size_t> match(const Level &L, const QuadElt &radicand) const {
    for (size_t i = 0; i < L.classes.size(); ++i) {
      const auto &r = L.classes[i].radicand;
      if (!F_ ? r == radicand : F_->same_kummer_class(r, radicand)) return i;
    }
    return std::nullopt;
  }

private:
  std::optional<QuadField> F_;
};

inline BigRational mpfr_to_rational(const Mpfr &x) {
  BigRational q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

/// Rational upper bound for M(f).
inline BigRational measure_upper_bound(const IntPolynomial &f) {
  MahlerStructure ms = MahlerStructure::analyze(f);
  if (auto e = ms.exact_integer()) return BigRational(*e);
  return mpfr_to_rational(ms.value(64).upper());
}

/// Exact delta for each entry by a shared generator sweep with geometric
/// deepening B_j = (5/4)^j, capped per field by the height of its own
/// defining polynomial. `on_done(i, result)` fires as each field resolves.
/// Returns the final measure bound swept.
inline BigRational compute_deltas(const Selection &sel, const std::vector<FieldEntry> &fields, const BigRational &height_cap,
                                  const std::function<void(size_t, const DeltaResult &)> &on_done) {
  int D = sel.degree();
  std::vector<BigRational> seed_bound;
  for (const auto &e : fields) seed_bound.push_back(measure_upper_bound(e.field.defining_poly));
  std::vector<QuadElt> seeds;
  for (const auto &e : fields) seeds.push_back(e.radicand);
  std::vector<bool> done(fields.size(), false);
  size_t remaining = fields.size();
  BigRational swept = 0;
  BigRational Bj = 1, cap_measure = pow(height_cap, D);
  for (int j = 0; remaining > 0; ++j, Bj *= BigRational(5, 4)) {
    BigRational Mj = pow(Bj, D);
    BigRational Mb = 0;
    for (size_t i = 0; i < fields.size(); ++i)
      if (!done[i]) Mb = std::max(Mb, std::min(seed_bound[i], Mj));
    if (Mb > cap_measure)
      throw IncompleteCensus("delta search exceeded the height cap " + to_string(height_cap) + " (needed M <= " +
                             to_string(Mb) + ")");
    if (Mb <= swept) continue;
    Level L = sel.level(MeasureBound::value(Mb), seeds);
    swept = Mb;
    for (size_t i = 0; i < fields.size(); ++i) {
      if (done[i]) continue;
      auto idx = sel.subfield() ? std::optional<size_t>(i) : sel.match(L, fields[i].radicand);
      if (!idx || *idx >= L.classes.size() || L.classes[*idx].best.empty()) {
        if (seed_bound[i] <= Mb) throw std::logic_error("delta: defining polynomial of " + fields[i].id() + " not swept");
        continue;
      }
      DeltaResult r = resolve_minimum(L.classes[*idx].best, D);
      done[i] = true;
      --remaining;
      on_done(i, r);
    }
  }
  return swept;
}

// ---------------------------------------------------------------------------
// records

enum class Membership { In, Out, Boundary, Failed };
enum class SilvermanVerdict { Holds, HoldsWithEquality, Violated, Undecided };

inline const char *to_string(Membership m) {
  switch (m) {
  case Membership::In: return "In";
  case Membership::Out: return "Out";
  case Membership::Boundary: return "Boundary";
  case Membership::Failed: return "Failed";
  }
  return "?";
}
inline const char *to_string(SilvermanVerdict v) {
  switch (v) {
  case SilvermanVerdict::Holds: return "Holds";
  case SilvermanVerdict::HoldsWithEquality: return "HoldsWithEquality";
  case SilvermanVerdict::Violated: return "Violated";
  case SilvermanVerdict::Undecided: return "Undecided";
  }
  return "?";
}

struct CensusRecord {
  NumberField field;          // class representative: the realizing polynomial
  IntPolynomial realizing_poly;
  HeightValue delta;
  std::optional<RealBall> ratio; // log delta / log |Delta|
  std::vector<std::pair<BigRational, Membership>> flags;
  std::string class_id;
  std::string source;         // census entry the record was computed for

  int degree() const { return field.degree; }
};

inline RealBall ratio_ball(const HeightValue &h, const BigInt &disc, long prec = 128) {
  if (auto e = h.structure().exact_integer(); e && *e == 1) return RealBall(BigInt(0), prec);
  RealBall v = h.value_at(prec + 16);
  return (log(v) / log(RealBall(BigInt(abs(disc)), prec + 16))).with_precision(prec);
}

/// delta(L) against D^(-1/(2(D-1))) |Delta_L|^(1/(2D(D-1))).
inline SilvermanVerdict verify_silverman(const CensusRecord &rec) {
  long D = rec.degree();
  Comparison c = compare_mahler_power(rec.delta.structure(), silverman_base(D, rec.field.discriminant), BigRational(1, 2 * (D - 1)));
  switch (c) {
  case Comparison::Greater: return SilvermanVerdict::Holds;
  case Comparison::Equal: return SilvermanVerdict::HoldsWithEquality;
  case Comparison::Less: return SilvermanVerdict::Violated;
  default: return SilvermanVerdict::Undecided;
  }
}

/// In iff delta(L) > |Delta_L|^gamma, Boundary iff equal.
inline Membership classify_S_gamma(const CensusRecord &rec, const BigRational &gamma) {
  if (gamma < 0) throw std::domain_error("classify_S_gamma: gamma must be non-negative");
  Comparison c = compare_mahler_power(rec.delta.structure(), BigRational(abs(rec.field.discriminant)), gamma * rec.degree());
  switch (c) {
  case Comparison::Greater: return Membership::In;
  case Comparison::Equal: return Membership::Boundary;
  case Comparison::Less: return Membership::Out;
  default: return Membership::Failed;
  }
}

/// Record for a field from its delta result.
inline CensusRecord make_record(const FieldEntry &entry, const DeltaResult &d, const std::vector<BigRational> &gammas) {
  CensusRecord r;
  r.field = NumberField::from_poly(d.realizing_poly);
  if (r.field.discriminant != entry.field.discriminant)
    throw std::logic_error("census: realizing polynomial " + d.realizing_poly.to_string() + " has discriminant " +
                           r.field.discriminant.get_str() + ", expected " + entry.field.discriminant.get_str());
  r.realizing_poly = d.realizing_poly;
  r.delta = d.height;
  if (abs(r.field.discriminant) != 1) r.ratio = ratio_ball(r.delta, r.field.discriminant);
  for (const auto &g : gammas) r.flags.emplace_back(g, classify_S_gamma(r, g));
  r.source = entry.id();
  return r;
}

/// Stable ids "D<degree>:<Delta>:<k>", k counting entries of equal Delta in
/// census order.
inline std::vector<std::string> class_ids(const std::vector<FieldEntry> &entries) {
  std::map<BigInt, int> seen;
  std::vector<std::string> out;
  for (const auto &e : entries)
    out.push_back("D" + std::to_string(e.field.degree) + ":" + e.field.discriminant.get_str() + ":" +
                  std::to_string(seen[e.field.discriminant]++));
  return out;
}

struct Census {
  std::string selection;
  int degree = 0;
  BigInt disc_bound;
  std::string policy;
  BigRational swept_measure;
  std::vector<CensusRecord> records;
};

/// Complete census of the selection up to |Delta| <= T with exact deltas.
/// Records listed in `existing` (matched by source id) are reused.
inline Census build_census(const Selection &sel, const BigInt &T, const std::vector<BigRational> &gammas = {},
                           const BigRational &height_cap = 64, const std::vector<CensusRecord> &existing = {},
                           const std::function<void(const CensusRecord &)> &on_record = {}) {
  Census c;
  c.selection = sel.name();
  c.degree = sel.degree();
  c.disc_bound = T;
  c.policy = sel.policy();
  auto entries = sel.fields_up_to(T);
  auto ids = class_ids(entries);
  std::map<std::string, const CensusRecord *> have;
  for (const auto &r : existing) have[r.source] = &r;
  std::vector<std::optional<CensusRecord>> slot(entries.size());
  std::vector<FieldEntry> todo;
  std::vector<size_t> todo_slot;
  for (size_t i = 0; i < entries.size(); ++i) {
    auto it = have.find(entries[i].id());
    if (it != have.end()) {
      CensusRecord r = *it->second;
      r.flags.clear();
      for (const auto &g : gammas) r.flags.emplace_back(g, classify_S_gamma(r, g));
      r.class_id = ids[i];
      slot[i] = std::move(r);
    } else {
      todo.push_back(entries[i]);
      todo_slot.push_back(i);
    }
  }
  c.swept_measure = compute_deltas(sel, todo, height_cap, [&](size_t i, const DeltaResult &d) {
    CensusRecord r = make_record(todo[i], d, gammas);
    r.class_id = ids[todo_slot[i]];
    if (on_record) on_record(r);
    slot[todo_slot[i]] = std::move(r);
  });
  for (auto &r : slot) c.records.push_back(std::move(*r));
  return c;
}

// ---------------------------------------------------------------------------
// delta of a single field

namespace detail {

/// Quadratic subfields of a quartic field: fundamental discriminants d with
/// d^2 | Delta_L confirmed by has_subfield.
inline std::optional<QuadField> quadratic_subfield(const NumberField &L) {
  BigInt a = abs(L.discriminant);
  BigInt r = isqrt(a);
  if (!r.fits_slong_p()) return std::nullopt;
  for (long k = 3; k <= r.get_si(); ++k)
    for (long d : {-k, k}) {
      if (!mpz_divisible_p(a.get_mpz_t(), BigInt(BigInt(d) * d).get_mpz_t())) continue;
      if (!is_fundamental_discriminant(d)) continue;
      QuadField F(d % 4 == 0 ? d / 4 : d);
      if (has_subfield(L, NumberField::from_poly(F.defining_poly()))) return F;
    }
  return std::nullopt;
}

} // namespace detail

/// Exact delta(L): smallest height of a generator of L with a realizing
/// polynomial, by the deepening sweep. Degree 2, quartics with a quadratic
/// subfield, and other degrees through the general coefficient box.
inline DeltaResult delta(const NumberField &L, const BigRational &height_cap = 64) {
  if (L.degree < 2) throw std::domain_error("delta: degree must be at least 2");
  if (L.degree == 2) {
    QuadField K = QuadField::of(L.defining_poly);
    std::optional<DeltaResult> out;
    compute_deltas(Selection::quadratics(), {{L, {K.m(), 0}}}, height_cap, [&](size_t, const DeltaResult &d) { out = d; });
    return *out;
  }
  if (L.degree == 4)
    if (auto F = detail::quadratic_subfield(L)) {
      auto sel = Selection::quartics_over(*F);
      for (const auto &e : sel.fields_up_to(abs(L.discriminant))) {
        if (e.field.discriminant != L.discriminant || !is_isomorphic(e.field, L)) continue;
        std::optional<DeltaResult> out;
        compute_deltas(sel, {e}, height_cap, [&](size_t, const DeltaResult &d) { out = d; });
        return *out;
      }
      throw std::logic_error("delta: field not found by the relative enumerator");
    }
  // general degree
  BigRational seed = measure_upper_bound(L.defining_poly);
  BigRational cap = pow(height_cap, L.degree);
  BigRational Bj = 1;
  for (;; Bj *= BigRational(5, 4)) {
    BigRational Mb = std::min(seed, pow(Bj, L.degree));
    if (Mb > cap) throw IncompleteCensus("delta search exceeded the height cap " + to_string(height_cap));
    ClassBest best;
    for (auto &[f, m] : sweep_generic(L.degree, MeasureBound::value(Mb))) {
      if (!best.wants(m)) continue;
      BigInt df = discriminant_poly(f);
      if (!mpz_divisible_p(df.get_mpz_t(), L.discriminant.get_mpz_t()) || !is_square(BigInt(df / L.discriminant))) continue;
      NumberField K = NumberField::from_poly(f);
      if (is_isomorphic(K, L)) best.offer(f, m);
    }
    if (!best.empty()) return resolve_minimum(best, L.degree);
    if (Mb >= seed) throw std::logic_error("delta: defining polynomial not swept");
  }
}

} // namespace deltalab
