#include "deltalab/census/exponents.hpp"
#include "deltalab/census/family.hpp"
#include "deltalab/census/reports.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <numeric>
#include <set>

using namespace deltalab;

namespace {

IntPolynomial P(const char *s) { return IntPolynomial::parse(s); }
NumberField K(const char *s) { return NumberField::from_poly(P(s)); }

long squarefree_core(long n) {
  long sign = n < 0 ? -1 : 1, m = std::labs(n), core = 1;
  for (long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) core *= p;
  }
  return sign * core * m;
}

long fund_disc(long core) { return ((core % 4) + 4) % 4 == 1 ? core : 4 * core; }

// all fundamental discriminants with |d| <= T, from the squarefree cores
std::set<long> fund_discs(long T) {
  std::set<long> out;
  for (long m = -T; m <= T; ++m)
    if (m != 0 && m != 1 && squarefree_core(m) == m && std::labs(fund_disc(m)) <= T) out.insert(fund_disc(m));
  return out;
}

// M(a2 x^2 + a1 x + a0) from the roots
double quad_measure(long a2, long a1, long a0) {
  std::complex<double> d = std::sqrt(std::complex<double>(static_cast<double>(a1 * a1 - 4 * a2 * a0)));
  std::complex<double> r1 = (-static_cast<double>(a1) + d) / (2.0 * a2), r2 = (-static_cast<double>(a1) - d) / (2.0 * a2);
  return a2 * std::max(1.0, std::abs(r1)) * std::max(1.0, std::abs(r2));
}

bool is_square_long(long n) {
  if (n < 0) return false;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  for (long k = std::max(0L, r - 2); k <= r + 2; ++k)
    if (k * k == n) return true;
  return false;
}

// f(a x + b), primitive
IntPolynomial compose_linear(const IntPolynomial &f, long a, long b) {
  IntPolynomial r, lin{b, a};
  for (int i = f.degree(); i >= 0; --i) r = r * lin + IntPolynomial::constant(f.coeff(i));
  return r.primitive_part();
}

// x^d f(1/x)
IntPolynomial reversed(const IntPolynomial &f) {
  std::vector<BigInt> c(f.coeffs().rbegin(), f.coeffs().rend());
  return IntPolynomial(c);
}

BigRational Q(long p, long q = 1) {
  BigRational r(p, q);
  r.canonicalize();
  return r;
}

} // namespace

// ---------------------------------------------------------------------------
// exponents

TEST(Exponents, ThresholdFormula) {
  for (long D = 2; D <= 100; ++D) {
    long b = D;
    for (long k = 2; k < D; ++k)
      if (D % k == 0) {
        b = k;
        break;
      }
    // b <= 3: 1/(D(b+1)); b >= 4: 1/(2D(b+1)) + 1/(D b^2 (b+1))
    long num, den;
    if (b <= 3) {
      num = 1;
      den = D * (b + 1);
    } else {
      num = b * b + 2;
      den = 2 * D * b * b * (b + 1);
    }
    long g = std::gcd(num, den);
    EXPECT_EQ(gamma_threshold(D), Q(num / g, den / g)) << "D=" << D;
  }
  EXPECT_EQ(gamma_threshold(4), Q(1, 12));
  EXPECT_EQ(gamma_threshold(2), Q(1, 6));
  EXPECT_EQ(silverman_exponent(4), Q(1, 24));
  EXPECT_EQ(gamma_threshold(9), Q(1, 36));
  EXPECT_EQ(gamma_threshold(25), Q(9, 2500));
  EXPECT_THROW(gamma_threshold(1), std::domain_error);
}

TEST(Exponents, CompositeChain) {
  for (long D = 5; D <= 100; ++D) {
    if (smallest_divisor(D) == D) continue;
    ExponentReport r = exponent_comparison(D);
    EXPECT_EQ(r.gamma_vs_sqrt, Comparison::Greater) << D;
    EXPECT_EQ(r.sqrt_vs_silverman, Comparison::Greater) << D;
    double s = 1.0 / (2.0 * D * (std::sqrt(static_cast<double>(D)) + 1));
    EXPECT_GT(r.gamma.get_d(), s);
    EXPECT_GT(s, 1.0 / (2.0 * D * (D - 1)));
  }
  // D = 4: sqrt exponent and Silverman exponent coincide
  EXPECT_EQ(exponent_comparison(4).sqrt_vs_silverman, Comparison::Equal);
  auto r = exponent_comparison(4, Q(1));
  EXPECT_EQ(*r.nu_over_theta, Q(1, 20));
  EXPECT_EQ(r.nu_ratio_vs_silverman, Comparison::Greater);
}

TEST(Exponents, SilvermanBound) {
  // (24/4)^(1/4) = 6^(1/4)
  RealBall b = silverman_bound(2, BigInt(24));
  EXPECT_NEAR(b.center().to_double(), std::pow(6.0, 0.25), 1e-15);
  EXPECT_THROW(silverman_base(2, BigInt(0)), std::domain_error);
  RealBall one = silverman_bound(2, BigInt(-4));
  EXPECT_TRUE(one.contains(BigRational(1)));
  EXPECT_NEAR(silverman_bound(2, BigInt(8)).center().to_double(), std::pow(2.0, 0.25), 1e-15);
  EXPECT_EQ(exponent_comparison(6).gamma, Q(1, 18));
  EXPECT_EQ(exponent_comparison(6).gamma_vs_silverman, Comparison::Greater);
}

// ---------------------------------------------------------------------------
// quadratic fields

TEST(QuadFieldTest, FundamentalDiscriminants) {
  auto want = fund_discs(500);
  auto got = fundamental_discriminants(500);
  EXPECT_EQ(std::set<long>(got.begin(), got.end()), want);
  EXPECT_EQ(want.size(), 306u);
  for (long d = -60; d <= 60; ++d) EXPECT_EQ(is_fundamental_discriminant(d), want.count(d) == 1) << d;
}

TEST(QuadFieldTest, Arithmetic) {
  QuadField F = QuadField::of(P("x^2-2"));
  EXPECT_EQ(F.discriminant(), 8);
  auto u = F.fundamental_unit();
  BigRational n = F.norm(u);
  EXPECT_TRUE(n == 1 || n == -1);
  // kummer polynomial of 1+sqrt2 defines a quartic field containing Q(sqrt2)
  QuadElt beta = F.elt(1, 1);
  IntPolynomial k = F.kummer_poly(QuadElt{BigRational(3), BigRational(1)});
  NumberField L = NumberField::from_poly(k);
  EXPECT_EQ(L.degree, 4);
  EXPECT_TRUE(has_subfield(L, K("x^2-2")));
  EXPECT_TRUE(F.is_square(F.mul(beta, beta)));
  EXPECT_FALSE(F.is_square(beta));
}

// ---------------------------------------------------------------------------
// quadratic census against brute force

TEST(QuadraticCensus, FieldCountMatchesOracle) {
  auto fields = Selection::quadratics().fields_up_to(BigInt(500));
  EXPECT_EQ(fields.size(), fund_discs(500).size());
  std::set<long> seen;
  for (const auto &e : fields) seen.insert(e.field.discriminant.get_si());
  EXPECT_EQ(seen, fund_discs(500));
}

TEST(QuadraticCensus, DeltaMatchesBruteForce) {
  // smallest measure per field over a box wide enough for |Delta| <= 60
  const long B = 16;
  std::map<long, double> best;
  for (long a2 = 1; a2 <= B; ++a2)
    for (long a1 = -2 * B; a1 <= 2 * B; ++a1)
      for (long a0 = -B; a0 <= B; ++a0) {
        if (a0 == 0 || std::gcd(std::gcd(a2, std::labs(a1)), std::labs(a0)) != 1) continue;
        long disc = a1 * a1 - 4 * a2 * a0;
        if (is_square_long(disc)) continue;
        long d = fund_disc(squarefree_core(disc));
        if (std::labs(d) > 60) continue;
        double m = quad_measure(a2, a1, a0);
        auto it = best.find(d);
        if (it == best.end() || m < it->second) best[d] = m;
      }
  Census c = build_census(Selection::quadratics(), BigInt(60));
  ASSERT_EQ(c.records.size(), best.size());
  for (const auto &r : c.records) {
    long d = r.field.discriminant.get_si();
    double m = std::pow(r.delta.value().center().to_double(), 2.0);
    EXPECT_NEAR(m, best.at(d), 1e-9) << d;
  }
}

TEST(QuadraticCensus, SilvermanSuite) {
  Census c = build_census(Selection::quadratics(), BigInt(500));
  ASSERT_EQ(c.records.size(), 306u);
  int equal = 0;
  for (const auto &r : c.records) {
    SilvermanVerdict v = verify_silverman(r);
    ASSERT_TRUE(v == SilvermanVerdict::Holds || v == SilvermanVerdict::HoldsWithEquality) << r.class_id;
    if (v == SilvermanVerdict::HoldsWithEquality) {
      ++equal;
      EXPECT_EQ(r.field.discriminant, BigInt(-4));
    }
  }
  EXPECT_EQ(equal, 1);
}

TEST(QuadraticCensus, DeltaExactness) {
  auto i = delta(K("x^2+1"));
  EXPECT_EQ(*i.height.structure().exact_integer(), BigInt(1));
  auto w = delta(K("x^2+3"));
  EXPECT_EQ(*w.height.structure().exact_integer(), BigInt(1));
  EXPECT_EQ(w.realizing_poly, P("x^2+x+1"));
  auto r2 = delta(K("x^2-2"));
  EXPECT_EQ(*r2.height.structure().exact_integer(), BigInt(2));
  CensusRecord rec = make_record({K("x^2-2"), {BigRational(2), BigRational(0)}}, r2, {Q(1, 6), Q(1, 8), Q(1, 4)});
  EXPECT_EQ(rec.flags[0].second, Membership::Boundary);
  EXPECT_EQ(rec.flags[1].second, Membership::In);
  EXPECT_EQ(rec.flags[2].second, Membership::Out);
  auto r6 = delta(K("x^2-6"));
  const auto &ms = r6.height.structure();
  EXPECT_NE(compare_mahler_power(ms, silverman_base(2, BigInt(24)), Q(1, 2)), Comparison::Less);
  EXPECT_EQ(compare_mahler_power(ms, BigRational(3), Q(1)), Comparison::Equal);
}

TEST(QuadraticCensus, IsomorphicPresentations) {
  // delta is a field invariant: equal for any defining polynomial
  std::vector<std::pair<IntPolynomial, IntPolynomial>> pairs;
  for (const char *f : {"x^2+1", "x^2-2", "x^2+3", "x^2-5", "x^2+7", "x^2-10", "x^2+x+3", "x^2-13"}) {
    pairs.push_back({P(f), compose_linear(P(f), 1, 3)});
    pairs.push_back({P(f), compose_linear(P(f), 2, -1)});
  }
  pairs.push_back({P("x^4+1"), compose_linear(P("x^4+1"), 1, 1)});
  pairs.push_back({P("x^4-2"), reversed(compose_linear(P("x^4-2"), 1, -1))});
  pairs.push_back({P("x^4-10x^2+1"), compose_linear(P("x^4-10x^2+1"), 2, 1)});
  ASSERT_GE(pairs.size(), 10u);
  for (const auto &[f, g] : pairs) {
    NumberField Kf = NumberField::from_poly(f), Kg = NumberField::from_poly(g);
    ASSERT_TRUE(is_isomorphic(Kf, Kg)) << f.to_string() << " / " << g.to_string();
    auto a = delta(Kf), b = delta(Kg);
    EXPECT_EQ(compare_mahler(a.height.structure(), b.height.structure()), Comparison::Equal) << f.to_string();
    EXPECT_EQ(a.realizing_poly, b.realizing_poly);
  }
}

// ---------------------------------------------------------------------------
// counting

TEST(Counting, SmallValuesAgainstBruteForce) {
  auto rep = counting_report(Selection::quadratics(), {Q(1), Q(10)});
  // N_Delta(quad, 10): fundamental discriminants -3, -4, 5, -7, 8, -8
  EXPECT_EQ(rep.rows[1].n_disc, fund_discs(10).size());
  EXPECT_EQ(rep.rows[1].n_disc, 6u);
  // N_delta(quad, 1): Q(i), Q(sqrt -3)
  EXPECT_EQ(rep.rows[0].n_delta, 2u);

  // N_H(2, 1): quadratic algebraic numbers of height <= 1, i.e. M <= 1
  unsigned long brute = 0;
  for (long a2 = 1; a2 <= 2; ++a2)
    for (long a1 = -4; a1 <= 4; ++a1)
      for (long a0 = -4; a0 <= 4; ++a0) {
        if (a0 == 0 || std::gcd(std::gcd(a2, std::labs(a1)), std::labs(a0)) != 1 || is_square_long(a1 * a1 - 4 * a2 * a0))
          continue;
        if (quad_measure(a2, a1, a0) <= 1 + 1e-12) brute += 2;
      }
  EXPECT_EQ(count_heights(2, MeasureBound::height(1, 1)), brute);
  EXPECT_EQ(brute, 6u);
  EXPECT_EQ(rep.rows[0].n_height, 6u);

  // enumerate_heights(1, 2): rationals p/q with max(|p|, q) <= 2
  std::set<std::pair<long, long>> rats;
  for (long q = 1; q <= 2; ++q)
    for (long p = -2; p <= 2; ++p) {
      long g = std::gcd(std::labs(p), q);
      rats.insert({p / g, q / g});
    }
  auto hs = enumerate_heights(1, 2);
  EXPECT_EQ(hs.size(), rats.size());
  EXPECT_EQ(hs.size(), 7u);
}

TEST(Counting, HeightCountMatchesBruteForce) {
  for (long T : {2, 3}) {
    long B = T * T;
    unsigned long long brute = 0;
    for (long a2 = 1; a2 <= B; ++a2)
      for (long a1 = -2 * B; a1 <= 2 * B; ++a1)
        for (long a0 = -B; a0 <= B; ++a0) {
          if (a0 == 0 || std::gcd(std::gcd(a2, std::labs(a1)), std::labs(a0)) != 1 || is_square_long(a1 * a1 - 4 * a2 * a0))
            continue;
          if (quad_measure(a2, a1, a0) <= B * (1 + 1e-12)) brute += 2;
        }
    EXPECT_EQ(count_heights(2, MeasureBound::height(Q(T), 1)), brute) << T;
  }
}

TEST(Counting, EnumerationOrderAndSmallCases) {
  EXPECT_EQ(enumerate_heights(1, 1).size(), 3u);
  auto q = height_polynomials(2, 1);
  std::set<IntPolynomial, decltype(&canonical_poly_less)> got(q.begin(), q.end(), &canonical_poly_less);
  EXPECT_EQ(q.size(), 3u);
  for (const char *f : {"x^2+1", "x^2+x+1", "x^2-x+1"}) EXPECT_EQ(got.count(P(f)), 1u) << f;
  EXPECT_TRUE(std::is_sorted(q.begin(), q.end(), canonical_poly_less));
  EXPECT_THROW(enumerate_heights(0, 1), std::domain_error);
}

TEST(Counting, CanonicalPolynomial) {
  EXPECT_EQ(canonical_polynomial(K("x^2+1")), P("x^2+1"));
  EXPECT_EQ(canonical_polynomial(K("x^2+3")), P("x^2+x+1"));
  EXPECT_EQ(canonical_polynomial(K("x^2-8")), P("x^2-2"));
}

TEST(Counting, SchmidtSlope) {
  auto rep = counting_report(Selection::quadratics(), {Q(3), Q(4), Q(5), Q(6), Q(8)});
  ASSERT_TRUE(rep.height_slope);
  EXPECT_GE(*rep.height_slope, 5.0);
  EXPECT_LE(*rep.height_slope, 7.0);
  EXPECT_THROW(counting_report(Selection::quadratics(), {Q(100)}), IncompleteCensus);
}

TEST(Counting, ChainInequalities) {
  for (long T : {50, 200, 500})
    for (auto g : {Q(1, 8), Q(1, 6), Q(1, 4)}) {
      auto r = prop1_chain_check(Selection::quadratics(), Q(T), g);
      EXPECT_TRUE(r.holds) << T << " " << g;
      EXPECT_EQ(r.failures, 0u);
    }
  auto z = prop1_chain_check(Selection::quadratics(), Q(10), Q(0));
  EXPECT_TRUE(z.holds);
  EXPECT_EQ(z.delta_all, 2u);
  auto sel = Selection::quartics_over(QuadField::of(P("x^2-2")));
  for (long T : {50, 200, 500})
    for (auto g : {Q(1, 24), Q(1, 12)}) {
      auto r = prop1_chain_check(sel, Q(T), g);
      EXPECT_TRUE(r.holds) << T << " " << g;
    }
}

// ---------------------------------------------------------------------------
// quartics over Q(sqrt 2)

TEST(RelativeCensus, SweepMatchesGenericBox) {
  // every quartic with M <= 3 whose field contains Q(sqrt 2), found by the
  // plain coefficient box, against the relative sweep
  NumberField F = K("x^2-2");
  unsigned long long generic = 0;
  std::set<BigInt> discs;
  for (auto &[f, m] : sweep_generic(4, MeasureBound::value(3))) {
    NumberField L = NumberField::from_poly(f);
    if (!mpz_divisible_p(L.discriminant.get_mpz_t(), BigInt(64).get_mpz_t())) continue;
    if (!has_subfield(L, F)) continue;
    ++generic;
    discs.insert(L.discriminant);
  }
  auto sel = Selection::quartics_over(QuadField::of(P("x^2-2")));
  Level L = sel.level(MeasureBound::value(3));
  EXPECT_EQ(L.polys, generic);
  std::set<BigInt> rel;
  for (const auto &c : L.classes)
    if (!c.best.empty()) rel.insert(NumberField::from_poly(resolve_minimum(c.best, 4).realizing_poly).discriminant);
  EXPECT_EQ(rel, discs);
}

TEST(RelativeCensus, EnumeratorFields) {
  auto fields = Selection::relative_fields(QuadField::of(P("x^2-2")), BigInt(2048));
  ASSERT_EQ(fields.size(), 12u);
  for (size_t i = 0; i < fields.size(); ++i) {
    const auto &L = fields[i].field;
    EXPECT_TRUE(has_subfield(L, K("x^2-2")));
    // tower: Delta_F^2 divides Delta_L
    EXPECT_TRUE(mpz_divisible_p(L.discriminant.get_mpz_t(), BigInt(64).get_mpz_t()));
    for (size_t j = 0; j < i; ++j)
      if (fields[j].field.discriminant == L.discriminant) {
        EXPECT_FALSE(is_isomorphic(fields[j].field, L));
      }
  }
  EXPECT_EQ(fields.front().field.discriminant, BigInt(256));
}

TEST(RelativeCensus, DensityPipeline) {
  DensityConfig cfg;
  cfg.degree = 4;
  cfg.subfield = P("x^2-2");
  cfg.gamma = Q(1, 12);
  cfg.schedule = default_schedule(BigInt(5000));
  auto rep = density_report(cfg);
  for (const auto &r : rep.rows) EXPECT_EQ(r.failures, 0u);
  bool has_x4p1 = false, has_x4m2 = false;
  for (const auto &r : rep.census.records) {
    if (r.realizing_poly == P("x^4+1")) has_x4p1 = r.field.discriminant == 256;
    if (r.realizing_poly == P("x^4-2")) has_x4m2 = r.field.discriminant == -2048;
  }
  EXPECT_TRUE(has_x4p1);
  EXPECT_TRUE(has_x4m2);
  auto cc = relative_cross_check(Selection::quartics_over(QuadField::of(P("x^2-2"))), rep.census, BigInt(2048));
  EXPECT_TRUE(cc.agree);
  EXPECT_EQ(cc.census_fields, 12u);
}

TEST(RelativeCensus, RelativeEnumeratorExamples) {
  auto over_r2 = enumerate_relative_quadratic(K("x^2-2"), BigInt(2048));
  bool zeta8 = false, root4 = false;
  for (const auto &L : over_r2) {
    zeta8 = zeta8 || (L.discriminant == 256 && is_isomorphic(L, K("x^4+1")));
    root4 = root4 || (L.discriminant == -2048 && is_isomorphic(L, K("x^4-2")));
  }
  EXPECT_TRUE(zeta8);
  EXPECT_TRUE(root4);
  EXPECT_EQ(enumerate_relative_quadratic(K("x^2-2"), BigInt(2047)).size(), over_r2.size() - 3);
  // over Q(i) the smallest is Q(zeta_12), below Q(zeta_8) at 256
  auto over_i = enumerate_relative_quadratic(K("x^2+1"), BigInt(400));
  ASSERT_FALSE(over_i.empty());
  EXPECT_EQ(over_i.front().discriminant, BigInt(144));
  EXPECT_TRUE(is_isomorphic(over_i.front(), K("x^4-x^2+1"))); // Q(zeta_12) = Q(i, sqrt -3)
  EXPECT_THROW(enumerate_relative_quadratic(K("x^3-2"), BigInt(100)), std::domain_error);
}

TEST(Density, QuadraticGammaZero) {
  DensityConfig cfg;
  cfg.degree = 2;
  cfg.gamma = Q(0);
  cfg.schedule = {BigInt(10), BigInt(50)};
  auto rep = density_report(cfg);
  for (const auto &r : rep.rows) {
    EXPECT_EQ(r.boundary, 2u);
    EXPECT_EQ(r.out, 0u);
    EXPECT_EQ(r.in + r.boundary, r.fields);
  }
  cfg.gamma = Q(1, 4);
  cfg.schedule = {BigInt(500)};
  auto q = density_report(cfg).rows[0];
  EXPECT_GT(q.ratio, 0);
  EXPECT_LT(q.ratio, 1);
}

TEST(RelativeCensus, ResumeMatchesFullRun) {
  auto sel = Selection::quartics_over(QuadField::of(P("x^2-2")));
  Census full = build_census(sel, BigInt(2500), {Q(1, 12)});
  std::vector<CensusRecord> part(full.records.begin(), full.records.begin() + 5);
  Census resumed = build_census(sel, BigInt(2500), {Q(1, 12)}, 64, part);
  ASSERT_EQ(resumed.records.size(), full.records.size());
  for (size_t i = 0; i < full.records.size(); ++i) {
    EXPECT_EQ(resumed.records[i].class_id, full.records[i].class_id);
    EXPECT_EQ(resumed.records[i].realizing_poly, full.records[i].realizing_poly);
  }
}

TEST(Census, Refusals) {
  EXPECT_THROW(selection_for(3, std::nullopt), IncompleteCensus);
  EXPECT_THROW(selection_for(6, P("x^2-2")), IncompleteCensus);
  EXPECT_THROW(delta(K("x^3-2"), Q(1)), IncompleteCensus);
}

TEST(Census, CubicDelta) {
  // x^3 - 2: no generator of smaller measure in a small box
  auto d = delta(K("x^3-2"));
  EXPECT_EQ(*d.height.structure().exact_integer(), BigInt(2));
}

TEST(Census, ExactRatios) {
  Census c = build_census(Selection::quadratics(), BigInt(8));
  for (const auto &row : ratio_scatter(c.records)) {
    if (row.disc == 8 || row.disc == -8) {
      EXPECT_EQ(row.exact, Q(1, 6));
    }
    if (row.disc == -4 || row.disc == -3) {
      EXPECT_EQ(row.exact, Q(0));
    }
    if (row.disc == 5) {
      EXPECT_FALSE(row.exact);
    }
  }
}

// ---------------------------------------------------------------------------
// family

TEST(Family, PrimePairs) {
  std::vector<std::pair<long, long>> want = {{2, 3}, {3, 5}, {5, 7}, {7, 11}, {7, 13}};
  EXPECT_EQ(prime_pairs(5), want);
}

TEST(Family, AllChecksPass) {
  for (int D = 2; D <= 5; ++D)
    for (const auto &it : ruppert_family(D, 5)) {
      EXPECT_TRUE(it.checks.all()) << D << " " << it.p << "," << it.q;
      // independent: M(q x^D - p) = q since |root| < 1
      EXPECT_LT(std::pow(static_cast<double>(it.p) / it.q, 1.0 / D), 1.0);
      EXPECT_LE(it.middle.center().to_double(), it.right.center().to_double() * (1 + 1e-12));
    }
}

TEST(Family, Eisenstein) {
  EXPECT_TRUE(eisenstein(P("x^2-6"), BigInt(2)));
  EXPECT_FALSE(eisenstein(P("x^2-4"), BigInt(2)));
  EXPECT_FALSE(eisenstein(P("x^2-6"), BigInt(5)));
}
