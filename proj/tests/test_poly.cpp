#include "deltalab/poly/factor.hpp"
#include "deltalab/poly/qpoly.hpp"
#include "deltalab/poly/roots.hpp"
#include "deltalab/poly/sturm.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace deltalab;

namespace {

IntPolynomial P(const char *s) { return IntPolynomial::parse(s); }

IntPolynomial random_poly(std::mt19937_64 &rng, int deg, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  std::vector<BigInt> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(d(rng));
  if (c.back() == 0) c.back() = 1;
  return IntPolynomial(std::move(c));
}

IntPolynomial reassemble(const Factorization &fz) {
  IntPolynomial r = IntPolynomial::constant(BigInt(fz.content));
  for (const auto &[g, m] : fz.factors) r = r * g.pow(static_cast<unsigned>(m));
  return r;
}

// Brute-force irreducibility: look for a factor of degree k <= n/2 whose
// coefficients lie within the Mignotte bound, by trying all candidates.
// Only feasible for tiny inputs; used as an independent oracle.
bool brute_irreducible(const IntPolynomial &f) {
  int n = f.degree();
  BigInt B = pow(BigInt(2), static_cast<unsigned long>(n)) * l2_norm_ceil(f);
  long b = std::min<long>(B.get_si(), 40);
  for (int k = 1; k <= n / 2; ++k) {
    std::vector<long> c(static_cast<size_t>(k) + 1, -b);
    while (true) {
      if (c.back() > 0) {
        IntPolynomial g = IntPolynomial::from_int64(std::vector<long long>(c.begin(), c.end()));
        if (g.degree() == k && divides(g, f)) return false;
      }
      size_t i = 0;
      while (i < c.size() && c[i] == b) c[i++] = -b;
      if (i == c.size()) break;
      ++c[i];
    }
  }
  return true;
}

} // namespace

TEST(Parse, RoundTrip) {
  EXPECT_EQ(P("3x^2 - 2").to_string(), "3x^2 - 2");
  EXPECT_EQ(P("-x^3+x").to_string(), "-x^3 + x");
  EXPECT_EQ(P("2*y**2+1"), (IntPolynomial{1, 0, 2}));
  EXPECT_THROW(P("x^2+y"), std::invalid_argument);
}

TEST(Resultant, Examples) {
  EXPECT_EQ(resultant(P("x-2"), P("x-3")), -1);
  EXPECT_EQ(resultant(P("x^2+1"), P("x^2+4")), 9);
  EXPECT_EQ(resultant(P("x^2+1"), P("2x")), 4);
  EXPECT_THROW(resultant(IntPolynomial{}, P("x")), std::domain_error);
}

TEST(Resultant, Discriminants) {
  EXPECT_EQ(discriminant_poly(P("x^2+1")), -4);
  EXPECT_EQ(discriminant_poly(P("x^2-x-1")), 5);
  EXPECT_EQ(discriminant_poly(P("x^3-2")), -108);
  EXPECT_EQ(discriminant_poly(P("x^4+1")), 256);
  EXPECT_THROW(discriminant_poly(P("7")), std::domain_error);
}

TEST(Resultant, MatchesSylvesterDeterminant) {
  // product formula oracle: Res(f, g) = lc(f)^deg g prod g(roots of f) with
  // f split over Z
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    std::uniform_int_distribution<long> d(-6, 6);
    std::vector<long> roots;
    IntPolynomial f = IntPolynomial::constant(3);
    for (int i = 0; i < 3; ++i) {
      long r = d(rng);
      roots.push_back(r);
      f = f * IntPolynomial{-r, 1};
    }
    IntPolynomial g = random_poly(rng, 4, 9);
    BigInt expect = pow(BigInt(3), static_cast<unsigned long>(g.degree()));
    for (long r : roots) expect *= g.eval(BigInt(r));
    EXPECT_EQ(resultant(f, g), expect);
  }
}

TEST(Resultant, ZeroIffCommonFactor) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    IntPolynomial a = random_poly(rng, 3, 9), b = random_poly(rng, 2, 9);
    IntPolynomial c = random_poly(rng, 1 + it % 2, 5);
    EXPECT_EQ(resultant(a * c, b * c), 0);
    bool coprime = gcd(a, b).degree() == 0;
    EXPECT_EQ(resultant(a, b) == 0, !coprime);
  }
}

TEST(Factor, Examples) {
  auto f1 = factor_rational(P("x^4-1"));
  EXPECT_EQ(f1.content, 1);
  ASSERT_EQ(f1.factors.size(), 3u);
  EXPECT_EQ(f1.factors[0].first, P("x-1"));
  EXPECT_EQ(f1.factors[1].first, P("x+1"));
  EXPECT_EQ(f1.factors[2].first, P("x^2+1"));

  auto f2 = factor_rational(P("x^4+4"));
  ASSERT_EQ(f2.factors.size(), 2u);
  EXPECT_EQ(f2.factors[0].first, P("x^2-2x+2"));
  EXPECT_EQ(f2.factors[1].first, P("x^2+2x+2"));

  auto f3 = factor_rational(P("2x^2+2"));
  EXPECT_EQ(f3.content, 2);
  ASSERT_EQ(f3.factors.size(), 1u);
  EXPECT_EQ(f3.factors[0].first, P("x^2+1"));

  EXPECT_THROW(factor_rational(IntPolynomial{}), std::domain_error);
}

TEST(Factor, Multiplicities) {
  IntPolynomial f = IntPolynomial{-3} * P("x-1").pow(3) * P("x^2+x+1").pow(2) * P("2x+1");
  auto fz = factor_rational(f);
  EXPECT_EQ(fz.content, -3);
  EXPECT_EQ(reassemble(fz), f);
  ASSERT_EQ(fz.factors.size(), 3u);
  EXPECT_EQ(fz.factors[0].second, 3);
  EXPECT_EQ(fz.factors[1].second, 1);
  EXPECT_EQ(fz.factors[2].second, 2);
}

TEST(Factor, HardCases) {
  // Swinnerton-Dyer x^4-10x^2+1 splits into linear/quadratic factors mod every prime
  EXPECT_TRUE(is_irreducible(P("x^4-10x^2+1")));
  EXPECT_TRUE(is_irreducible(P("x^8-40x^6+352x^4-960x^2+576")));
  auto fz = factor_rational(P("x^4-10x^2+1") * P("x^4+1") * P("x^2-2"));
  EXPECT_EQ(fz.factors.size(), 3u);
  EXPECT_EQ(factor_rational(P("x^12-1")).factors.size(), 6u);
}

TEST(Factor, RandomReassembly) {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 150; ++it) {
    int deg = 1 + static_cast<int>(rng() % 8);
    IntPolynomial f = random_poly(rng, deg, 50);
    if (it % 3 == 0) f = f * random_poly(rng, 1 + static_cast<int>(rng() % 3), 6);
    auto fz = factor_rational(f);
    EXPECT_EQ(reassemble(fz), f) << f.to_string();
    for (const auto &[g, m] : fz.factors) {
      EXPECT_TRUE(g.is_primitive());
      EXPECT_GT(g.lc(), 0);
      EXPECT_TRUE(is_irreducible(g)) << g.to_string();
    }
  }
}

TEST(Irreducible, Examples) {
  EXPECT_TRUE(is_irreducible(P("3x^2-2")));
  EXPECT_FALSE(is_irreducible(P("x^4+4")));
  EXPECT_TRUE(is_irreducible(P("x^4+1")));
  EXPECT_TRUE(brute_irreducible(P("x^4+1")));
  EXPECT_THROW(is_irreducible(P("2x^2+2")), std::domain_error);
}

TEST(Irreducible, AgreesWithBruteForce) {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int it = 0; it < 400 && checked < 120; ++it) {
    int deg = 2 + static_cast<int>(rng() % 3);
    IntPolynomial f = random_poly(rng, deg, 20);
    if (it % 4 == 0) f = random_poly(rng, 1, 4) * random_poly(rng, deg - 1, 4);
    f = f.primitive_part();
    if (f.degree() < 2 || f.coeff(0) == 0) continue;
    if (l2_norm_ceil(f) * pow(BigInt(2), static_cast<unsigned long>(f.degree())) > 40 && it % 4 != 0) continue;
    ++checked;
    EXPECT_EQ(is_irreducible(f), brute_irreducible(f)) << f.to_string();
  }
  EXPECT_GT(checked, 20);
}

TEST(QPoly, Xgcd) {
  QPoly a(P("x^3-2")), b(P("x^2+x+1"));
  auto [g, s, t] = xgcd(a, b);
  EXPECT_EQ(g, QPoly::constant(1));
  EXPECT_EQ(s * a + t * b, g);
}

TEST(Roots, Examples) {
  auto d1 = isolate_roots(P("x^2+1"), 53);
  ASSERT_EQ(d1.size(), 2u);
  EXPECT_FALSE(d1[0].real);
  EXPECT_NEAR(d1[0].center_im().to_double(), -1.0, 1e-12);
  EXPECT_NEAR(d1[1].center_im().to_double(), 1.0, 1e-12);

  auto d2 = isolate_roots(P("x^2-2"), 53);
  ASSERT_EQ(d2.size(), 2u);
  EXPECT_TRUE(d2[0].real && d2[1].real);
  EXPECT_NEAR(d2[1].center_re().to_double(), 1.4142135623730951, 1e-12);

  // oracle: sqrt(2/3) to 200 bits via MPFR directly
  auto d3 = isolate_roots(P("3x^2-2"), 150);
  Mpfr q(BigRational(2, 3), 300);
  mpfr_sqrt(q.get(), q.get(), MPFR_RNDN);
  ASSERT_EQ(d3.size(), 2u);
  EXPECT_TRUE(d3[1].location.re.contains(RealBall::from_center_radius(q, Mpfr(32))));
  EXPECT_LT(d3[1].radius.to_double(), std::ldexp(2.0, -150));
  EXPECT_THROW(isolate_roots(P("x-1") * P("x-1"), 53), std::domain_error);
  EXPECT_THROW(isolate_roots(P("x^2+1"), precision_cap() + 1), RefinementError);
}

TEST(Roots, DisksContainZerosOfF) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 60; ++it) {
    IntPolynomial f = random_poly(rng, 1 + static_cast<int>(rng() % 8), 30);
    if (!is_squarefree(f)) continue;
    long prec = it % 2 ? 30 : 120;
    auto disks = isolate_roots(f, prec);
    ASSERT_EQ(static_cast<int>(disks.size()), f.degree());
    int r1 = 0;
    for (const auto &d : disks) {
      ComplexBall acc{RealBall(BigInt(0), 256), RealBall(BigInt(0), 256)};
      for (int k = f.degree(); k >= 0; --k) acc = acc * d.location + ComplexBall{RealBall(f.coeff(k), 256), RealBall(BigInt(0), 256)};
      EXPECT_TRUE(acc.contains_zero()) << f.to_string();
      r1 += d.real;
    }
    EXPECT_EQ(r1, count_real_roots(f)) << f.to_string();
  }
}

TEST(Roots, ClusteredRoots) {
  // two roots at distance ~1e-20
  IntPolynomial f = P("x-1") * IntPolynomial::parse("100000000000000000000x-100000000000000000001");
  auto disks = isolate_roots(f, 20);
  ASSERT_EQ(disks.size(), 2u);
  EXPECT_TRUE(disks[0].real && disks[1].real);
  // Mignotte-like polynomial x^5 - 2(50x-1)^2 has two very close real roots
  IntPolynomial g = P("x^7") - IntPolynomial{2} * P("50x-1").pow(2);
  auto dg = isolate_roots(g, 53);
  EXPECT_EQ(dg.size(), 7u);
}

TEST(Sturm, Counts) {
  EXPECT_EQ(count_real_roots(P("x^2+1")), 0);
  EXPECT_EQ(count_real_roots(P("x^3-2")), 1);
  EXPECT_EQ(count_real_roots(P("x^4-10x^2+1")), 4);
  SturmSequence s(P("x^2-2"));
  EXPECT_EQ(s.count(BigRational(0), BigRational(2)), 1);
  EXPECT_EQ(s.count(BigRational(-2), BigRational(2)), 2);
  EXPECT_EQ(s.count(BigRational(-1), BigRational(1)), 0);
}

TEST(Berlekamp, FactorsAreIrreducibleAndComplete) {
  // irreducibility oracle: no monic factor of degree <= n/2 by exhaustive trial division
  auto irreducible = [](const ZpPoly &g) {
    u64 p = g.p;
    int n = g.degree();
    for (int d = 1; 2 * d <= n; ++d) {
      std::vector<u64> c(static_cast<size_t>(d) + 1, 0);
      c.back() = 1;
      while (true) {
        if ((g % ZpPoly(c, p)).is_zero()) return false;
        size_t i = 0;
        while (i < static_cast<size_t>(d) && ++c[i] == p) c[i++] = 0;
        if (i == static_cast<size_t>(d)) break;
      }
    }
    return true;
  };
  std::mt19937_64 rng(99);
  for (u64 p : {2, 3, 5, 7}) {
    for (int it = 0; it < 60; ++it) {
      int n = 2 + static_cast<int>(rng() % 6);
      std::vector<u64> c(static_cast<size_t>(n) + 1);
      for (auto &x : c) x = rng() % p;
      c.back() = 1;
      ZpPoly f(c, p);
      if (gcd(f, f.derivative()).degree() > 0) continue;
      auto fac = berlekamp(f);
      ZpPoly prod = ZpPoly::one(p);
      for (const auto &g : fac) {
        EXPECT_TRUE(irreducible(g));
        prod = prod * g;
      }
      EXPECT_TRUE(prod == f);
    }
  }
}

TEST(Factor, ReducibleWithUnitCircleFactor) {
  auto fz = factor_rational(P("x^6-2x^5-x^4-4x^3+x^2-4x-2"));
  ASSERT_EQ(fz.factors.size(), 2u);
  EXPECT_EQ(fz.factors[0].first, P("x^2-x+1"));
}
