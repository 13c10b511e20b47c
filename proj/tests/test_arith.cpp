#include "deltalab/arith/ball.hpp"
#include "deltalab/arith/fast_interval.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace deltalab;

namespace {

RealBall ball(long v, long prec = 64) { return RealBall(BigInt(v), prec); }

RealBall ball_pm(double c, double r) {
  Mpfr rad(r, 32);
  return RealBall::from_center_radius(Mpfr(c, 64), rad);
}

Mpfr sqrt_oracle(const BigRational &q, long prec) {
  Mpfr r(q, prec);
  mpfr_sqrt(r.get(), r.get(), MPFR_RNDN);
  return r;
}

} // namespace

TEST(BallPow, Examples) {
  long prec = 128;
  RealBall r = ball_pow_rational(ball(4, prec), BigRational(1, 2));
  EXPECT_TRUE(r.contains(BigRational(2)));
  Mpfr bound(64);
  mpfr_set_ui_2exp(bound.get(), 4, -prec, MPFR_RNDN);
  EXPECT_LT(r.radius(), bound);

  RealBall s = ball_pow_rational(ball(8, prec), BigRational(1, 6));
  Mpfr root2 = sqrt_oracle(BigRational(2), 256);
  EXPECT_TRUE(s.contains(RealBall::from_center_radius(root2, Mpfr(32))));

  // 24^(1/4) as a double square root, an independent route
  RealBall t = ball_pow_rational(ball(24, prec), BigRational(1, 4));
  Mpfr q = sqrt_oracle(BigRational(24), 300);
  mpfr_sqrt(q.get(), q.get(), MPFR_RNDN);
  EXPECT_TRUE(t.contains(RealBall::from_center_radius(q, Mpfr(32))));
  EXPECT_NEAR(t.center().to_double(), 2.21336384, 1e-8);

  EXPECT_THROW(ball_pow_rational(ball(0), BigRational(1, 2)), std::domain_error);
  EXPECT_THROW(ball_pow_rational(ball(-3), BigRational(1, 3)), std::domain_error);
}

TEST(BallPow, NegativeAndLargeExponents) {
  RealBall r = ball_pow_rational(ball(9, 128), BigRational(-3, 2));
  EXPECT_TRUE(r.contains(BigRational(1, 27)));
  RealBall s = ball_pow_rational(RealBall(BigRational(4, 9), 128), BigRational(5, 2));
  EXPECT_TRUE(s.contains(BigRational(32, 243)));
}

TEST(BallCompare, Examples) {
  EXPECT_EQ(ball_compare(ball_pm(1, 0.01), ball_pm(2, 0.01)), BallOrder::Less);
  EXPECT_EQ(ball_compare(ball_pm(3, 0.5), ball_pm(3, 0.5)), BallOrder::Overlapping);
  EXPECT_EQ(ball_compare(ball_pm(2, 0.01), ball_pm(1, 0.01)), BallOrder::Greater);
  for (long prec = 64; prec <= 1024; prec *= 2) {
    RealBall a = ball_pow_rational(ball(2, prec), BigRational(1, 2));
    RealBall b = ball_pow_rational(ball(8, prec), BigRational(1, 6));
    EXPECT_EQ(ball_compare(a, b), BallOrder::Overlapping);
  }
}

TEST(Ball, ContainmentOnRationalExpressions) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int it = 0; it < 300; ++it) {
    BigRational x(d(rng), 1 + (rng() % 97)), y(d(rng), 1 + (rng() % 89)), z(d(rng), 1 + (rng() % 13));
    x.canonicalize();
    y.canonicalize();
    z.canonicalize();
    if (z == 0) z = 1;
    BigRational exact = (x * y - z) / z + x;
    RealBall bx(x, 60), by(y, 60), bz(z, 60);
    RealBall v = (bx * by - bz) / bz + bx;
    EXPECT_TRUE(v.contains(exact)) << x << " " << y << " " << z;
  }
}

TEST(Ball, MonotoneRefinement) {
  std::vector<std::pair<long, BigRational>> corpus = {{2, {1, 2}}, {3, {2, 7}}, {24, {1, 4}}, {1000, {5, 9}}, {7, {3, 1}}};
  for (const auto &[b, e] : corpus) {
    Mpfr prev(32);
    bool first = true;
    for (long prec = 64; prec <= 2048; prec *= 2) {
      RealBall r = ball_pow_rational(ball(b, prec), e);
      if (!first) EXPECT_LE(r.radius(), prev);
      prev = r.radius();
      first = false;
    }
  }
}

TEST(Ball, LogAndExp) {
  RealBall l = log(ball(8, 128)) / log(ball(2, 128));
  EXPECT_TRUE(l.contains(BigRational(3)));
  RealBall e = exp(log(ball(5, 128)));
  EXPECT_TRUE(e.contains(BigRational(5)));
}

TEST(Ball, SerializationText) {
  RealBall b = ball_pm(1.5, 0.25);
  EXPECT_NE(b.to_string().find("±"), std::string::npos);
  EXPECT_NE(b.to_string().find("(64 bits)"), std::string::npos);
  Mpfr c(BigRational(1, 3), 100);
  Mpfr back = Mpfr::from_exact_string(c.to_exact_string(), 100);
  EXPECT_TRUE(back == c);
}

TEST(Rational, CanonicalFormClosure) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int it = 0; it < 500; ++it) {
    BigRational a(d(rng), 1 + rng() % 300), b(d(rng), 1 + rng() % 300);
    a.canonicalize();
    b.canonicalize();
    for (const BigRational &r : {BigRational(a + b), BigRational(a * b), b != 0 ? BigRational(a / b) : BigRational(a)}) {
      EXPECT_EQ(gcd(BigInt(abs(r.get_num())), BigInt(r.get_den())), 1);
      EXPECT_GE(r.get_den(), 1);
    }
    // (a + b) - b == a and (a * b) / b == a
    EXPECT_EQ((a + b) - b, a);
    if (b != 0) EXPECT_EQ((a * b) / b, a);
  }
  EXPECT_EQ(to_string(parse_rational("6/-4")), "-3/2");
  EXPECT_THROW(parse_rational("1/0"), std::domain_error);
}

TEST(FastInterval, Enclosure) {
  FastInterval a = FastInterval::point(0.1), b = FastInterval::point(0.2);
  FastInterval s = a + b;
  EXPECT_LE(s.lo, 0.30000000000000004);
  EXPECT_LT(s.lo, s.hi);
  FastInterval e = FastInterval::point(3.0) * FastInterval::point(5.0);
  EXPECT_EQ(e.lo, 15.0);
  EXPECT_EQ(e.hi, 15.0);
  FastInterval big = FastInterval::from_integer(BigInt("123456789012345678901"));
  EXPECT_LT(big.lo, 123456789012345678901.0 + 1e5);
  EXPECT_LE(big.lo, big.hi);
}
