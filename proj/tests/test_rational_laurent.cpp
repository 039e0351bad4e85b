#include <gtest/gtest.h>

#include <random>

#include "qhj/laurent.hpp"
#include "qhj/rational.hpp"

using qhj::Laurent;
using qhj::Polynomial;
using qhj::Rational;

TEST(Rational, NormalizesSignAndLowestTerms) {
  const Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(1, 4) + Rational(3, 4), Rational(1));
  EXPECT_EQ(Rational(1, 4) * Rational(3, 4), Rational(3, 16));
  EXPECT_LT(Rational(1, 4), Rational(1, 3));
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ExactSqrt) {
  EXPECT_EQ(Rational(1, 4).exact_sqrt(), Rational(1, 2));
  EXPECT_EQ(Rational(9, 49).exact_sqrt(), Rational(3, 7));
  EXPECT_FALSE(Rational(2).exact_sqrt().has_value());
  EXPECT_FALSE(Rational(-1, 4).exact_sqrt().has_value());
}

TEST(Rational, OverflowIsReported) {
  const Rational big(std::int64_t{1} << 40);
  EXPECT_THROW(big * big, std::overflow_error);
}

TEST(Polynomial, TaylorShiftPreservesValues) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial<double> p;
    for (int k = 0; k < 6; ++k) p.c.push_back(u(rng));
    const double shift = u(rng);
    const auto q = p.shifted(shift);
    const double t = u(rng);
    EXPECT_NEAR(q(t), p(t + shift), 1e-10);
  }
}

TEST(Laurent, SeriesOfRationalFunction) {
  // 1 / (t^2 (1 - t)) = t^-2 + t^-1 + 1 + t + ...
  const auto s = qhj::rational_series(Polynomial<Rational>{{1}}, Polynomial<Rational>{{1, -1}}, 2, 3);
  for (int k = -2; k < 3; ++k) EXPECT_EQ(s[k], Rational(1)) << k;
  EXPECT_EQ(s[-5], Rational(0));
  EXPECT_THROW(s[3], std::out_of_range);
}

TEST(Laurent, ProductAndDerivativeTrackTruncation) {
  const Laurent<Rational> a(-1, {Rational(2), Rational(3)}); // 2/t + 3 + O(t)
  const auto sq = a * a;                                      // 4/t^2 + 12/t + O(1)
  EXPECT_EQ(sq.low(), -2);
  EXPECT_EQ(sq.high(), 0);
  EXPECT_EQ(sq[-2], Rational(4));
  EXPECT_EQ(sq[-1], Rational(12));
  const auto d = a.derivative(); // -2/t^2 + O(1)
  EXPECT_EQ(d[-2], Rational(-2));
  EXPECT_EQ(d[-1], Rational(0));
  EXPECT_EQ(d.high(), 0);
}
