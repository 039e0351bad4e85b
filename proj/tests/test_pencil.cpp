#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhj/pencil.hpp"

using namespace qhj;

namespace {

PotentialParams at(const QesSet& set, double v1, double alpha) {
  return {v1, qes_target_v2(set, v1, alpha), alpha};
}

} // namespace

TEST(Pencil, SetThreeScalar) {
  const auto set = make_qes_set(3, 0);
  const auto p = build_pencil(set, at(set, 1.0, 1.0));
  ASSERT_EQ(p.size(), 1);
  EXPECT_DOUBLE_EQ(p.matrix(0, 0), 1.25);
}

TEST(Pencil, SetTwoScalar) {
  const auto set = make_qes_set(2, 0);
  const auto p = build_pencil(set, at(set, 1.0, 1.0));
  EXPECT_DOUBLE_EQ(p.matrix(0, 0), 1.0);
}

TEST(Pencil, SetOneDegreeOne) {
  // entries from the recursion at s = 1: diag(0)=0, super1(0)=2, sub1(1)=2, diag(1)=1
  const auto set = make_qes_set(1, 1);
  const auto p = build_pencil(set, at(set, 1.0, 1.0));
  ASSERT_EQ(p.size(), 2);
  EXPECT_DOUBLE_EQ(p.matrix(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(p.matrix(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(p.matrix(1, 0), 2.0);
  EXPECT_DOUBLE_EQ(p.matrix(1, 1), 1.0);
}

TEST(Pencil, BandStructure) {
  const auto set = make_qes_set(4, 6);
  const auto p = build_pencil(set, at(set, 2.0, 0.7));
  for (int r = 0; r < p.size(); ++r)
    for (int c = 0; c < p.size(); ++c)
      if (c < r - 1 || c > r + 2) EXPECT_EQ(p.matrix(r, c), 0.0);
  EXPECT_DOUBLE_EQ(p.matrix(0, 2), -2.0);
}

TEST(Pencil, RejectsInadmissibleV2) {
  const auto set = make_qes_set(2, 0);
  try {
    build_pencil(set, PotentialParams(1.0, -2.5, 1.0));
    FAIL() << "expected InadmissibleParametersError";
  } catch (const InadmissibleParametersError& e) {
    EXPECT_NE(std::string(e.what()).find("-2.5"), std::string::npos);
  }
}

TEST(SolveLevels, TableAnchors) {
  {
    const auto set = make_qes_set(2, 0);
    const auto params = at(set, 1.0, 1.0);
    const auto lv = solve_levels(build_pencil(set, params), params);
    ASSERT_EQ(lv.size(), 1u);
    EXPECT_EQ(lv[0].energy, -1.0);
    EXPECT_EQ(lv[0].parity, Parity::Odd);
    EXPECT_EQ(lv[0].node_count, 1);
  }
  {
    const auto set = make_qes_set(3, 0);
    const auto params = at(set, 1.0, 1.0);
    const auto lv = solve_levels(build_pencil(set, params), params);
    EXPECT_EQ(lv[0].energy, -1.25);
    EXPECT_EQ(lv[0].parity, Parity::Even);
    EXPECT_EQ(lv[0].node_count, 0);
  }
  {
    const auto set = make_qes_set(4, 0);
    const auto params = at(set, 1.0, 1.0);
    const auto lv = solve_levels(build_pencil(set, params), params);
    EXPECT_EQ(lv[0].energy, 0.75);
    EXPECT_EQ(lv[0].node_count, 1);
  }
}

TEST(SolveLevels, SetOneSecularPair) {
  const auto set = make_qes_set(1, 1);
  const auto params = at(set, 1.0, 1.0);
  const auto lv = solve_levels(build_pencil(set, params), params);
  ASSERT_EQ(lv.size(), 2u);
  const double r17 = std::sqrt(17.0);
  EXPECT_NEAR(lv[0].energy, -(1.0 + r17) / 2.0, 1e-13);
  EXPECT_NEAR(lv[1].energy, (r17 - 1.0) / 2.0, 1e-13);
  // c1 = 1 normalization; c0 = 2/h from the first row
  EXPECT_DOUBLE_EQ(lv[0].coefficients[1], 1.0);
  EXPECT_NEAR(lv[0].coefficients[0], (r17 - 1.0) / 4.0, 1e-13);
  EXPECT_NEAR(lv[1].coefficients[0], -(1.0 + r17) / 4.0, 1e-13);
  EXPECT_EQ(lv[0].node_count, 0);
  EXPECT_EQ(lv[1].node_count, 2);
}

TEST(SolveLevels, LambdaTwoBlocks) {
  const auto params = PotentialParams(1.0, -4.0, 1.0);
  const auto lv = solve_classification(enumerate_qes_sets(2.0).sets, params);
  ASSERT_EQ(lv.size(), 4u);
  const double expected[] = {-2.25 - std::sqrt(3.0), -0.25 - std::sqrt(7.0), -2.25 + std::sqrt(3.0),
                             -0.25 + std::sqrt(7.0)};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(lv[i].energy, expected[i], 1e-12);
    EXPECT_EQ(lv[i].node_count, i);
  }
}

TEST(SolveLevels, EnergiesScaleWithAlphaSquared) {
  const auto set = make_qes_set(1, 2);
  const double s = 0.8;
  const auto a = solve_levels(build_pencil(set, at(set, s * s, 1.0)), at(set, s * s, 1.0));
  const double alpha = 2.5;
  const auto pb = at(set, s * s * alpha * alpha, alpha);
  const auto b = solve_levels(build_pencil(set, pb), pb);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i].energy, alpha * alpha * a[i].energy, 1e-11);
}

TEST(SolveLevels, ZeroDegreeClosedForm) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> ss(0.1, 4.0), al(0.2, 3.0);
  for (int idx = 1; idx <= 4; ++idx) {
    const auto set = make_qes_set(idx, 0);
    const double s = ss(rng), alpha = al(rng);
    const auto params = at(set, s * s * alpha * alpha, alpha);
    const double p1 = set.p1().to_double(), p2 = set.p2().to_double();
    const auto lv = solve_levels(build_pencil(set, params), params);
    const double closed = -alpha * alpha * (p1 + p2) * (p1 + p2) + 2.0 * params.s() * alpha * alpha * (p1 - p2);
    EXPECT_EQ(lv[0].energy, closed);
  }
}

TEST(SolveLevels, ShallowWellLimit) {
  const auto set = make_qes_set(3, 0);
  const double alpha = 1.3;
  const double s = 1e-6;
  const auto params = at(set, s * s * alpha * alpha, alpha);
  const auto lv = solve_levels(build_pencil(set, params), params);
  EXPECT_NEAR(lv[0].energy, -alpha * alpha / 4.0, 1e-5);
}

TEST(SolveLevels, PencilSpectrumIsRealAndSimple) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ss(0.2, 5.0);
  for (int idx = 1; idx <= 4; ++idx) {
    for (int n = 0; n <= 6; ++n) {
      for (int trial = 0; trial < 5; ++trial) {
        const auto set = make_qes_set(idx, n);
        const double s = ss(rng);
        const auto params = at(set, s * s, 1.0);
        const auto pencil = build_pencil(set, params);
        Eigen::EigenSolver<Eigen::MatrixXd> es(pencil.matrix, false);
        for (int i = 0; i <= n; ++i)
          EXPECT_LT(std::fabs(es.eigenvalues()(i).imag()), 1e-10 * std::max(1.0, std::abs(es.eigenvalues()(i))));
        std::vector<QesLevel> lv;
        ASSERT_NO_THROW(lv = solve_levels(pencil, params)) << "set " << idx << " n " << n << " s " << s;
        ASSERT_EQ(lv.size(), static_cast<std::size_t>(n + 1));
        for (std::size_t i = 1; i < lv.size(); ++i) EXPECT_GT(lv[i].energy, lv[i - 1].energy);
        for (const auto& l : lv) {
          EXPECT_EQ(l.coefficients.back(), 1.0);
          EXPECT_EQ(l.parity == Parity::Odd, set.odd_parity());
        }
      }
    }
  }
}

TEST(SolveLevels, SturmOrderingAcrossSets) {
  // node counts 0, 1, ..., 2 lambda - 1 with parity alternating from even
  for (int twice : {1, 2, 3, 4, 5, 6, 7, 8}) {
    for (double s : {0.4, 1.0, 2.7}) {
      const double lambda = twice / 2.0;
      const PotentialParams params(s * s, -2.0 * s * lambda, 1.0);
      const auto lv = solve_classification(enumerate_qes_sets(lambda).sets, params);
      ASSERT_EQ(lv.size(), static_cast<std::size_t>(twice));
      for (int i = 0; i < twice; ++i) {
        EXPECT_EQ(lv[i].node_count, i) << "lambda " << lambda << " s " << s;
        EXPECT_EQ(lv[i].parity, i % 2 == 0 ? Parity::Even : Parity::Odd);
        EXPECT_EQ(lv[i].node_count, 2 * lv[i].moving_poles + (lv[i].parity == Parity::Odd ? 1 : 0));
      }
    }
  }
}
