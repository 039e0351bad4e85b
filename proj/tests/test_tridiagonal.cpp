#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qhj/oracle/tridiagonal.hpp"

using qhj::oracle::SymmetricTridiagonal;

TEST(Tridiagonal, DiscreteLaplacianHasClosedFormSpectrum) {
  const std::size_t n = 300;
  const double h = 0.01;
  const double inv_h2 = 1.0 / (h * h);
  SymmetricTridiagonal<double> t(std::vector<double>(n, 2.0 * inv_h2), std::vector<double>(n - 1, -inv_h2));
  for (std::size_t k = 0; k < 10; ++k) {
    const double exact =
        2.0 * inv_h2 * (1.0 - std::cos(static_cast<double>(k + 1) * std::numbers::pi / static_cast<double>(n + 1)));
    EXPECT_NEAR(t.eigenvalue(k), exact, 1e-12 * 4.0 * inv_h2);
  }
}

TEST(Tridiagonal, AgreesWithDenseSolver) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 40 + 7 * static_cast<std::size_t>(trial);
    std::vector<double> d(n), e(n - 1);
    for (auto& v : d) v = u(rng);
    for (auto& v : e) v = u(rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = d[i];
    for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = e[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m);
    SymmetricTridiagonal<double> t(d, e);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(t.eigenvalue(k), ref.eigenvalues()(static_cast<Eigen::Index>(k)), 1e-11);
    for (std::size_t k : {std::size_t{0}, n / 2, n - 1}) {
      const double lam = t.eigenvalue(k);
      const auto v = t.eigenvector(lam);
      double res = 0.0, nrm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double r = d[i] * v[i] - lam * v[i];
        if (i > 0) r += e[i - 1] * v[i - 1];
        if (i + 1 < n) r += e[i] * v[i + 1];
        res = std::max(res, std::fabs(r));
        nrm += v[i] * v[i];
      }
      EXPECT_NEAR(nrm, 1.0, 1e-12);
      EXPECT_LT(res, 1e-10);
    }
  }
}

TEST(Tridiagonal, SturmCountIsMonotone) {
  SymmetricTridiagonal<double> t({2, 2, 2, 2}, {-1, -1, -1});
  EXPECT_EQ(t.sturm_count(-1.0), 0u);
  EXPECT_EQ(t.sturm_count(2.0), 2u);
  EXPECT_EQ(t.sturm_count(5.0), 4u);
}

TEST(Tridiagonal, RejectsInconsistentSizes) {
  EXPECT_THROW(SymmetricTridiagonal<double>({1, 2}, {1, 2}), qhj::DomainError);
  SymmetricTridiagonal<double> t({1.0}, {});
  EXPECT_THROW(t.eigenvalue(1), qhj::DomainError);
}
