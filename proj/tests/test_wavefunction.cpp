#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qhj/wavefunction.hpp"

using namespace qhj;

namespace {

struct Solved {
  PotentialParams params;
  std::vector<QesLevel> levels;
};

Solved solve_lambda(double lambda, double v1 = 1.0, double alpha = 1.0) {
  const PotentialParams p(v1, -2.0 * std::sqrt(v1) * alpha * lambda, alpha);
  return {p, solve_classification(enumerate_qes_sets(lambda).sets, p)};
}

const QesLevel& find_set(const Solved& s, int idx, int k = 0) {
  for (const auto& l : s.levels)
    if (l.set.set_index == idx && k-- == 0) return l;
  throw std::runtime_error("missing level");
}

} // namespace

TEST(Wavefunction, SetTwoIsSinhTimesGaussianLikeFactor) {
  const auto s = solve_lambda(1.5);
  const auto wf = wavefunction(find_set(s, 2), s.params);
  EXPECT_EQ(wf.p1, Rational(1, 2));
  EXPECT_EQ(wf.p2, Rational(1, 2));
  EXPECT_EQ(wf.c, -1.0);
  for (double x : {0.3, 1.1, 2.0}) {
    const double ratio = evaluate_wavefunction(wf, x) / (std::sinh(x) * std::exp(-std::cosh(x)));
    const double ref = evaluate_wavefunction(wf, 0.7) / (std::sinh(0.7) * std::exp(-std::cosh(0.7)));
    EXPECT_NEAR(ratio / ref, 1.0, 1e-13);
  }
  EXPECT_EQ(evaluate_wavefunction(wf, 0.0), 0.0);
}

TEST(Wavefunction, SetThreeIsHalfAngleCosh) {
  const auto s = solve_lambda(1.0);
  const auto wf = wavefunction(find_set(s, 3), s.params);
  // cosh(0.5) exp(-cosh 1) = 0.240998124457216 (30-digit reference) versus cosh(0) exp(-1)
  const double expected_ratio = 0.240998124457216397638 / std::exp(-1.0);
  EXPECT_NEAR(evaluate_wavefunction(wf, 1.0) / evaluate_wavefunction(wf, 0.0), expected_ratio, 1e-13);
}

TEST(Wavefunction, MaxNormalized) {
  const auto s = solve_lambda(2.0, 2.3, 0.8);
  for (const auto& l : s.levels) {
    const auto wf = wavefunction(l, s.params);
    double peak = 0.0;
    for (int i = -4000; i <= 4000; ++i) peak = std::max(peak, std::fabs(evaluate_wavefunction(wf, i * 2e-3)));
    EXPECT_NEAR(peak, 1.0, 1e-4);
  }
}

TEST(Wavefunction, ParityRule) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  const auto s = solve_lambda(2.5, 1.7, 1.2);
  for (const auto& l : s.levels) {
    const auto wf = wavefunction(l, s.params);
    const double sign = l.parity == Parity::Even ? 1.0 : -1.0;
    for (int i = 0; i < 20; ++i) {
      const double x = xs(rng);
      EXPECT_NEAR(evaluate_wavefunction(wf, x), sign * evaluate_wavefunction(wf, -x), 1e-14);
    }
    if (l.parity == Parity::Odd) EXPECT_EQ(evaluate_wavefunction(wf, 0.0), 0.0);
  }
}

TEST(Wavefunction, DecaysAndUnderflowsToZero) {
  const auto s = solve_lambda(1.5);
  const auto wf = wavefunction(find_set(s, 1, 1), s.params);
  EXPECT_EQ(evaluate_wavefunction(wf, 50.0), 0.0);
  EXPECT_EQ(evaluate_wavefunction(wf, -1e4), 0.0);
  EXPECT_LT(std::fabs(evaluate_wavefunction(wf, 5.0)), 1e-20);
  EXPECT_THROW(evaluate_wavefunction(wf, std::nan("")), DomainError);
}

TEST(Wavefunction, GroundStateOfSetOne) {
  const auto s = solve_lambda(1.5);
  const auto& g = find_set(s, 1);
  EXPECT_NEAR(g.coefficients[0], (std::sqrt(17.0) - 1.0) / 4.0, 1e-13);
  const auto wf = wavefunction(g, s.params);
  for (int i = -300; i <= 300; ++i) EXPECT_GT(evaluate_wavefunction(wf, i * 0.01), 0.0);
}

TEST(Wavefunction, AnalyticDerivativesMatchFiniteDifferences) {
  const auto s = solve_lambda(2.5, 0.6, 1.4);
  for (const auto& l : s.levels) {
    const auto wf = wavefunction(l, s.params);
    for (double x : {-1.3, -0.2, 0.45, 1.9}) {
      const double h = 1e-4;
      const auto j = wf.jet(x);
      const double fp = evaluate_wavefunction(wf, x + h), fm = evaluate_wavefunction(wf, x - h);
      const double f0 = evaluate_wavefunction(wf, x);
      EXPECT_NEAR(j.v, f0, 1e-14);
      EXPECT_NEAR(j.d1, (fp - fm) / (2 * h), 1e-6);
      EXPECT_NEAR(j.d2, (fp - 2 * f0 + fm) / (h * h), 1e-4);
    }
  }
}

TEST(QuantumMomentum, EvenStateVanishesAtOrigin) {
  const auto s = solve_lambda(1.0);
  const auto wf = wavefunction(find_set(s, 3), s.params);
  EXPECT_EQ(std::abs(quantum_momentum(wf, 0.0, 0.0)), 0.0);
}

TEST(QuantumMomentum, PurelyImaginaryAndAsymptotic) {
  const auto s = solve_lambda(1.5, 1.0, 1.0);
  const auto wf = wavefunction(find_set(s, 2), s.params);
  for (double x : {0.5, 3.0, 8.0}) {
    const auto p = quantum_momentum(wf, -1.0, x);
    EXPECT_EQ(p.real(), 0.0);
    // -i d/dx [-s cosh x + ln sinh x] = i (s sinh x - coth x)
    EXPECT_NEAR(p.imag(), std::sinh(x) - 1.0 / std::tanh(x), 1e-10 * std::sinh(x));
  }
}

TEST(QuantumMomentum, NodeIsPole) {
  const auto s = solve_lambda(1.5);
  const auto wf = wavefunction(find_set(s, 2), s.params);
  EXPECT_THROW(quantum_momentum(wf, -1.0, 0.0), PoleError);
  const auto& excited = find_set(s, 1, 1);
  const double node = std::acosh(-excited.coefficients[0]);
  EXPECT_THROW(quantum_momentum(wavefunction(excited, s.params), 0.0, node), PoleError);
}

TEST(QuantumMomentum, QhjIdentityHoldsPointwise) {
  std::mt19937 rng(77);
  for (double lambda : {0.5, 1.0, 1.5, 2.0, 3.5}) {
    for (double v1 : {0.3, 1.0, 4.0}) {
      const auto s = solve_lambda(lambda, v1, 1.1);
      std::uniform_real_distribution<double> xs(-4.0 / 1.1, 4.0 / 1.1);
      for (const auto& l : s.levels) {
        const auto wf = wavefunction(l, s.params);
        int checked = 0;
        while (checked < 20) {
          const double x = xs(rng);
          std::complex<double> r;
          try {
            r = qhj_residual(wf, s.params, l.energy, x);
          } catch (const PoleError&) {
            continue;
          }
          const auto m = quantum_momentum_jet(wf, x);
          const double scale = std::max({1.0, std::fabs(l.energy), std::fabs(real_potential(s.params, x)),
                                         std::norm(m.p), std::abs(m.dp)});
          EXPECT_LT(std::abs(r), 1e-8 * scale) << "lambda " << lambda << " x " << x;
          ++checked;
        }
      }
    }
  }
}

TEST(Wavefunction, SchrodingerResidualVanishes) {
  std::mt19937 rng(78);
  for (double lambda : {0.5, 1.0, 1.5, 2.0, 4.0}) {
    for (double alpha : {0.6, 1.0, 2.0}) {
      const auto s = solve_lambda(lambda, 1.8, alpha);
      std::uniform_real_distribution<double> xs(-4.0 / alpha, 4.0 / alpha);
      for (const auto& l : s.levels) {
        const auto wf = wavefunction(l, s.params);
        for (int i = 0; i < 50; ++i) {
          const double x = xs(rng);
          EXPECT_LT(std::fabs(schrodinger_residual(wf, s.params, l.energy, x)), 1e-8 * std::max(1.0, std::fabs(l.energy)));
        }
      }
    }
  }
}
