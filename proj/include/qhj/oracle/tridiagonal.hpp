#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qhj/errors.hpp"

namespace qhj::oracle {

/// Real symmetric tridiagonal matrix: diagonal d_0..d_{n-1}, off-diagonal e_0..e_{n-2}.
/// Eigenvalues by Sturm-sequence bisection, eigenvectors by inverse iteration.
template <std::floating_point Real>
class SymmetricTridiagonal {
public:
  SymmetricTridiagonal(std::vector<Real> diagonal, std::vector<Real> offdiagonal)
      : d_(std::move(diagonal)), e_(std::move(offdiagonal)) {
    if (d_.empty() || e_.size() + 1 != d_.size()) throw DomainError("tridiagonal: inconsistent sizes");
    lower_ = upper_ = d_[0];
    for (std::size_t i = 0; i < d_.size(); ++i) {
      const Real r = (i > 0 ? std::fabs(e_[i - 1]) : Real(0)) + (i + 1 < d_.size() ? std::fabs(e_[i]) : Real(0));
      lower_ = std::min(lower_, d_[i] - r);
      upper_ = std::max(upper_, d_[i] + r);
    }
    norm_ = std::max(std::fabs(lower_), std::fabs(upper_));
  }

  std::size_t size() const { return d_.size(); }

  /// Number of eigenvalues strictly less than x.
  std::size_t sturm_count(Real x) const {
    const Real tiny = std::numeric_limits<Real>::epsilon() * norm_ + std::numeric_limits<Real>::min();
    std::size_t count = 0;
    Real q = d_[0] - x;
    for (std::size_t i = 0;; ++i) {
      if (q == Real(0)) q = -tiny;
      if (q < Real(0)) ++count;
      if (i + 1 == d_.size()) break;
      q = d_[i + 1] - x - e_[i] * e_[i] / q;
    }
    return count;
  }

  /// k-th smallest eigenvalue (0-based).
  Real eigenvalue(std::size_t k) const {
    if (k >= size()) throw DomainError("eigenvalue index out of range");
    Real lo = lower_, hi = upper_;
    for (int it = 0; it < 200; ++it) {
      const Real mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(mid) > k)
        hi = mid;
      else
        lo = mid;
      if (hi - lo <= 2 * std::numeric_limits<Real>::epsilon() * std::max(std::fabs(lo), std::fabs(hi))) break;
    }
    return lo + (hi - lo) / 2;
  }

  std::vector<Real> lowest(std::size_t k) const {
    std::vector<Real> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(eigenvalue(i));
    return out;
  }

  /// Unit eigenvector for an accurate eigenvalue, by inverse iteration with a
  /// partially pivoted LU of T - lambda I. The sign is fixed so that the first
  /// significant component is positive.
  std::vector<Real> eigenvector(Real lambda) const {
    const std::size_t n = size();
    const Real shift = lambda + Real(4) * std::numeric_limits<Real>::epsilon() * norm_;
    // LU factors: row i holds u0 (diag), u1, u2 fill-in; multipliers l; pivots.
    std::vector<Real> u0(n), u1(n, Real(0)), u2(n, Real(0)), l(n, Real(0));
    std::vector<char> swapped(n, 0);
    for (std::size_t i = 0; i < n; ++i) u0[i] = d_[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = e_[i];
    std::vector<Real> sub(e_.begin(), e_.end());
    const Real tiny = std::numeric_limits<Real>::epsilon() * norm_;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::fabs(u0[i]) >= std::fabs(sub[i])) {
        if (u0[i] == Real(0)) u0[i] = tiny;
        l[i] = sub[i] / u0[i];
        u0[i + 1] -= l[i] * u1[i];
      } else {
        // swap rows i and i+1
        swapped[i] = 1;
        l[i] = u0[i] / sub[i];
        u0[i] = sub[i];
        const Real t = u1[i];
        u1[i] = u0[i + 1];
        u0[i + 1] = t - l[i] * u0[i + 1];
        if (i + 2 < n) {
          u2[i] = u1[i + 1];
          u1[i + 1] = -l[i] * u1[i + 1];
        }
      }
    }
    if (u0[n - 1] == Real(0)) u0[n - 1] = tiny;

    std::vector<Real> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Real(1) + Real(0.37) * std::sin(Real(1.7) * Real(i + 1));
    for (int sweep = 0; sweep < 3; ++sweep) {
      // forward: apply L^-1 with row interchanges
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (swapped[i]) std::swap(x[i], x[i + 1]);
        x[i + 1] -= l[i] * x[i];
      }
      // back substitution with U
      for (std::size_t ii = n; ii-- > 0;) {
        Real v = x[ii];
        if (ii + 1 < n) v -= u1[ii] * x[ii + 1];
        if (ii + 2 < n) v -= u2[ii] * x[ii + 2];
        x[ii] = v / u0[ii];
      }
      Real nrm = 0;
      for (auto v : x) nrm += v * v;
      nrm = std::sqrt(nrm);
      if (!(nrm > 0) || !std::isfinite(nrm)) throw NumericError("inverse iteration broke down");
      for (auto& v : x) v /= nrm;
    }
    Real peak = 0;
    for (auto v : x) peak = std::max(peak, std::fabs(v));
    for (auto v : x) {
      if (std::fabs(v) > Real(1e-6) * peak) {
        if (v < 0)
          for (auto& w : x) w = -w;
        break;
      }
    }
    return x;
  }

private:
  std::vector<Real> d_;
  std::vector<Real> e_;
  Real lower_{}, upper_{}, norm_{};
};

} // namespace qhj::oracle
