#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qhj {

/// Dense polynomial, coefficient k multiplies t^k.
template <class T>
struct Polynomial {
  std::vector<T> c;

  T operator()(const T& t) const {
    T acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// Coefficients of p(t + shift) (Taylor shift, Horner scheme).
  Polynomial shifted(const T& shift) const {
    std::vector<T> r = c;
    const auto n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) r[j - 1] = r[j - 1] + shift * r[j];
    return {r};
  }

  /// Coefficients of t^deg p(1/t).
  Polynomial reversed() const { return {std::vector<T>(c.rbegin(), c.rend())}; }
};

/// Truncated Laurent series sum_{k=low}^{high-1} c_k t^k + O(t^high).
template <class T>
class Laurent {
public:
  Laurent() = default;
  Laurent(int low, std::vector<T> coeffs) : low_(low), c_(std::move(coeffs)) {}

  int low() const { return low_; }
  /// First order that is not known.
  int high() const { return low_ + static_cast<int>(c_.size()); }

  T operator[](int order) const {
    if (order >= high()) throw std::out_of_range("Laurent coefficient beyond truncation");
    if (order < low_) return T{};
    return c_[static_cast<std::size_t>(order - low_)];
  }

  /// Term-by-term d/dt.
  Laurent derivative() const {
    std::vector<T> d;
    for (int k = low_; k < high(); ++k) d.push_back(T(k) * (*this)[k]);
    return {low_ - 1, d};
  }

  /// Keep orders < high.
  Laurent truncated(int new_high) const {
    const int h = std::min(new_high, high());
    std::vector<T> r;
    for (int k = low_; k < h; ++k) r.push_back((*this)[k]);
    return {low_, r};
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    const int lo = std::min(a.low_, b.low_);
    const int hi = std::min(a.high(), b.high());
    std::vector<T> r;
    for (int k = lo; k < hi; ++k) r.push_back(a.coef_or_zero(k) + b.coef_or_zero(k));
    return {lo, r};
  }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    const int lo = a.low_ + b.low_;
    const int hi = std::min(a.high() + b.low_, b.high() + a.low_);
    std::vector<T> r;
    for (int k = lo; k < hi; ++k) {
      T acc{};
      for (int i = a.low_; i < a.high(); ++i) {
        const int j = k - i;
        if (j >= b.low_ && j < b.high()) acc = acc + a[i] * b[j];
      }
      r.push_back(acc);
    }
    return {lo, r};
  }

  friend Laurent operator*(const T& s, const Laurent& a) {
    std::vector<T> r;
    for (int k = a.low_; k < a.high(); ++k) r.push_back(s * a[k]);
    return {a.low_, r};
  }

private:
  T coef_or_zero(int k) const { return k < low_ ? T{} : (*this)[k]; }

  int low_ = 0;
  std::vector<T> c_;
};

/// Laurent expansion at t = 0 of num(t) / (t^pole_order * den(t)) with den(0) != 0,
/// truncated so that orders below `high` are known.
template <class T>
Laurent<T> rational_series(const Polynomial<T>& num, const Polynomial<T>& den, int pole_order, int high) {
  if (den.c.empty() || den.c[0] == T{}) throw std::domain_error("rational_series: den(0) must be nonzero");
  const int terms = high + pole_order;
  std::vector<T> q;
  for (int k = 0; k < terms; ++k) {
    T acc = k < static_cast<int>(num.c.size()) ? num.c[static_cast<std::size_t>(k)] : T{};
    for (int j = 1; j <= k && j < static_cast<int>(den.c.size()); ++j)
      acc = acc - den.c[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
    q.push_back(acc / den.c[0]);
  }
  return {-pole_order, q};
}

} // namespace qhj
