#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qhj {

/// Exact rational number with 64-bit numerator and denominator, kept in
/// lowest terms with a positive denominator. Only small values occur here
/// (residues, Laurent coefficients of the kinetic term), so overflow is
/// checked but not worked around.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {} // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return {checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
            checked_mul(a.den_, b.den_)};
  }
  friend Rational operator-(const Rational& a) { return {-a.num_, a.den_}; }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_)};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return {checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_)};
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // denominators are positive
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  /// Exact square root when both numerator and denominator are perfect squares.
  std::optional<Rational> exact_sqrt() const {
    if (num_ < 0) return std::nullopt;
    auto n = isqrt(num_);
    auto d = isqrt(den_);
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
  }
  static std::optional<std::int64_t> isqrt(std::int64_t v) {
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
    for (auto c = r > 0 ? r - 1 : 0; c <= r + 1; ++c)
      if (c * c == v) return c;
    return std::nullopt;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

} // namespace qhj
