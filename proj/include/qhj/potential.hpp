#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "qhj/errors.hpp"

namespace qhj {

/// Generalized Sinh-Gordon potential V(x) = v1 sinh^2(alpha x) + v2 cosh(alpha x)
/// in units hbar = 2m = 1. The sign of alpha is normalized away at construction.
class PotentialParams {
public:
  PotentialParams(double v1, double v2, double alpha) : v1_(v1), v2_(v2), alpha_(std::fabs(alpha)) {
    if (!std::isfinite(v1) || !std::isfinite(v2) || !std::isfinite(alpha))
      throw DomainError("potential parameters must be finite");
    if (alpha_ == 0.0) throw DomainError("alpha must be nonzero");
  }

  double v1() const { return v1_; }
  double v2() const { return v2_; }
  double alpha() const { return alpha_; }

  /// s = sqrt(v1)/alpha, the decay rate of exp(-s cosh alpha x). Requires v1 > 0.
  double s() const {
    require_positive_v1();
    return std::sqrt(v1_) / alpha_;
  }

  void require_positive_v1() const {
    if (!(v1_ > 0.0)) throw UnsupportedBranchError("v1 must be positive");
  }

private:
  double v1_;
  double v2_;
  double alpha_;
};

enum class Variant {
  RealSinhGordon, ///< v1 sinh^2(ax) + v2 cosh(ax)
  ImagCosh,       ///< v1 sinh^2(2x) + i v2 cosh(2x)
  ImagSinh,       ///< i v1 sinh^2(2x) + v2 cosh(2x)
};

/// Complex variants are only defined for alpha = 2.
inline constexpr double kComplexVariantAlpha = 2.0;

inline std::string_view variant_name(Variant v) {
  switch (v) {
  case Variant::RealSinhGordon: return "real";
  case Variant::ImagCosh: return "i-cosh";
  case Variant::ImagSinh: return "i-sinh";
  }
  return "?";
}

inline Variant parse_variant(std::string_view tag) {
  if (tag == "real") return Variant::RealSinhGordon;
  if (tag == "i-cosh") return Variant::ImagCosh;
  if (tag == "i-sinh") return Variant::ImagSinh;
  throw DomainError("unknown variant '" + std::string(tag) + "' (expected real, i-cosh or i-sinh)");
}

/// Coefficients (A, B) of V = A sinh^2(alpha x) + B cosh(alpha x) for a
/// variant, together with the alpha actually used.
struct VariantCoefficients {
  std::complex<double> sinh2;
  std::complex<double> cosh;
  double alpha;
};

inline VariantCoefficients variant_coefficients(const PotentialParams& p, Variant v) {
  using namespace std::complex_literals;
  switch (v) {
  case Variant::RealSinhGordon: return {p.v1(), p.v2(), p.alpha()};
  case Variant::ImagCosh: return {p.v1(), 1.0i * p.v2(), kComplexVariantAlpha};
  case Variant::ImagSinh: return {1.0i * p.v1(), p.v2(), kComplexVariantAlpha};
  }
  throw DomainError("unknown variant");
}

inline std::complex<double> evaluate_potential(const PotentialParams& p, Variant v, double x) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  const auto c = variant_coefficients(p, v);
  const double sh = std::sinh(c.alpha * x);
  const double ch = std::cosh(c.alpha * x);
  return c.sinh2 * (sh * sh) + c.cosh * ch;
}

/// Real-variant shortcut used on hot paths (oracle assembly, residuals).
inline double real_potential(const PotentialParams& p, double x) {
  const double sh = std::sinh(p.alpha() * x);
  return p.v1() * sh * sh + p.v2() * std::cosh(p.alpha() * x);
}

} // namespace qhj
