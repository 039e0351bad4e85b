#pragma once

#include <complex>
#include <string>

#include "qhj/errors.hpp"
#include "qhj/potential.hpp"
#include "qhj/riccati.hpp"

namespace qhj {

struct SymmetryReport {
  Variant variant = Variant::RealSinhGordon;
  bool pt_symmetric = false;
  /// lambda on the branch C = -sqrt(-g0); the other branch is its negative.
  std::complex<double> lambda_value;
  bool physical_qes_possible = false;
  std::string note;
};

inline SymmetryReport classify_symmetry(const PotentialParams& params, Variant variant) {
  if (params.v1() == 0.0)
    throw DegeneratePotentialError("v1 = 0: the sinh^2 term vanishes and the pole structure changes");
  const auto coeffs = variant_coefficients(params, variant);
  const auto branches = match_at_infinity(coeffs);

  SymmetryReport r;
  r.variant = variant;
  r.lambda_value = branches[0].second;
  r.pt_symmetric = variant != Variant::ImagSinh;

  const bool real_lambda = r.lambda_value.imag() == 0.0 && branches[0].first.imag() == 0.0;
  r.physical_qes_possible = real_lambda && r.lambda_value.real() > 0.0;

  switch (variant) {
  case Variant::RealSinhGordon:
    if (params.v1() < 0.0)
      r.note = "v1 < 0: C is imaginary, no normalizable QES branch";
    else if (r.physical_qes_possible)
      r.note = "real potential, PT symmetric; lambda > 0 on the normalizable branch C = -sqrt(v1)/alpha";
    else
      r.note = "real potential, PT symmetric; lambda <= 0 (v2 >= 0), no QES levels on the normalizable branch";
    break;
  case Variant::ImagCosh:
    r.note = "PT symmetric under x -> i pi/2 - x, i -> -i; lambda = +-i v2/(4 sqrt v1) is complex, "
             "so no physical QES solutions; alpha fixed to 2";
    break;
  case Variant::ImagSinh:
    r.note = "not PT symmetric; complex lambda, no physical QES solutions; alpha fixed to 2";
    break;
  }
  return r;
}

} // namespace qhj
