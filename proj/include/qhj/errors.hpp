#pragma once

#include <stdexcept>
#include <string>

namespace qhj {

/// Base class for every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error object.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define QHJ_DEFINE_ERROR(Name, tag)                                         \
  class Name : public Error {                                              \
  public:                                                                  \
    explicit Name(const std::string& what) : Error(tag, what) {}           \
  }

QHJ_DEFINE_ERROR(DomainError, "domain");
QHJ_DEFINE_ERROR(DegeneratePotentialError, "degenerate_potential");
QHJ_DEFINE_ERROR(UnsupportedBranchError, "unsupported_branch");
QHJ_DEFINE_ERROR(ComplexResidueError, "complex_residue");
QHJ_DEFINE_ERROR(InadmissibleParametersError, "inadmissible_parameters");
QHJ_DEFINE_ERROR(NumericError, "numeric");
QHJ_DEFINE_ERROR(InvariantViolation, "invariant_violation");
QHJ_DEFINE_ERROR(PoleError, "pole");
QHJ_DEFINE_ERROR(ContourCollisionError, "contour_collision");
QHJ_DEFINE_ERROR(MismatchError, "mismatch");

#undef QHJ_DEFINE_ERROR

} // namespace qhj
