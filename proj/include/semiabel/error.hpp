#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semiabel {

enum class ErrorCode {
  DegenerateLattice,
  ConvergenceFailure,
  PoleAtLatticePoint,
  NotALatticePoint,
  SingularCurve,
  NotOnCurve,
  FiberZero,
  ZeroOfSection,
  NotTorsion,
  InconsistentOverride,
  InternalInconsistency,
  NotApplicable,
  RelationListTooLong,
  SchemaError,
  ConflictingCurveSpec,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace semiabel
