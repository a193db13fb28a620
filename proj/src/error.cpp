#include "semiabel/error.hpp"

namespace semiabel {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::PoleAtLatticePoint: return "PoleAtLatticePoint";
    case ErrorCode::NotALatticePoint: return "NotALatticePoint";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::FiberZero: return "FiberZero";
    case ErrorCode::ZeroOfSection: return "ZeroOfSection";
    case ErrorCode::NotTorsion: return "NotTorsion";
    case ErrorCode::InconsistentOverride: return "InconsistentOverride";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::RelationListTooLong: return "RelationListTooLong";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ConflictingCurveSpec: return "ConflictingCurveSpec";
  }
  return "Unknown";
}

}  // namespace semiabel
