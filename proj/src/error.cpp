#include "tb/error.hpp"

namespace tb {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::InvariantViolation: return "invariant_violation";
    case ErrorCode::OutOfRange: return "out_of_range";
    case ErrorCode::NotPrimitive: return "not_primitive";
    case ErrorCode::NotBasisExtending: return "not_basis_extending";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::SideCondition: return "side_condition";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::CatalogDefect: return "catalog_defect";
  }
  return "unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Infeasible: return 1;
    case ErrorCode::InvalidInput:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvariantViolation:
    case ErrorCode::OutOfRange: return 2;
    case ErrorCode::NotPrimitive:
    case ErrorCode::NotBasisExtending:
    case ErrorCode::Unsupported:
    case ErrorCode::SideCondition:
    case ErrorCode::CatalogDefect: return 3;
  }
  return 2;
}

}  // namespace tb
