#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tb {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  InvariantViolation,
  OutOfRange,
  NotPrimitive,
  NotBasisExtending,
  Unsupported,
  SideCondition,
  Infeasible,
  CatalogDefect,
};

using Diagnostics = std::vector<std::pair<std::string, std::string>>;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, Diagnostics diagnostics = {})
      : std::runtime_error(message), code_(code), diagnostics_(std::move(diagnostics)) {}

  ErrorCode code() const { return code_; }
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  ErrorCode code_;
  Diagnostics diagnostics_;
};

const char* error_code_name(ErrorCode code);

// 1 = negative verdict, 2 = input error, 3 = unsupported configuration.
int exit_code_for(ErrorCode code);

}  // namespace tb
