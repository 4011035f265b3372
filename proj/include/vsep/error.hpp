#pragma once

#include <stdexcept>
#include <string>

namespace vsep {

enum class ErrorCode {
  IndeterminateForm,
  NotSquare,
  ZeroPolynomial,
  DimensionLimit,
  FmBlowup,
  ParseError,
  SemanticError,
  AlphabetMismatch,
  Arity,
  DisconnectedPath,
  NodeCapExceeded,
  CycleCapExceeded,
  SubsetCapExceeded,
  BoundOverflow,
  Internal,
};

const char* error_code_name(ErrorCode c);

/// Structured error: every throw site names a code so the CLI can map
/// resource caps to exit code 2 and everything else to exit 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

  bool is_resource_cap() const {
    return code_ == ErrorCode::DimensionLimit || code_ == ErrorCode::FmBlowup ||
           code_ == ErrorCode::NodeCapExceeded || code_ == ErrorCode::CycleCapExceeded ||
           code_ == ErrorCode::SubsetCapExceeded;
  }

 private:
  ErrorCode code_;
};

}  // namespace vsep
