#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace floorgraph {

enum class ErrorCode {
  InvalidBoundary,
  DegenerateDirection,
  Format,
  VersionMismatch,
  InvalidGraph,
  InvalidEdit,
  InfeasibleBoundary,
  NonFiniteLoss,
  InvalidArgument,
  UnknownSession,
  UnknownRecord,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Exception type thrown by every module. The code is what callers branch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace floorgraph
