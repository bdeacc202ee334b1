#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbx {

enum class ErrorCode {
  ParseError,
  InvariantViolation,
  DomainMismatch,
  InvalidGeneratorSet,
  NotSwapPair,
  DegenerateKernel,
  GeneratorNotInSet,
  OmegaNotReplaceable,
  InfeasibleInput,
  InfeasibleStart,
  DomainTooLarge,
  IOError,
};

std::string_view to_string(ErrorCode code);

// All recoverable failures in the library are reported through this type;
// the code lets callers (notably the CLI) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pbx
