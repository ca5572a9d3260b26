#pragma once

#include <stdexcept>
#include <string>

namespace tsdec {

// Thrown when an internal self-check fails. Callers treat this as a bug,
// never as recoverable input error (CLI maps it to exit code 3).
struct InvariantViolation : std::logic_error {
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

enum class CodecErrorKind {
  BadVersion,
  HeaderMismatch,
  Truncated,
  TrailingBytes,
  OddCount,
  AddressOutOfRange,
  AddressNotAscending,
};

struct CodecError : std::runtime_error {
  CodecError(CodecErrorKind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  CodecErrorKind kind;
};

}  // namespace tsdec
