#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppcalc {

enum class ErrorKind {
  DimensionMismatch,
  RingMismatch,
  SideMismatch,
  Unsupported,
  Parse,
  CapExceeded,
  Malformed,
  Precondition,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::RingMismatch: return "ring-mismatch";
    case ErrorKind::SideMismatch: return "side-mismatch";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Malformed: return "malformed-input";
    case ErrorKind::Precondition: return "precondition";
  }
  return "error";
}

/// Domain error raised by every ppcalc operation. The CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse error carrying the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorKind::Parse, "at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ppcalc
