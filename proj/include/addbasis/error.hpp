#pragma once

#include <stdexcept>
#include <string>

namespace addbasis {

enum class ErrorKind {
  Syntax,        // malformed set expression / subsequence / number
  Semantic,      // well-formed but violates a parameter constraint
  Overflow,      // 64-bit natural arithmetic would wrap
  BoundCeiling,  // requested prefix exceeds the configured memory ceiling
  BoundMismatch, // operand prefixes too short for the requested bound
  Precondition,  // any other violated precondition
  Verification,  // a certificate failed independent re-verification
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& msg)
      : Error(ErrorKind::Syntax, "at byte " + std::to_string(offset) + ": " + msg), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace addbasis
