#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rightham {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnboundIdentifier, BadDivision, ExponentOverflow };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : Error("position " + std::to_string(position) + ": " + message),
        kind_(kind),
        position_(position) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// A polynomial operation produced a total degree above the context budget,
/// or a term count above the context term cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands belong to different phase-space contexts") {}
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace rightham
