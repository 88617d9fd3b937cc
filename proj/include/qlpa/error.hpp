#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qlpa {

/// Base class for every domain error raised by the library. `kind()` is a
/// stable machine-readable tag used by the CLI's structured error output.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidQuiver : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_quiver"; }
};

class UnknownId : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unknown_id"; }
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

/// A bounded search would exceed its work budget.
class ResourceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource"; }
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "field_mismatch"; }
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  std::size_t position_;
};

/// Raised when a verified construction fails in a way the underlying theory
/// rules out. Seeing one means a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "internal"; }
};

}  // namespace qlpa
