#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace newtok {

enum class ErrorCode {
  LengthMismatch,
  NotSubgroup,
  NegativeLevel,
  OutOfRange,
  EmptySemigroup,
  InsufficientSamples,
  EmptySet,
  DimensionMismatch,
  UnsupportedDimension,
  ZeroPoly,
  ZeroPiece,
  AllZero,
  KappaUndefined,
  Inconsistent,
  Unstable,
  EmptySlice,
  IndexOutOfRange,
  NotInjective,
  NotSubalgebra,
  SchemaError,
  BadRational,
  BadExponent,
};

/// Machine-readable name, e.g. "NOT_SUBGROUP".
std::string_view error_name(ErrorCode code);

/// True for errors caused by malformed input rather than by a refused computation.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A validation error located by a JSON pointer into the input document.
class DocumentError : public Error {
 public:
  DocumentError(ErrorCode code, std::string pointer, const std::string& what)
      : Error(code, (pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace newtok
