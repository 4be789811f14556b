#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace couniv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (graph documents, element expressions, phases).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  /// 1-based line of the offending declaration, 0 when not line-oriented.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A structurally invalid object: dangling endpoints, broken composability,
/// a set that is not a cutting set, unknown identifiers.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what), detail_(what) {}
  /// An error attributed to a declaration of a text document.
  ValidationError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  /// The message without the line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_ = 0;
  std::string detail_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed its configured bound.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Coefficient arithmetic that the active exactness mode cannot represent.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A mathematical claim that must hold on every finite instance failed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace couniv
