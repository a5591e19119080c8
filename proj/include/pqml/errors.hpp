#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqml {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position()` is a 0-based character offset.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Invalid frame / family / model construction.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// Evaluation precondition failed (unbound variable, inadmissible value).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the configured size limit.
class GuardrailError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition of an algorithm does not hold for the given inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace pqml
