#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kclub {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Raised when an encoding would exceed the configured clause cap.
class EncodingTooLarge : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised for unsatisfiable hard parts, broken solver output or failed
/// subprocesses.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when the connected-graph generator runs out of attempts.
class GenerationExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a reported solution fails k-club verification.
class VerificationError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace kclub
