#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fojeffreys {

/// Bad caller input: non-finite values, empty signals, out-of-range options.
class InvalidArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (t <= 0, omega <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at a pole of the gamma function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A dataset or file violates a structural invariant (ordering, point count).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& detail, std::size_t line)
      : std::runtime_error(detail + " (line " + std::to_string(line) + ")"), detail_(detail), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Same error with `prefix` (typically a file name) in front of the message.
  ParseError with_context(const std::string& prefix) const { return ParseError(prefix + detail_, line_); }

 private:
  std::string detail_;
  std::size_t line_;
};

/// Time stepping produced a non-finite or runaway sample.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t sample_index)
      : std::runtime_error(what + " at sample " + std::to_string(sample_index)),
        sample_index_(sample_index) {}
  std::size_t sample_index() const noexcept { return sample_index_; }

 private:
  std::size_t sample_index_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fojeffreys
