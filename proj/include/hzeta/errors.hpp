#ifndef HZETA_ERRORS_HPP
#define HZETA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hzeta {

// Argument outside the mathematical domain of an operation (log of a
// nonpositive interval, a height below 2*pi, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The working precision could not bound a result tightly enough.
class InsufficientPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A zero bracket could not be refined to the requested radius.
class RefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Turing-window certification was inconclusive.
class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation needs a certified table (or a height it covers).
class UncertifiedTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hzeta

#endif  // HZETA_ERRORS_HPP
