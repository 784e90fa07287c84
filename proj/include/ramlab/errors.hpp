#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by density() and friends when q has a repeated prime factor.
class NotSquarefreeError : public DomainError {
 public:
  NotSquarefreeError(std::uint64_t q, std::uint64_t prime)
      : DomainError("q = " + std::to_string(q) + " is not squarefree: " +
                    std::to_string(prime) + "^2 divides it"),
        prime_(prime) {}

  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t prime_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ramlab
