#pragma once

#include <stdexcept>
#include <string>

namespace duhamel {

/// Failure categories; each maps onto a CLI exit code.
enum class ErrorKind {
  Config,     // invalid input, schema or precondition violation (exit 2)
  Domain,     // argument outside the mathematical domain, e.g. t <= 0 (exit 2)
  Numerical,  // bound violation, non-convergence, positivity loss (exit 3)
  Oracle,     // disagreement with an independent oracle (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

class OracleError : public Error {
 public:
  explicit OracleError(const std::string& what) : Error(ErrorKind::Oracle, what) {}
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::Domain:
      return 2;
    case ErrorKind::Numerical:
      return 3;
    case ErrorKind::Oracle:
      return 4;
  }
  return 1;
}

}  // namespace duhamel
