#ifndef CUBINC_ERRORS_HPP_
#define CUBINC_ERRORS_HPP_

#include <stdexcept>

namespace cubinc {

// Operands built over different moduli, or an otherwise inconsistent setup.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An oracle or enumeration was asked to run past its size guard. Treated as a
// configuration error by callers, never as a skipped check.
class GuardExceeded : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace cubinc

#endif  // CUBINC_ERRORS_HPP_
