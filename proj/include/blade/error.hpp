#pragma once

#include <stdexcept>
#include <string>

namespace blade {

// Invalid user-supplied parameters (lengths, rates, flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Request exceeds what an exact method can handle (state-space size etc).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hub wire-protocol and candidate-exchange failures.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blade
