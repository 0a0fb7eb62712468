#pragma once

#include <stdexcept>
#include <string>

namespace gsieve {

// Malformed or out-of-contract input (bad dimensions, a0 not interior, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact enumeration would exceed the configured dimension or size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sampler or solver ran out of its configured budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant that must hold deterministically was observed to fail.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gsieve
