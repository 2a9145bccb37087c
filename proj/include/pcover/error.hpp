#pragma once

#include <stdexcept>
#include <string>

namespace pcover {

// Malformed or invariant-violating input (instance files, covers, params).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Numerical trouble or an exhausted iteration budget inside a solver.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pcover
