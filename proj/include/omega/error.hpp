#pragma once

#include <stdexcept>

namespace omega {

// Malformed input data or invalid user-supplied parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical breakdown: non-SPD matrix in PCG, failed preconditioner, ...
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Size caps on oracle / all-pairs routines, exhausted retry budgets.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace omega
