#pragma once

#include <stdexcept>
#include <string>

namespace hbc {

// Malformed or inconsistent input data (files, ids, weights).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solver failures: non-convergence, LP breakdown, degenerate vectors.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hbc
