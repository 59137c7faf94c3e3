#pragma once

#include <stdexcept>
#include <string>

namespace ccuc {

/// Malformed or inconsistent input data (files, dimensions, descriptors).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Backend missing, infeasible model, or a solve that produced no usable point.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ccuc
