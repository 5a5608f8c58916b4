#pragma once

#include <stdexcept>
#include <string>

namespace fslib {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument or parameter is out of range or missing
/// (including a supervised method invoked without labels).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input data is malformed: parse failures, non-finite entries, ragged rows,
/// label/sample count mismatch, I/O failures.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed: unbounded or infeasible LP where an optimum
/// is guaranteed, eigensolver non-convergence.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace fslib
