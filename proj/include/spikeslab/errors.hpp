#pragma once

#include <stdexcept>
#include <string>

namespace spikeslab {

// Invalid user-supplied data or configuration (bad CSV, constant column,
// inconsistent dimensions).  Maps to CLI exit code 2.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file: the message pinpoints the offending row and column.
// Maps to CLI exit code 2 like any other bad input.
class parse_error : public validation_error {
 public:
  explicit parse_error(const std::string& what) : validation_error(what) {}
};

// A numerical routine failed to converge or produced a non-finite value
// (rejection cap exceeded, quadrature breakdown, non-finite weight).
// Maps to CLI exit code 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// The spike/slab boundary-matching equation has no solution for the
// requested delta and slab hyperparameters.
class calibration_error : public numerical_error {
 public:
  explicit calibration_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace spikeslab
