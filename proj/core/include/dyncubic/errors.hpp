#pragma once

#include <stdexcept>
#include <string>

namespace dyncubic {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent arguments (mismatched variable orders, bad sizes, ...).
struct ArgumentError : Error {
  using Error::Error;
};

// Operations mixing elements of incompatible coefficient fields, or division by a
// zero divisor in a quotient ring.
struct FieldError : Error {
  using Error::Error;
};

// Exact division requested where the divisor does not divide the dividend.
struct DivisionError : Error {
  using Error::Error;
};

// Degree or shape preconditions violated (wrong cycle length, degenerate input, ...).
struct DegreeError : Error {
  using Error::Error;
};

// Evaluation of a rational function at a pole.
struct PoleError : Error {
  using Error::Error;
};

// A claimed witness (point on a curve, section of a family, ...) fails its defining
// equations.
struct WitnessError : Error {
  using Error::Error;
};

// An identity that the library promises to verify turned out false.
struct VerificationError : Error {
  using Error::Error;
};

// A normalization (marked-cycle normal form, minimal model, ...) does not exist for
// the given input.
struct NormalizationError : Error {
  using Error::Error;
};

// Linear algebra on a singular matrix where an invertible one is required.
struct SingularMatrixError : Error {
  using Error::Error;
};

// A probabilistic or search-based routine could not reach a verdict.
struct InconclusiveError : Error {
  using Error::Error;
};

// Bad configuration input (CLI/config file).
struct ConfigError : Error {
  using Error::Error;
};

// Internal invariant violation; indicates a library bug.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace dyncubic
