#pragma once

#include <stdexcept>
#include <string>

namespace fukaya {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invariant violated while constructing a value (bad shapes, bad data).
struct ValidationError : Error {
  using Error::Error;
};

// Malformed JSON input.
struct ParseError : Error {
  using Error::Error;
};

struct ZeroDivisionError : Error {
  using Error::Error;
};

// Leading coefficient too small to invert reliably.
struct IllConditionedError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ArityMismatchError : Error {
  using Error::Error;
};

struct MissingELSystemError : Error {
  using Error::Error;
};

// Structure constants whose output degree breaks the degree rule.
struct DegreeRuleError : Error {
  using Error::Error;
};

// Linear congruence system for the holonomy character has no solution.
struct InconsistentSystemError : Error {
  using Error::Error;
};

struct NoEnergyGapError : Error {
  using Error::Error;
};

struct OutsideDomainError : Error {
  using Error::Error;
};

struct CharacterMismatchError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct BoundaryPointError : Error {
  using Error::Error;
};

struct UnknownSuiteError : Error {
  using Error::Error;
};

}  // namespace fukaya
