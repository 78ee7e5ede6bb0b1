#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

enum class ErrorKind {
  InsufficientPrecision,
  PrecisionLoss,
  InvalidArgument,
  NotEisenstein,
  DegenerateClass,
  UnramifiedClass,
  ModulusCapExceeded,
  IsomorphicFields,
  NotIsomorphic,
  Nonsemisimple,
  OutOfScopeOrbit,
  InvalidKey,
  StarNotCovered,
  StateSpaceTooLarge,
  ZeroSamples,
  RoundingInconsistency,
  DegeneratePair,
  NotFundamental,
  InternalMismatch,
};

/// Kebab-case name used in CLI diagnostics ("isomorphic-fields", ...).
const char* error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dyadic
