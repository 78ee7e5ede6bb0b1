#include "dyadic/errors.hpp"

namespace dyadic {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InsufficientPrecision: return "insufficient-precision";
    case ErrorKind::PrecisionLoss: return "precision-loss";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotEisenstein: return "not-eisenstein";
    case ErrorKind::DegenerateClass: return "degenerate-class";
    case ErrorKind::UnramifiedClass: return "unramified-class";
    case ErrorKind::ModulusCapExceeded: return "modulus-cap-exceeded";
    case ErrorKind::IsomorphicFields: return "isomorphic-fields";
    case ErrorKind::NotIsomorphic: return "not-isomorphic";
    case ErrorKind::Nonsemisimple: return "nonsemisimple";
    case ErrorKind::OutOfScopeOrbit: return "out-of-scope-orbit";
    case ErrorKind::InvalidKey: return "invalid-key";
    case ErrorKind::StarNotCovered: return "star-not-covered";
    case ErrorKind::StateSpaceTooLarge: return "state-space-too-large";
    case ErrorKind::ZeroSamples: return "zero-samples";
    case ErrorKind::RoundingInconsistency: return "rounding-inconsistency";
    case ErrorKind::DegeneratePair: return "degenerate-pair";
    case ErrorKind::NotFundamental: return "not-fundamental";
    case ErrorKind::InternalMismatch: return "internal-mismatch";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

}  // namespace dyadic
