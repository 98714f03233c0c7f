#include "solvlie/errors.hpp"

namespace solvlie {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::IncompatibleRadicands: return "IncompatibleRadicands";
    case ErrorKind::NotRealValued: return "NotRealValued";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::ParameterizedEntriesUnsupported: return "ParameterizedEntriesUnsupported";
    case ErrorKind::IrreducibleDegreeTooHigh: return "IrreducibleDegreeTooHigh";
    case ErrorKind::NonCommutingFamily: return "NonCommutingFamily";
    case ErrorKind::NotASubalgebra: return "NotASubalgebra";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::AlreadyComplex: return "AlreadyComplex";
    case ErrorKind::NotSolvable: return "NotSolvable";
    case ErrorKind::ParameterizedQuotientUnsupported: return "ParameterizedQuotientUnsupported";
    case ErrorKind::AmbiguousUnderConstraints: return "AmbiguousUnderConstraints";
    case ErrorKind::MixedGeneratorUnsupported: return "MixedGeneratorUnsupported";
    case ErrorKind::ChainStuck: return "ChainStuck";
    case ErrorKind::NonDiagonalizableTorus: return "NonDiagonalizableTorus";
    case ErrorKind::NonRationalWeights: return "NonRationalWeights";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::JacobiViolation: return "JacobiViolation";
    case ErrorKind::DuplicateBracket: return "DuplicateBracket";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_field_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IncompatibleRadicands:
    case ErrorKind::ParameterizedEntriesUnsupported:
    case ErrorKind::IrreducibleDegreeTooHigh:
    case ErrorKind::ParameterizedQuotientUnsupported:
    case ErrorKind::MixedGeneratorUnsupported:
    case ErrorKind::NonRationalWeights:
    case ErrorKind::NonDiagonalizableTorus:
      return true;
    default:
      return false;
  }
}

}  // namespace solvlie
