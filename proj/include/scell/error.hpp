#pragma once

#include <stdexcept>
#include <string>

namespace scell {

enum class Err {
  NotPrime,
  NoIrreducible,
  DivisionByZero,
  NotIrreducibleContext,
  ExtensionBudgetExceeded,
  MixedField,
  MixedRamification,
  PrecisionZero,
  IndeterminateValuation,
  NotMonic,
  NotSquare,
  NotTopologicallyNilpotent,
  NotSquarefreeToPrecision,
  InsufficientPrecision,
  LiftDiverged,
  NotRegularSemisimple,
  NonBijective,
  IncompleteResidues,
  WeightNotZero,
  ModeMismatch,
  InconsistentInput,
  NonIntegral,
  Uncertified,
  ResampleLimit,
  CacheCorrupt,
  Internal,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NotPrime: return "NotPrime";
    case Err::NoIrreducible: return "NoIrreducible";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::NotIrreducibleContext: return "NotIrreducibleContext";
    case Err::ExtensionBudgetExceeded: return "ExtensionBudgetExceeded";
    case Err::MixedField: return "MixedField";
    case Err::MixedRamification: return "MixedRamification";
    case Err::PrecisionZero: return "PrecisionZero";
    case Err::IndeterminateValuation: return "IndeterminateValuation";
    case Err::NotMonic: return "NotMonic";
    case Err::NotSquare: return "NotSquare";
    case Err::NotTopologicallyNilpotent: return "NotTopologicallyNilpotent";
    case Err::NotSquarefreeToPrecision: return "NotSquarefreeToPrecision";
    case Err::InsufficientPrecision: return "InsufficientPrecision";
    case Err::LiftDiverged: return "LiftDiverged";
    case Err::NotRegularSemisimple: return "NotRegularSemisimple";
    case Err::NonBijective: return "NonBijective";
    case Err::IncompleteResidues: return "IncompleteResidues";
    case Err::WeightNotZero: return "WeightNotZero";
    case Err::ModeMismatch: return "ModeMismatch";
    case Err::InconsistentInput: return "InconsistentInput";
    case Err::NonIntegral: return "NonIntegral";
    case Err::Uncertified: return "Uncertified";
    case Err::ResampleLimit: return "ResampleLimit";
    case Err::CacheCorrupt: return "CacheCorrupt";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

class ScellError : public std::runtime_error {
 public:
  ScellError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw ScellError(code, what);
}

}  // namespace scell
