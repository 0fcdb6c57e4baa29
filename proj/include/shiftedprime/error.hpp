#pragma once

#include <stdexcept>
#include <string>

namespace shiftedprime {

enum class ErrorKind {
  LimitExceeded,
  InvalidArgument,
  NotCoprime,
  NoPrimitiveRoot,
  ParseError,
  MissingCompletenessHeader,
  BetaOutOfRange,
  IncompleteData,
  LemmaViolation,
  RangeViolation,
  ModulusMismatch,
  GridTooSmall,
  HypothesisViolation,
  ElementOutOfRange,
  BudgetExhausted,
  Io,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LimitExceeded: return "limit-exceeded";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotCoprime: return "not-coprime";
    case ErrorKind::NoPrimitiveRoot: return "no-primitive-root";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::MissingCompletenessHeader: return "missing-completeness-header";
    case ErrorKind::BetaOutOfRange: return "beta-out-of-range";
    case ErrorKind::IncompleteData: return "incomplete-data";
    case ErrorKind::LemmaViolation: return "lemma-violation";
    case ErrorKind::RangeViolation: return "range-violation";
    case ErrorKind::ModulusMismatch: return "modulus-mismatch";
    case ErrorKind::GridTooSmall: return "grid-too-small";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::ElementOutOfRange: return "element-out-of-range";
    case ErrorKind::BudgetExhausted: return "budget-exhausted";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace shiftedprime
