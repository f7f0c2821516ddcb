#pragma once

#include <stdexcept>
#include <string>

namespace ordlab {

enum class ErrorKind {
  Overflow,
  Cycle,
  BudgetExceeded,
  Unavoidable,
  NotInD,
  WitnessInvalid,
  SplittingDetected,
  PreconditionFailed,
  NoSeparator,
  Empty,
  Parse,
  Usage,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Overflow: return "OVERFLOW";
    case ErrorKind::Cycle: return "CYCLE";
    case ErrorKind::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorKind::Unavoidable: return "UNAVOIDABLE";
    case ErrorKind::NotInD: return "NOT_IN_D";
    case ErrorKind::WitnessInvalid: return "WITNESS_INVALID";
    case ErrorKind::SplittingDetected: return "SPLITTING_DETECTED";
    case ErrorKind::PreconditionFailed: return "PRECONDITION_FAILED";
    case ErrorKind::NoSeparator: return "NO_SEPARATOR";
    case ErrorKind::Empty: return "EMPTY";
    case ErrorKind::Parse: return "PARSE";
    case ErrorKind::Usage: return "USAGE";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ordlab
