#pragma once

#include <stdexcept>
#include <string>

#include "uptrans/term.hpp"

namespace uptrans {

enum class ErrorKind {
  UnboundVariable,
  UnknownConstant,
  NotAFunction,
  NotAType,
  TypeMismatch,
  ConversionFailure,
  BudgetExceeded,
  LevelMismatch,
  IllFormedTelescope,
  UnrelatedConstant,
  UnresolvedConstant,
  DuplicateRelation,
  IllTyped,
  MissingPrefix,
  NotALiteral,
  PreludeIllTyped,
  ParseError,
  Usage,
};

const char* error_kind_name(ErrorKind k);

// One exception type for every failure; `kind` says which. The term fields
// are filled when they make sense for the kind (offending subterm,
// expected and actual types).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message) : std::runtime_error(message), kind(kind) {}

  ErrorKind kind;
  std::string name;      // constant or declaration involved
  Term subject;          // offending term
  Term expected;
  Term actual;
  size_t position = 0;   // telescope position
  size_t line = 0, column = 0;
};

inline Error make_error(ErrorKind kind, std::string message, std::string name = {}) {
  Error e(kind, std::move(message));
  e.name = std::move(name);
  return e;
}

}  // namespace uptrans
