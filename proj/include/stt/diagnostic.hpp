#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "stt/syntax/expr.hpp"

namespace stt {

enum class Severity { Error, Warning };

// Stable codes:
//   E-PARSE E-DUP E-TYPE-MISMATCH E-BOUNDARY E-TOPE E-TOPE-BOUND E-USES
//   E-UNBOUND E-NOT-FUNCTION E-NOT-PAIR E-CANNOT-INFER E-NOT-A-TYPE E-HOLE
//   E-SECTION W-UNUSED-USES
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  syntax::Span span;
  std::optional<std::string> expected;
  std::optional<std::string> actual;
};

struct CheckError : std::runtime_error {
  Diagnostic diag;
  explicit CheckError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
};

}  // namespace stt
