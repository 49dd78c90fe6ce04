#pragma once

#include <string>

#include "stt/syntax/expr.hpp"

namespace stt::syntax {

// Renders an expression with Unicode operators and minimal parentheses.
std::string pretty_print(const ExprPtr& e);
std::string pretty_print(const Pattern& p);
std::string pretty_print(const Declaration& d);
std::string pretty_print(const SourceModule& m);

// Structural S-expression dump, e.g. `(Pi t (Var I) (Var A) _)`.
std::string dump_ast(const ExprPtr& e);
std::string dump_ast(const SourceModule& m);

}  // namespace stt::syntax
