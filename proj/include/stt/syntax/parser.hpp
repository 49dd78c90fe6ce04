#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stt/syntax/expr.hpp"
#include "stt/syntax/lexer.hpp"

namespace stt::syntax {

struct ParseError : std::runtime_error {
  Span span;
  std::vector<std::string> expected;
  ParseError(const std::string& msg, Span s, std::vector<std::string> exp = {})
      : std::runtime_error(msg), span(std::move(s)), expected(std::move(exp)) {}
};

// Parses a whole source file. Lexical errors are reported as ParseError.
// Unbalanced or mismatched `#section`/`#end` pairs are parse errors.
SourceModule parse_module(std::string_view text, const std::string& file = "<input>");

// Parses a single expression (the whole input must be consumed).
ExprPtr parse_expr(std::string_view text, const std::string& file = "<input>");

// Parses from an existing token stream; `pos` is advanced past the expression.
ExprPtr parse_expr_tokens(const std::vector<Token>& toks, std::size_t& pos);

}  // namespace stt::syntax
