#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stt/syntax/expr.hpp"

namespace stt::syntax {

enum class Tok {
  Ident,
  Directive,  // #def, #postulate, #lang, …; text holds the word without '#'
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Colon,
  ColonEq,
  Comma,
  Arrow,      // →  ->
  MapsTo,     // ↦  |->
  Bar,        // |
  Turnstile,  // ⊢  |-
  Equiv,      // ≡  ===
  Leq,        // ≤  <=
  And,        // ∧  /\  (backslash-slash alias)
  Or,         // ∨  \/
  Top,        // ⊤  TOP
  Bot,        // ⊥  BOT
  Times,      // ×  *
  Sigma,      // Σ  Sigma
  Lambda,     // \  λ
  Eq,         // =
  EqUnder,    // =_{
  ReflUnder,  // refl_{
  Question,
  Point0,     // 0₂  0_2
  Point1,     // 1₂  1_2
  Star,       // *₁  *_1
  CubeUnit,   // 1
  Cube2,      // 2
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

const char* tok_name(Tok t);

struct LexError : std::runtime_error {
  Span span;
  LexError(const std::string& msg, Span s) : std::runtime_error(msg), span(std::move(s)) {}
};

// Splits UTF-8 source text into tokens. The trailing End token is not
// included. Unicode operators and their ASCII aliases map to the same kind.
std::vector<Token> tokenize(std::string_view text, const std::string& file = "<input>");

}  // namespace stt::syntax
