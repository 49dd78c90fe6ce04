#include "stt/syntax/lexer.hpp"

namespace stt::syntax {

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Directive: return "directive";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::ColonEq: return "':='";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'→'";
    case Tok::MapsTo: return "'↦'";
    case Tok::Bar: return "'|'";
    case Tok::Turnstile: return "'⊢'";
    case Tok::Equiv: return "'≡'";
    case Tok::Leq: return "'≤'";
    case Tok::And: return "'∧'";
    case Tok::Or: return "'∨'";
    case Tok::Top: return "'⊤'";
    case Tok::Bot: return "'⊥'";
    case Tok::Times: return "'×'";
    case Tok::Sigma: return "'Σ'";
    case Tok::Lambda: return "'\\'";
    case Tok::Eq: return "'='";
    case Tok::EqUnder: return "'=_{'";
    case Tok::ReflUnder: return "'refl_{'";
    case Tok::Question: return "'?'";
    case Tok::Point0: return "'0₂'";
    case Tok::Point1: return "'1₂'";
    case Tok::Star: return "'*₁'";
    case Tok::CubeUnit: return "'1'";
    case Tok::Cube2: return "'2'";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

struct CodePoint {
  char32_t cp;
  std::size_t offset;  // byte offset into source
  int line;
  int col;
};

std::vector<CodePoint> decode(std::string_view text, const std::string& file) {
  std::vector<CodePoint> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    char32_t cp;
    std::size_t len;
    if (c < 0x80) {
      cp = c;
      len = 1;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      len = 2;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      len = 3;
    } else if ((c >> 3) == 0x1E) {
      cp = c & 0x07;
      len = 4;
    } else {
      throw LexError("invalid UTF-8 byte", Span{file, line, col, line, col});
    }
    if (i + len > text.size()) throw LexError("truncated UTF-8 sequence", Span{file, line, col, line, col});
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc >> 6) != 0x2) throw LexError("invalid UTF-8 continuation byte", Span{file, line, col, line, col});
      cp = (cp << 6) | (cc & 0x3F);
    }
    out.push_back({cp, i, line, col});
    if (cp == U'\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    i += len;
  }
  return out;
}

bool is_operator_cp(char32_t c) {
  switch (c) {
    case U'→': case U'↦': case U'≡': case U'≤': case U'∧': case U'∨': case U'⊤':
    case U'⊥': case U'×': case U'Σ': case U'λ': case U'⊢':
      return true;
    default:
      return false;
  }
}

bool is_space(char32_t c) { return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == 0xA0; }

bool ident_start(char32_t c) {
  if (c < 0x80) return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || c == U'_';
  return !is_operator_cp(c) && !is_space(c);
}

bool ident_continue(char32_t c) {
  return ident_start(c) || (c >= U'0' && c <= U'9') || c == U'\'' || c == U'-';
}

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)), cps_(decode(text, file_)) {}

  std::vector<Token> run() {
    std::vector<Token> toks;
    while (pos_ < cps_.size()) {
      char32_t c = cur();
      if (is_space(c)) {
        ++pos_;
        continue;
      }
      if (c == U'-' && peek(1) == U'-') {
        while (pos_ < cps_.size() && cur() != U'\n') ++pos_;
        continue;
      }
      if (c == U'{' && peek(1) == U'-') {
        skip_block_comment();
        continue;
      }
      toks.push_back(next_token());
    }
    return toks;
  }

 private:
  char32_t cur() const { return cps_[pos_].cp; }
  char32_t peek(std::size_t k) const { return pos_ + k < cps_.size() ? cps_[pos_ + k].cp : 0; }

  Span span_from(std::size_t start) const {
    const auto& a = cps_[start];
    const auto& b = cps_[pos_ - 1];
    return Span{file_, a.line, a.col, b.line, b.col + 1};
  }

  std::string text_from(std::size_t start) const {
    std::size_t begin = cps_[start].offset;
    std::size_t end = pos_ < cps_.size() ? cps_[pos_].offset : text_.size();
    return std::string(text_.substr(begin, end - begin));
  }

  void skip_block_comment() {
    std::size_t start = pos_;
    pos_ += 2;
    while (pos_ < cps_.size()) {
      if (cur() == U'-' && peek(1) == U'}') {
        pos_ += 2;
        return;
      }
      ++pos_;
    }
    pos_ = start + 1;
    throw LexError("unterminated block comment", span_from(start));
  }

  Token make(Tok k, std::size_t start) { return Token{k, text_from(start), span_from(start)}; }

  Token single(Tok k, std::size_t n = 1) {
    std::size_t start = pos_;
    pos_ += n;
    return make(k, start);
  }

  Token next_token() {
    std::size_t start = pos_;
    char32_t c = cur();
    switch (c) {
      case U'(': return single(Tok::LParen);
      case U')': return single(Tok::RParen);
      case U'[': return single(Tok::LBracket);
      case U']': return single(Tok::RBracket);
      case U'{': return single(Tok::LBrace);
      case U'}': return single(Tok::RBrace);
      case U',': return single(Tok::Comma);
      case U'?': return single(Tok::Question);
      case U'→': return single(Tok::Arrow);
      case U'↦': return single(Tok::MapsTo);
      case U'≡': return single(Tok::Equiv);
      case U'≤': return single(Tok::Leq);
      case U'∧': return single(Tok::And);
      case U'∨': return single(Tok::Or);
      case U'⊤': return single(Tok::Top);
      case U'⊥': return single(Tok::Bot);
      case U'×': return single(Tok::Times);
      case U'Σ': return single(Tok::Sigma);
      case U'λ': return single(Tok::Lambda);
      case U'⊢': return single(Tok::Turnstile);
      case U':': return peek(1) == U'=' ? single(Tok::ColonEq, 2) : single(Tok::Colon);
      case U'|':
        if (peek(1) == U'-' && peek(2) == U'>') return single(Tok::MapsTo, 3);
        if (peek(1) == U'-') return single(Tok::Turnstile, 2);
        return single(Tok::Bar);
      case U'-':
        if (peek(1) == U'>') return single(Tok::Arrow, 2);
        break;
      case U'=':
        if (peek(1) == U'=' && peek(2) == U'=') return single(Tok::Equiv, 3);
        if (peek(1) == U'_' && peek(2) == U'{') return single(Tok::EqUnder, 3);
        return single(Tok::Eq);
      case U'<':
        if (peek(1) == U'=') return single(Tok::Leq, 2);
        break;
      case U'/':
        if (peek(1) == U'\\') return single(Tok::And, 2);
        break;
      case U'\\':
        if (peek(1) == U'/') return single(Tok::Or, 2);
        return single(Tok::Lambda);
      case U'*':
        if (peek(1) == U'₁') return single(Tok::Star, 2);
        if (peek(1) == U'_' && peek(2) == U'1') return single(Tok::Star, 3);
        return single(Tok::Times);
      case U'0':
      case U'1':
      case U'2': {
        Tok point = c == U'0' ? Tok::Point0 : Tok::Point1;
        if (c != U'2' && peek(1) == U'₂') return single(point, 2);
        if (c != U'2' && peek(1) == U'_' && peek(2) == U'2') return single(point, 3);
        if (c == U'1') return single(Tok::CubeUnit);
        if (c == U'2') return single(Tok::Cube2);
        break;
      }
      case U'#': {
        ++pos_;
        while (pos_ < cps_.size() && ident_continue(cur())) ++pos_;
        if (pos_ == start + 1) throw LexError("expected directive name after '#'", span_from(start));
        Token t = make(Tok::Directive, start);
        t.text = t.text.substr(1);
        return t;
      }
      default:
        break;
    }
    if (ident_start(c)) return identifier(start);
    pos_ = start + 1;
    throw LexError("unexpected character", span_from(start));
  }

  Token identifier(std::size_t start) {
    ++pos_;
    while (pos_ < cps_.size()) {
      char32_t c = cur();
      if (c == U'-') {
        // '-' only continues an identifier when followed by another identifier character.
        char32_t n = peek(1);
        if (n == U'-' || n == U'>' || !ident_continue(n)) break;
      } else if (!ident_continue(c)) {
        break;
      }
      ++pos_;
    }
    Token t = make(Tok::Ident, start);
    if (t.text == "refl_" && pos_ < cps_.size() && cur() == U'{') {
      ++pos_;
      return make(Tok::ReflUnder, start);
    }
    if (t.text == "TOP") t.kind = Tok::Top;
    else if (t.text == "BOT") t.kind = Tok::Bot;
    else if (t.text == "Sigma") t.kind = Tok::Sigma;
    return t;
  }

  std::string_view text_;
  std::string file_;
  std::vector<CodePoint> cps_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const std::string& file) { return Lexer(text, file).run(); }

}  // namespace stt::syntax
