#include "stt/syntax/parser.hpp"

#include <optional>

namespace stt::syntax {

namespace {

struct BinderGroup {
  std::vector<Pattern> patterns;
  ExprPtr type;
  ExprPtr tope;  // `(t : I | φ)`, may be null
  Span span;
};

class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::size_t pos, std::string file)
      : toks_(toks), pos_(pos), file_(std::move(file)) {}

  std::size_t pos() const { return pos_; }

  SourceModule module() {
    SourceModule m;
    std::vector<std::pair<std::string, Span>> sections;
    while (!at(Tok::End)) {
      Declaration d = declaration();
      if (d.kind == DeclKind::Lang) {
        if (m.lang.empty()) m.lang = d.name;
        continue;
      }
      if (d.kind == DeclKind::SectionBegin) {
        sections.emplace_back(d.name, d.span);
      } else if (d.kind == DeclKind::SectionEnd) {
        if (sections.empty()) throw ParseError("#end without matching #section", d.span);
        if (!d.name.empty() && !sections.back().first.empty() && d.name != sections.back().first)
          throw ParseError("#end " + d.name + " does not match #section " + sections.back().first, d.span);
        if (d.name.empty()) d.name = sections.back().first;
        sections.pop_back();
      }
      m.decls.push_back(std::move(d));
    }
    if (!sections.empty())
      throw ParseError("#section " + sections.back().first + " is never closed", sections.back().second);
    return m;
  }

  ExprPtr expr0() {
    if (at(Tok::Lambda)) return lambda();
    if (at(Tok::Sigma)) return sigma();
    if (at(Tok::LParen)) {
      std::size_t save = pos_;
      if (auto g = try_binder_group(true)) {
        if (at(Tok::Arrow)) {
          advance();
          ExprPtr cod = expr0();
          return build_pi(*g, cod);
        }
      }
      pos_ = save;
    }
    ExprPtr lhs = expr1();
    if (at(Tok::Arrow)) {
      advance();
      ExprPtr cod = expr0();
      return make_binder(ExprKind::Pi, Pattern::leaf("_"), Span::merge(lhs->span, cod->span), {lhs, cod, nullptr});
    }
    if (at_ident("as")) {
      advance();
      ExprPtr ty = expr0();
      return make(ExprKind::TypeAscription, Span::merge(lhs->span, ty->span), {lhs, ty});
    }
    return lhs;
  }

  Declaration declaration() {
    const Token& t = expect(Tok::Directive, "declaration");
    Declaration d;
    d.span = t.span;
    const std::string& w = t.text;
    if (w == "lang") {
      d.kind = DeclKind::Lang;
      d.name = expect(Tok::Ident, "language version").text;
    } else if (w == "def" || w == "define" || w == "postulate") {
      d.kind = w == "postulate" ? DeclKind::Postulate : DeclKind::Define;
      d.name = expect(Tok::Ident, "name").text;
      if (at_ident("uses")) {
        advance();
        d.has_uses = true;
        expect(Tok::LParen, "'('");
        while (at(Tok::Ident)) d.uses.push_back(advance().text);
        expect(Tok::RParen, "')'");
      }
      while (at(Tok::LParen)) params(d.params);
      expect(Tok::Colon, "':'");
      d.type = expr0();
      if (d.kind == DeclKind::Define) {
        expect(Tok::ColonEq, "':='");
        d.body = expr0();
        d.span = Span::merge(d.span, d.body->span);
      } else {
        d.span = Span::merge(d.span, d.type->span);
      }
    } else if (w == "section" || w == "end") {
      d.kind = w == "section" ? DeclKind::SectionBegin : DeclKind::SectionEnd;
      if (at(Tok::Ident)) d.name = advance().text;
    } else if (w == "variable" || w == "variables" || w == "assume") {
      d.kind = DeclKind::VariableDecl;
      while (at(Tok::Ident)) d.names.push_back(advance().text);
      if (d.names.empty()) fail({"variable name"});
      expect(Tok::Colon, "':'");
      d.type = expr0();
      d.span = Span::merge(d.span, d.type->span);
    } else {
      throw ParseError("unknown directive #" + w, t.span, {"#def", "#postulate", "#section", "#end", "#variable"});
    }
    return d;
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t k = 0) const {
    static const Token end{Tok::End, "", Span{}};
    return pos_ + k < toks_.size() ? toks_[pos_ + k] : end;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_ident(const char* s) const { return at(Tok::Ident) && peek().text == s; }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ < toks_.size()) ++pos_;
    return t;
  }
  Span here() const {
    if (pos_ < toks_.size()) return toks_[pos_].span;
    if (!toks_.empty()) {
      Span s = toks_.back().span;
      s.start_line = s.end_line;
      s.start_col = s.end_col;
      return s;
    }
    return Span{file_, 1, 1, 1, 1};
  }
  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "unexpected ";
    msg += at(Tok::End) ? "end of input" : "'" + peek().text + "'";
    if (!expected.empty()) {
      msg += ", expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " or " : "") + expected[i];
    }
    throw ParseError(msg, here(), std::move(expected));
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail({what});
    return advance();
  }

  // ---- patterns and binders ----
  Pattern pattern() {
    if (at(Tok::Ident)) {
      const Token& t = advance();
      if (t.text != "_" && is_keyword(t.text)) throw ParseError("keyword used as binder", t.span);
      return Pattern::leaf(t.text);
    }
    if (at(Tok::LParen)) {
      advance();
      std::vector<Pattern> items{pattern()};
      while (at(Tok::Comma)) {
        advance();
        items.push_back(pattern());
      }
      expect(Tok::RParen, "')'");
      if (items.size() == 1) return items[0];
      Pattern p = items.back();
      for (std::size_t i = items.size() - 1; i-- > 0;) p = Pattern::pair(items[i], p);
      return p;
    }
    fail({"pattern"});
  }

  // `( p₁ … pₙ : A [| φ] )`; returns nullopt (position unspecified) if the
  // input does not have that shape.
  std::optional<BinderGroup> try_binder_group(bool allow_tope) {
    try {
      BinderGroup g;
      g.span = here();
      expect(Tok::LParen, "'('");
      while (at(Tok::Ident) || at(Tok::LParen)) g.patterns.push_back(pattern());
      if (g.patterns.empty() || !at(Tok::Colon)) return std::nullopt;
      advance();
      g.type = expr0();
      if (allow_tope && at(Tok::Bar)) {
        advance();
        g.tope = expr0();
      }
      g.span = Span::merge(g.span, here());
      expect(Tok::RParen, "')'");
      return g;
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }

  ExprPtr build_pi(const BinderGroup& g, ExprPtr cod) {
    for (auto it = g.patterns.rbegin(); it != g.patterns.rend(); ++it)
      cod = make_binder(ExprKind::Pi, *it, Span::merge(g.span, cod->span), {g.type, cod, g.tope});
    return cod;
  }

  void params(std::vector<Param>& out) {
    std::size_t save = pos_;
    auto g = try_binder_group(false);
    if (!g) {
      pos_ = save;
      // Re-parse without speculation to report a precise error.
      expect(Tok::LParen, "'('");
      while (at(Tok::Ident) || at(Tok::LParen)) pattern();
      expect(Tok::Colon, "':'");
      expr0();
      expect(Tok::RParen, "')'");
      fail({"parameter"});
    }
    for (auto& p : g->patterns) out.push_back(Param{p, g->type, g->span});
  }

  ExprPtr lambda() {
    Span start = advance().span;
    struct LamParam {
      Pattern pat;
      ExprPtr ann;
      ExprPtr tope;
    };
    std::vector<LamParam> ps;
    while (!at(Tok::Arrow)) {
      if (at(Tok::LParen)) {
        std::size_t save = pos_;
        if (auto g = try_binder_group(true)) {
          for (auto& p : g->patterns) ps.push_back({p, g->type, g->tope});
          continue;
        }
        pos_ = save;
      }
      ps.push_back({pattern(), nullptr, nullptr});
    }
    if (ps.empty()) fail({"lambda parameter"});
    advance();
    ExprPtr body = expr0();
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
      ExprPtr ann = it->ann;
      if (ann && it->tope) {
        // `\ (t : I | φ) → e` annotates with the shape {t : I | φ}.
        ann = make_binder(ExprKind::Shape, it->pat, ann->span, {ann, it->tope});
      }
      body = make_binder(ExprKind::Lambda, it->pat, Span::merge(start, body->span), {ann, body});
    }
    return body;
  }

  ExprPtr sigma() {
    Span start = advance().span;
    expect(Tok::LParen, "'('");
    Pattern p = pattern();
    expect(Tok::Colon, "':'");
    ExprPtr dom = expr0();
    expect(Tok::RParen, "')'");
    expect(Tok::Comma, "','");
    ExprPtr cod = expr0();
    return make_binder(ExprKind::Sigma, p, Span::merge(start, cod->span), {dom, cod});
  }

  // ---- operator levels ----
  ExprPtr expr1() {
    ExprPtr lhs = expr2();
    while (at(Tok::Or)) {
      advance();
      ExprPtr rhs = expr2();
      lhs = make(ExprKind::TopeOr, Span::merge(lhs->span, rhs->span), {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr expr2() {
    ExprPtr lhs = expr3();
    while (at(Tok::And)) {
      advance();
      ExprPtr rhs = expr3();
      lhs = make(ExprKind::TopeAnd, Span::merge(lhs->span, rhs->span), {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr expr3() {
    ExprPtr lhs = expr4();
    if (at(Tok::Times)) {
      advance();
      ExprPtr rhs = expr3();
      return make(ExprKind::CubeProduct, Span::merge(lhs->span, rhs->span), {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr expr4() {
    ExprPtr lhs = expr5();
    if (at(Tok::Equiv) || at(Tok::Leq) || at(Tok::Eq)) {
      Tok op = advance().kind;
      ExprPtr rhs = expr5();
      ExprKind k = op == Tok::Equiv ? ExprKind::TopeEq : op == Tok::Leq ? ExprKind::TopeLeq : ExprKind::IdType;
      if (k == ExprKind::IdType) return make(k, Span::merge(lhs->span, rhs->span), {lhs, rhs, nullptr});
      return make(k, Span::merge(lhs->span, rhs->span), {lhs, rhs});
    }
    if (at(Tok::EqUnder)) {
      advance();
      ExprPtr ty = expr0();
      expect(Tok::RBrace, "'}'");
      ExprPtr rhs = expr5();
      return make(ExprKind::IdType, Span::merge(lhs->span, rhs->span), {lhs, rhs, ty});
    }
    return lhs;
  }

  ExprPtr expr5() {
    ExprPtr e = expr6();
    while (at(Tok::LBracket)) {
      advance();
      std::vector<ExprPtr> args{e};
      branches(args);
      Span end = here();
      expect(Tok::RBracket, "']'");
      e = make(ExprKind::Refinement, Span::merge(e->span, end), std::move(args));
    }
    return e;
  }

  void branches(std::vector<ExprPtr>& out) {
    do {
      ExprPtr phi = expr0();
      expect(Tok::MapsTo, "'↦'");
      ExprPtr val = expr0();
      out.push_back(phi);
      out.push_back(val);
    } while (at(Tok::Comma) && (advance(), true));
  }

  bool atom_start() const {
    switch (peek().kind) {
      case Tok::Ident: {
        const std::string& s = peek().text;
        return s != "as" && s != "uses" && s != "first" && s != "second" && s != "π₁" && s != "π₂";
      }
      case Tok::LParen:
      case Tok::LBrace:
      case Tok::Top:
      case Tok::Bot:
      case Tok::CubeUnit:
      case Tok::Cube2:
      case Tok::Point0:
      case Tok::Point1:
      case Tok::Star:
      case Tok::Question:
      case Tok::ReflUnder:
        return true;
      default:
        return false;
    }
  }

  ExprPtr expr6() {
    ExprPtr head;
    if (at_ident("first") || at_ident("second") || at_ident("π₁") || at_ident("π₂")) {
      const Token& t = advance();
      ExprKind k = (t.text == "first" || t.text == "π₁") ? ExprKind::First : ExprKind::Second;
      ExprPtr a = atom();
      head = make(k, Span::merge(t.span, a->span), {a});
    } else {
      head = atom();
    }
    while (atom_start()) {
      ExprPtr a = atom();
      head = make(ExprKind::App, Span::merge(head->span, a->span), {head, a});
    }
    return head;
  }

  ExprPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Top: advance(); return make(ExprKind::TopeTop, t.span);
      case Tok::Bot: advance(); return make(ExprKind::TopeBottom, t.span);
      case Tok::CubeUnit: advance(); return make(ExprKind::CubeUnit, t.span);
      case Tok::Cube2: advance(); return make(ExprKind::Cube2, t.span);
      case Tok::Point0: advance(); return make(ExprKind::Cube2_0, t.span);
      case Tok::Point1: advance(); return make(ExprKind::Cube2_1, t.span);
      case Tok::Star: advance(); return make(ExprKind::CubeUnitStar, t.span);
      case Tok::Question: advance(); return make(ExprKind::Hole, t.span);
      case Tok::ReflUnder: {
        advance();
        ExprPtr term = expr1();
        ExprPtr ty;
        if (at(Tok::Colon)) {
          advance();
          ty = expr0();
        }
        Span end = here();
        expect(Tok::RBrace, "'}'");
        return make(ExprKind::Refl, Span::merge(t.span, end), {term, ty});
      }
      case Tok::LBrace: return shape();
      case Tok::LParen: return paren();
      case Tok::Ident: return ident_atom();
      default:
        fail({"expression"});
    }
  }

  ExprPtr ident_atom() {
    const Token& t = advance();
    const std::string& s = t.text;
    if (s == "U") return make(ExprKind::Universe, t.span);
    if (s == "CUBE") return make(ExprKind::UniverseCube, t.span);
    if (s == "TOPE") return make(ExprKind::UniverseTope, t.span);
    if (s == "refl") return make(ExprKind::Refl, t.span, {nullptr, nullptr});
    if (s == "recBOT") return make(ExprKind::RecBot, t.span);
    if (s == "recOR") {
      expect(Tok::LParen, "'('");
      std::vector<ExprPtr> args;
      branches(args);
      Span end = here();
      expect(Tok::RParen, "')'");
      return make(ExprKind::RecOr, Span::merge(t.span, end), std::move(args));
    }
    if (s == "idJ") {
      expect(Tok::LParen, "'('");
      std::vector<ExprPtr> args;
      for (int i = 0; i < 6; ++i) {
        if (i) expect(Tok::Comma, "','");
        args.push_back(expr0());
      }
      Span end = here();
      expect(Tok::RParen, "')'");
      return make(ExprKind::IndPath, Span::merge(t.span, end), std::move(args));
    }
    if (s != "_" && is_keyword(s)) throw ParseError("unexpected keyword '" + s + "'", t.span, {"expression"});
    return make_var(s, t.span);
  }

  ExprPtr shape() {
    Span start = advance().span;
    Pattern p = pattern();
    expect(Tok::Colon, "':'");
    ExprPtr cube = expr0();
    expect(Tok::Bar, "'|'");
    ExprPtr tope = expr0();
    Span end = here();
    expect(Tok::RBrace, "'}'");
    return make_binder(ExprKind::Shape, p, Span::merge(start, end), {cube, tope});
  }

  ExprPtr paren() {
    Span start = advance().span;
    ExprPtr e = expr0();
    if (at(Tok::Colon)) {
      advance();
      ExprPtr ty = expr0();
      Span end = here();
      expect(Tok::RParen, "')'");
      return make(ExprKind::TypeAscription, Span::merge(start, end), {e, ty});
    }
    std::vector<ExprPtr> items{e};
    while (at(Tok::Comma)) {
      advance();
      items.push_back(expr0());
    }
    Span end = here();
    expect(Tok::RParen, "')'");
    if (items.size() == 1) return e;
    ExprPtr acc = items.back();
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      Span s = i == 0 ? Span::merge(start, end) : Span::merge(items[i]->span, acc->span);
      acc = make(ExprKind::Pair, s, {items[i], acc});
    }
    return acc;
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::string file_;
};

std::vector<Token> lex_or_parse_error(std::string_view text, const std::string& file) {
  try {
    return tokenize(text, file);
  } catch (const LexError& e) {
    throw ParseError(std::string("lexical error: ") + e.what(), e.span);
  }
}

}  // namespace

SourceModule parse_module(std::string_view text, const std::string& file) {
  auto toks = lex_or_parse_error(text, file);
  Parser p(toks, 0, file);
  return p.module();
}

ExprPtr parse_expr_tokens(const std::vector<Token>& toks, std::size_t& pos) {
  Parser p(toks, pos, toks.empty() ? "<input>" : toks.front().span.file);
  ExprPtr e = p.expr0();
  pos = p.pos();
  return e;
}

ExprPtr parse_expr(std::string_view text, const std::string& file) {
  auto toks = lex_or_parse_error(text, file);
  std::size_t pos = 0;
  Parser p(toks, 0, file);
  ExprPtr e = p.expr0();
  pos = p.pos();
  if (pos != toks.size()) throw ParseError("unexpected '" + toks[pos].text + "' after expression", toks[pos].span);
  return e;
}

}  // namespace stt::syntax
