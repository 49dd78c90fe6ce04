#include <gtest/gtest.h>

#include "../support/expr_gen.hpp"
#include "stt/syntax/lexer.hpp"
#include "stt/syntax/literate.hpp"
#include "stt/syntax/parser.hpp"
#include "stt/syntax/printer.hpp"

using namespace stt::syntax;

namespace {

const char* kHomSource =
    "#def hom (A : U) (a b : A) : U\n"
    "  := (t : Δ¹) → A [t ≡ 0₂ ↦ a , t ≡ 1₂ ↦ b]\n";

const char* kYonedaSource =
    "#def yoneda-lemma uses (funext)\n"
    "  ( A : U)\n"
    "  ( is-pre-∞-category-A : is-pre-∞-category A)\n"
    "  ( a : A)\n"
    "  ( C : A → U)\n"
    "  ( is-covariant-C : is-covariant A C)\n"
    "  : is-equiv\n"
    "      ((z : A) → hom A a z → C z)\n"
    "      (C a)\n"
    "      (evid A a C)\n"
    "  := ?\n";

std::vector<Tok> kinds(const std::string& s) {
  std::vector<Tok> out;
  for (const auto& t : tokenize(s)) out.push_back(t.kind);
  return out;
}

}  // namespace

TEST(Lexer, Empty) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Lexer, HomBodyTokenCount) {
  auto toks = tokenize("(t : Δ¹) → A [t ≡ 0₂ ↦ a , t ≡ 1₂ ↦ b]");
  ASSERT_EQ(toks.size(), 20u);
  EXPECT_EQ(toks.back().kind, Tok::RBracket);
  EXPECT_EQ(toks[3].kind, Tok::Ident);
  EXPECT_EQ(toks[3].text, "Δ¹");
}

TEST(Lexer, IdentityTypes) {
  EXPECT_EQ(kinds("x =_{A} y"), (std::vector<Tok>{Tok::Ident, Tok::EqUnder, Tok::Ident, Tok::RBrace, Tok::Ident}));
  EXPECT_EQ(kinds("x = y"), (std::vector<Tok>{Tok::Ident, Tok::Eq, Tok::Ident}));
}

TEST(Lexer, AsciiAliases) {
  EXPECT_EQ(kinds("-> |-> === <= /\\ \\/ TOP BOT Sigma *_1 0_2 1_2 *"),
            kinds("→ ↦ ≡ ≤ ∧ ∨ ⊤ ⊥ Σ *₁ 0₂ 1₂ ×"));
}

TEST(Lexer, HyphenatedIdentifiers) {
  auto toks = tokenize("is-pre-∞-category f′ x-1");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].text, "is-pre-∞-category");
  EXPECT_EQ(toks[1].text, "f′");
  EXPECT_EQ(toks[2].text, "x-1");
}

TEST(Lexer, CommentsAndSpans) {
  auto toks = tokenize("x -- comment\n  {- block\n -} y");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[1].span.start_line, 3);
  EXPECT_EQ(toks[1].span.start_col, 5);
}

TEST(Lexer, Errors) {
  EXPECT_THROW(tokenize("x @ y"), LexError);
  EXPECT_THROW(tokenize("{- open"), LexError);
  EXPECT_THROW(tokenize("a - b"), LexError);
}

TEST(Parser, HomBlock) {
  SourceModule m = parse_module(kHomSource);
  ASSERT_EQ(m.decls.size(), 1u);
  const Declaration& d = m.decls[0];
  EXPECT_EQ(d.kind, DeclKind::Define);
  EXPECT_EQ(d.name, "hom");
  ASSERT_EQ(d.params.size(), 3u);
  EXPECT_EQ(d.params[1].pattern.name, "a");
  EXPECT_EQ(d.params[2].pattern.name, "b");
  EXPECT_EQ(d.type->kind, ExprKind::Universe);
  ASSERT_EQ(d.body->kind, ExprKind::Pi);
  EXPECT_EQ(d.body->args[1]->kind, ExprKind::Refinement);
  EXPECT_EQ(pretty_print(d.body), "(t : Δ¹) → A [t ≡ 0₂ ↦ a , t ≡ 1₂ ↦ b]");
}

TEST(Parser, YonedaUsesBlock) {
  SourceModule m = parse_module(kYonedaSource);
  ASSERT_EQ(m.decls.size(), 1u);
  const Declaration& d = m.decls[0];
  EXPECT_TRUE(d.has_uses);
  EXPECT_EQ(d.uses, std::vector<std::string>{"funext"});
  EXPECT_EQ(d.params.size(), 5u);
  EXPECT_EQ(d.body->kind, ExprKind::Hole);
}

TEST(Parser, MinimalDeclaration) {
  SourceModule m = parse_module("#def x : U := U");
  ASSERT_EQ(m.decls.size(), 1u);
  EXPECT_EQ(m.decls[0].name, "x");
}

TEST(Parser, Directives) {
  SourceModule m = parse_module(
      "#lang rzk-1\n#section s\n#variable v : U\n#variables a b : v\n#postulate p : v\n#end s\n");
  EXPECT_EQ(m.lang, "rzk-1");
  ASSERT_EQ(m.decls.size(), 5u);
  EXPECT_EQ(m.decls[2].names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(m.decls[3].kind, DeclKind::Postulate);
}

TEST(Parser, UnbalancedSections) {
  EXPECT_THROW(parse_module("#section a\n#def x : U := U\n"), ParseError);
  EXPECT_THROW(parse_module("#section a\n#end b\n"), ParseError);
  EXPECT_THROW(parse_module("#end a\n"), ParseError);
}

TEST(Parser, ErrorsCarrySpansAndExpectations) {
  try {
    parse_module("#def x : U :=\n  (A →");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span.start_line, 2);
    EXPECT_FALSE(e.expected.empty());
  }
}

TEST(Parser, Precedence) {
  EXPECT_EQ(dump_ast(parse_expr("f x y")), dump_ast(parse_expr("(f x) y")));
  EXPECT_EQ(dump_ast(parse_expr("A → B → C")), dump_ast(parse_expr("A → (B → C)")));
  EXPECT_EQ(dump_ast(parse_expr("a ∨ b ∧ c")), dump_ast(parse_expr("a ∨ (b ∧ c)")));
  EXPECT_TRUE(alpha_equal(parse_expr("\\ x → x"), parse_expr("\\ y → y")));
  EXPECT_FALSE(alpha_equal(parse_expr("\\ x → y"), parse_expr("\\ y → y")));
}

TEST(Parser, AsciiTwinIsAlphaEqual) {
  const char* uni = "#def h (A : U) (x : A) : (t : 2 | t ≡ 0₂ ∨ ⊤) → Σ (y : A) , x = y := \\ t → (x , refl)";
  const char* asc = "#def h (A : U) (x : A) : (t : 2 | t === 0_2 \\/ TOP) -> Sigma (y : A) , x = y := \\ t -> (x , refl)";
  auto a = parse_module(uni), b = parse_module(asc);
  EXPECT_TRUE(alpha_equal(a.decls[0].full_type(), b.decls[0].full_type()));
  EXPECT_TRUE(alpha_equal(a.decls[0].full_body(), b.decls[0].full_body()));
}

TEST(Printer, Basics) {
  EXPECT_EQ(pretty_print(parse_expr("refl")), "refl");
  EXPECT_EQ(pretty_print(parse_expr("refl_{x : A}")), "refl_{x : A}");
  EXPECT_EQ(pretty_print(parse_expr("(A -> B) -> C")), "(A → B) → C");
  EXPECT_EQ(pretty_print(parse_expr("{(t , s) : 2 * 2 | s <= t}")), "{(t , s) : 2 × 2 | s ≤ t}");
}

TEST(Printer, DumpAst) {
  EXPECT_EQ(dump_ast(parse_expr("f x")), "(App (Var f) (Var x))");
}

TEST(Printer, ModuleRoundTrip) {
  SourceModule m = parse_module(std::string("#lang rzk-1\n") + kHomSource + kYonedaSource);
  SourceModule back = parse_module(pretty_print(m));
  ASSERT_EQ(back.decls.size(), m.decls.size());
  for (std::size_t i = 0; i < m.decls.size(); ++i) {
    EXPECT_EQ(back.decls[i].name, m.decls[i].name);
    EXPECT_TRUE(alpha_equal(back.decls[i].full_type(), m.decls[i].full_type()));
    EXPECT_TRUE(alpha_equal(back.decls[i].full_body(), m.decls[i].full_body()));
  }
}

TEST(PrinterProperty, RandomAstsRoundTrip) {
  stt::testing::ExprGen g(2024);
  for (int i = 0; i < 10000; ++i) {
    ExprPtr e = g.gen(1 + i % 6);
    std::string text = pretty_print(e);
    ExprPtr back;
    ASSERT_NO_THROW(back = parse_expr(text)) << text;
    ASSERT_TRUE(alpha_equal(e, back)) << text << "\n" << dump_ast(e) << "\n" << dump_ast(back);
  }
}

TEST(Literate, KeepsOnlyRzkFences) {
  std::string md =
      "# Title\n"
      "\n"
      "```python\n"
      "x = 1\n"
      "```\n"
      "\n"
      "```rzk\n"
      "#def x : U := U\n"
      "```\n";
  std::string code = extract_literate(md);
  EXPECT_EQ(std::count(code.begin(), code.end(), '\n'), std::count(md.begin(), md.end(), '\n'));
  EXPECT_EQ(code.find("x = 1"), std::string::npos);
  SourceModule m = parse_module(code);
  ASSERT_EQ(m.decls.size(), 1u);
  EXPECT_EQ(m.decls[0].span.start_line, 8);
}

TEST(Literate, NoFencesYieldsEmptyModule) {
  std::string code = extract_literate("just prose\nmore prose\n");
  EXPECT_EQ(code.find_first_not_of("\n"), std::string::npos);
  EXPECT_TRUE(parse_module(code).decls.empty());
}

TEST(Literate, LineFidelityOnRandomDocuments) {
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    std::string md;
    std::vector<int> lines;
    int line = 1;
    int blocks = 1 + static_cast<int>(rng() % 4);
    for (int b = 0; b < blocks; ++b) {
      int prose = static_cast<int>(rng() % 4);
      for (int i = 0; i < prose; ++i, ++line) md += "Some text with `code` and ```inline``` fences.\n";
      md += "```rzk\n";
      ++line;
      int decls = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < decls; ++i) {
        if (rng() % 2) {
          md += "\n";
          ++line;
        }
        lines.push_back(line);
        md += "#def d" + std::to_string(lines.size()) + " : U\n  := U\n";
        line += 2;
      }
      md += "```\n";
      ++line;
    }
    SourceModule m = parse_module(extract_literate(md));
    ASSERT_EQ(m.decls.size(), lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) EXPECT_EQ(m.decls[i].span.start_line, lines[i]);
  }
}

TEST(Literate, PathDetection) {
  EXPECT_TRUE(is_literate_path("a/b.rzk.md"));
  EXPECT_TRUE(is_literate_path("b.md"));
  EXPECT_FALSE(is_literate_path("b.rzk"));
}
