#include <gtest/gtest.h>

#include "../support/kernel_env.hpp"
#include "../support/tope_gen.hpp"
#include "stt/kernel/kernel.hpp"
#include "stt/syntax/printer.hpp"

using namespace stt;
using stt::testing::check_source;
using stt::testing::codes;
using stt::testing::corpus_env;
using stt::testing::error_codes;

namespace {

const char* kSegal = "06-segal.rzk.md";

std::string normal_form(const kernel::GlobalEnv& env, const std::string& text) {
  kernel::Ctx c;
  c.globals = &env;
  return syntax::pretty_print(kernel::normalize(c, syntax::parse_expr(text)));
}

// Environment with postulated `A : U`, `a b : A` and `f : hom A a b`.
const kernel::GlobalEnv& arrow_env() {
  static kernel::GlobalEnv env = check_source(
                                     "#postulate A : U\n#postulate a : A\n#postulate b : A\n"
                                     "#postulate f : hom A a b\n",
                                     corpus_env(kSegal))
                                     .env;
  return env;
}

std::string check_one(const std::string& src) {
  auto codes = error_codes(check_source(src, corpus_env(kSegal)));
  return codes.empty() ? "ok" : codes[0];
}

}  // namespace

TEST(Eval, Beta) {
  EXPECT_EQ(normal_form(arrow_env(), "(\\ (x : A) → x) a"), "a");
  EXPECT_EQ(normal_form(arrow_env(), "first (a , b)"), "a");
  EXPECT_EQ(normal_form(arrow_env(), "second (a , b)"), "b");
}

TEST(Eval, IndPathOnRefl) {
  EXPECT_EQ(normal_form(arrow_env(), "idJ (A , a , \\ x p → A , b , a , refl_{a : A})"), "b");
}

TEST(Eval, RefinementComputation) {
  EXPECT_EQ(normal_form(arrow_env(), "f 0₂"), "a");
  EXPECT_EQ(normal_form(arrow_env(), "f 1₂"), "b");
  EXPECT_EQ(normal_form(arrow_env(), "\\ (t : 2) → f t"), "\\ t → f t");
}

TEST(Eval, UnderHypothesis) {
  EXPECT_EQ(check_one("#def h (A : U) (a b : A) (f : hom A a b) : (t : 2 | t ≡ 0₂) → f t = a := \\ t → refl"),
            "ok");
}

TEST(Quote, EtaLong) {
  EXPECT_EQ(normal_form(arrow_env(), "f"), "\\ t → f t");
  kernel::GlobalEnv env = check_source("#postulate p : Σ (x : A) , A\n", arrow_env()).env;
  EXPECT_EQ(normal_form(env, "p"), "(first p , second p)");
}

TEST(Infer, TypeInType) {
  EXPECT_EQ(check_one("#def u : U := U"), "ok");
  EXPECT_EQ(check_one("#def c : U := CUBE"), "ok");
}

TEST(Infer, Errors) {
  EXPECT_EQ(check_one("#def r (A : U) (a : A) : A := (refl as A)"), "E-TYPE-MISMATCH");
  EXPECT_EQ(check_one("#def r : U := y"), "E-UNBOUND");
  EXPECT_EQ(check_one("#def r (A : U) (a : A) : A := a a"), "E-NOT-FUNCTION");
  EXPECT_EQ(check_one("#def r (A : U) (a : A) : A := first a"), "E-NOT-PAIR");
  EXPECT_EQ(check_one("#def r (A : U) (a : A) : A := ?"), "E-HOLE");
  EXPECT_EQ(check_one("#def r (A : U) (a : A) : a := a"), "E-NOT-A-TYPE");
  EXPECT_THROW(normal_form(arrow_env(), "refl"), CheckError);
  EXPECT_THROW(normal_form(arrow_env(), "\\ x → x"), CheckError);
}

TEST(Check, IdentityArrow) { EXPECT_EQ(check_one("#def i (A : U) (x : A) : hom A x x := \\ s → x"), "ok"); }

TEST(Check, SwappedEndpointReportsBothValues) {
  auto r = check_source("#def w (A : U) (x y : A) : hom A x y := \\ t → x", corpus_env(kSegal));
  ASSERT_EQ(error_codes(r), codes({"E-BOUNDARY"}));
  EXPECT_EQ(r.diagnostics[0].expected.value_or(""), "y");
  EXPECT_EQ(r.diagnostics[0].actual.value_or(""), "x");
}

TEST(Check, Refl) {
  EXPECT_EQ(check_one("#def r (A : U) (x : A) : x =_{A} x := refl"), "ok");
  EXPECT_EQ(check_one("#def r (A : U) (x y : A) : x = y := refl"), "E-TYPE-MISMATCH");
}

TEST(Check, GluingAlongTheDiagonal) {
  EXPECT_EQ(check_one("#def g (A : U) (a : A) (p : hom A a a) : ((t , s) : 2 × 2) → A\n"
                      "  := \\ (t , s) → recOR (t ≤ s ↦ p t , s ≤ t ↦ p s)"),
            "ok");
  EXPECT_EQ(check_one("#def g (A : U) (a : A) (p : hom A a a) : ((t , s) : 2 × 2) → A\n"
                      "  := \\ (t , s) → recOR (t ≤ s ↦ p t , s ≤ t ↦ a)"),
            "E-BOUNDARY");
  EXPECT_EQ(check_one("#def g (A : U) (a : A) (p : hom A a a) : ((t , s) : 2 × 2) → A\n"
                      "  := \\ (t , s) → recOR (t ≤ s ↦ p t , s ≡ 0₂ ↦ a)"),
            "E-TOPE");
}

TEST(Check, RecBot) {
  EXPECT_EQ(check_one("#def v (A : U) : (t : 2 | t ≡ 0₂ ∧ t ≡ 1₂) → A := \\ t → recBOT"), "ok");
  EXPECT_EQ(check_one("#def v (A : U) : (t : 2 | t ≡ 0₂) → A := \\ t → recBOT"), "E-TOPE");
}

TEST(CheckType, InconsistentRefinement) {
  EXPECT_EQ(check_one("#def r (A : U) (a b : A) : (t : 2) → U := \\ t → A [t ≡ 0₂ ↦ a , t ≡ 0₂ ↦ b]"),
            "E-BOUNDARY");
  EXPECT_EQ(check_one("#def r (A : U) (a : A) : (t : 2) → U := \\ t → A [t ≡ 0₂ ↦ a , t ≡ 0₂ ↦ a]"), "ok");
}

TEST(CheckType, Shapes) {
  EXPECT_EQ(check_one("#def d : (2 × 2) → TOPE := \\ (t , s) → s ≤ t"), "ok");
  EXPECT_EQ(check_one("#def d (A : U) : TOPE := A ≡ A"), "E-TYPE-MISMATCH");
}

TEST(Equality, SplitOnBoundary) {
  EXPECT_EQ(check_one("#def sp (A : U) (a b : A) (f : hom A a b)\n"
                      "  : (t : 2 | t ≡ 0₂ ∨ t ≡ 1₂) → f t = recOR (t ≡ 0₂ ↦ a , t ≡ 1₂ ↦ b)\n"
                      "  := \\ t → refl"),
            "ok");
  EXPECT_EQ(check_one("#def sp (A : U) (a b : A) (f : hom A a b)\n"
                      "  : (t : 2 | t ≡ 0₂ ∨ t ≡ 1₂) → f t = recOR (t ≡ 0₂ ↦ b , t ≡ 1₂ ↦ a)\n"
                      "  := \\ t → refl"),
            "E-TYPE-MISMATCH");
}

TEST(Equality, Vacuous) {
  EXPECT_EQ(check_one("#def v (A : U) (a b : A) : (t : 2 | t ≡ 0₂ ∧ t ≡ 1₂) → a = b := \\ t → refl"), "ok");
}

TEST(Equality, EmptyRefinement) {
  EXPECT_EQ(check_one("#def e (A : U) (x : A) : A [⊥ ↦ recBOT] := x"), "ok");
  EXPECT_EQ(check_one("#def e (A : U) (x : A [⊥ ↦ recBOT]) : A := x"), "ok");
  EXPECT_EQ(check_one("#def e (A : U) (x : A) : x =_{A [⊥ ↦ recBOT]} x := refl_{x : A}"), "ok");
}

TEST(Equality, HomUnfolds) {
  EXPECT_EQ(check_one("#def e (A : U) (a b : A) (f : hom A a b)\n"
                      "  : (t : Δ¹) → A [t ≡ 0₂ ↦ a , t ≡ 1₂ ↦ b] := f"),
            "ok");
  EXPECT_EQ(check_one("#def e : U := CUBE\n#def e2 (x : e) : U := x"), "E-TYPE-MISMATCH");
}

TEST(Subtype, Refinements) {
  EXPECT_EQ(check_one("#def s (A : U) (a b : A) (f : hom A a b) : (t : Δ¹) → A := f"), "ok");
  EXPECT_EQ(check_one("#def s (A : U) (a b : A) (g : (t : Δ¹) → A) : hom A a b := g"), "E-TYPE-MISMATCH");
}

TEST(Subtype, ShapeRestriction) {
  EXPECT_EQ(check_one("#def s (A : U) (a b : A) (f : hom A a b) : (t : ∂Δ¹) → A := f"), "ok");
  EXPECT_EQ(check_one("#def s (A : U) (g : (t : ∂Δ¹) → A) : (t : Δ¹) → A := g"), "E-TYPE-MISMATCH");
}

TEST(Check, Eta) {
  EXPECT_EQ(check_one("#def e (A : U) (B : A → U) (f : (x : A) → B x) : f = (\\ x → f x) := refl"), "ok");
  EXPECT_EQ(check_one("#def e (A : U) (B : A → U) (p : Σ (x : A) , B x) : p = (first p , second p) := refl"),
            "ok");
}

TEST(Check, BoundExceeded) {
  module::ElabOptions opts;
  opts.max_cube_vars = 1;
  auto r = check_source("#def d (A : U) (a : A) : ((t , s) : 2 × 2 | s ≤ t) → A := \\ (t , s) → a", corpus_env(kSegal),
                        opts);
  EXPECT_EQ(error_codes(r), codes({"E-TOPE-BOUND"}));
}

// Shape-domain functions agree with the semantic tope oracle: a gluing
// recOR(φ ↦ a , ψ ↦ a) checks on the shape χ exactly when χ ⊢ φ ∨ ψ, and
// restriction from shape φ to shape χ is allowed exactly when χ ⊢ φ.
TEST(KernelProperty, ShapeChecksAgreeWithOracle) {
  stt::testing::TopeGen g(99);
  tope::CubeContext cc = stt::testing::ctx_of(2);
  const kernel::GlobalEnv& env = corpus_env(kSegal);
  int glued = 0, restricted = 0;
  for (int i = 0; i < 300; ++i) {
    tope::TopePtr chi = g.gen(2, 2), phi = g.gen(2, 2), psi = g.gen(2, 2);
    std::string c = tope::to_string(chi, cc), f = tope::to_string(phi, cc), p = tope::to_string(psi, cc);
    bool cover = tope::oracle_entails(cc, {chi}, tope::disj(phi, psi));
    std::string glue = "#def g (A : U) (a : A) : ((t , s) : 2 × 2 | " + c + ") → A\n  := \\ (t , s) → recOR (" + f +
                       " ↦ a , " + p + " ↦ a)";
    auto r1 = error_codes(check_source(glue, env));
    ASSERT_EQ(r1.empty(), cover) << glue;
    glued += cover;
    bool sub = tope::oracle_entails(cc, {chi}, phi);
    std::string restrict = "#def r (A : U) (h : ((t , s) : 2 × 2 | " + f + ") → A) : ((t , s) : 2 × 2 | " + c +
                           ") → A := h";
    auto r2 = error_codes(check_source(restrict, env));
    ASSERT_EQ(r2.empty(), sub) << restrict;
    restricted += sub;
  }
  EXPECT_GT(glued, 20);
  EXPECT_GT(restricted, 20);
}

// Vacuity: on an unsatisfiable shape every equation holds; on a satisfiable
// one, distinct variables are never equal.
TEST(KernelProperty, VacuityAgreesWithOracle) {
  stt::testing::TopeGen g(123);
  tope::CubeContext cc = stt::testing::ctx_of(2);
  int vacuous = 0;
  for (int i = 0; i < 300; ++i) {
    tope::TopePtr chi = g.gen(2, 3);
    bool sat = tope::satisfiable(cc, {chi});
    std::string src = "#def v (A : U) (a b : A) : ((t , s) : 2 × 2 | " + tope::to_string(chi, cc) +
                      ") → a = b := \\ (t , s) → refl";
    auto r = error_codes(check_source(src));
    ASSERT_EQ(r.empty(), !sat) << src;
    vacuous += !sat;
  }
  EXPECT_GT(vacuous, 10);
}

// Normal forms of corpus definitions are stable and still typecheck.
TEST(KernelProperty, NormalizationIdempotentOnCorpus) {
  const kernel::GlobalEnv& env = corpus_env("10-axioms.rzk.md");
  kernel::Ctx c;
  c.globals = &env;
  int checked = 0;
  for (const auto& name : env.order()) {
    const kernel::GlobalEntry* g = env.lookup(name);
    if (g->kind != kernel::GlobalEntry::Defined) continue;
    syntax::ExprPtr nf = kernel::quote(c, g->type, g->value);
    syntax::ExprPtr nf2 = kernel::quote(c, g->type, kernel::eval(c, c.env, nf));
    ASSERT_TRUE(syntax::alpha_equal(nf, nf2)) << name;
    syntax::ExprPtr reparsed = syntax::parse_expr(syntax::pretty_print(nf));
    ASSERT_NO_THROW(kernel::check(c, reparsed, g->type)) << name << "\n" << syntax::pretty_print(nf);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

// Equality is reflexive, symmetric and a congruence on corpus-derived terms.
TEST(KernelProperty, EqualityOnCorpusTerms) {
  const kernel::GlobalEnv& env = corpus_env("10-axioms.rzk.md");
  kernel::Ctx c;
  c.globals = &env;
  std::vector<const kernel::GlobalEntry*> defs;
  for (const auto& name : env.order()) {
    const kernel::GlobalEntry* g = env.lookup(name);
    if (g->kind == kernel::GlobalEntry::Defined) defs.push_back(g);
  }
  for (const auto* g : defs) {
    kernel::Val nf = kernel::eval(c, c.env, kernel::quote(c, g->type, g->value));
    EXPECT_TRUE(kernel::equal_terms(c, g->type, g->value, nf)) << g->name;
    EXPECT_TRUE(kernel::equal_terms(c, g->type, nf, g->value)) << g->name;
    EXPECT_TRUE(kernel::equal_types(c, g->type, g->type)) << g->name;
  }
  for (std::size_t i = 0; i < defs.size(); ++i)
    for (std::size_t j = i + 1; j < defs.size(); ++j)
      if (kernel::equal_types(c, defs[i]->type, defs[j]->type))
        EXPECT_EQ(kernel::equal_terms(c, defs[i]->type, defs[i]->value, defs[j]->value),
                  kernel::equal_terms(c, defs[j]->type, defs[j]->value, defs[i]->value))
            << defs[i]->name << " " << defs[j]->name;
}
