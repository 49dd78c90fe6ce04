#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace stt::syntax {

// Source location. Lines and columns are 1-based and always refer to the
// original file, including literate Markdown sources.
struct Span {
  std::string file;
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  static Span merge(const Span& a, const Span& b);
  std::string to_string() const;
};

// Binder pattern: a plain name, or a pair of nested patterns as in `(t , s)`.
struct Pattern {
  std::string name;            // leaf name; empty for pairs
  std::vector<Pattern> parts;  // exactly two entries for a pair pattern

  static Pattern leaf(std::string n) { return Pattern{std::move(n), {}}; }
  static Pattern pair(Pattern a, Pattern b);

  bool is_leaf() const { return parts.empty(); }
  void collect_names(std::vector<std::string>& out) const;
  bool binds(const std::string& n) const;
};

enum class ExprKind {
  Universe,
  UniverseCube,
  UniverseTope,
  CubeUnit,
  CubeUnitStar,
  Cube2,
  Cube2_0,
  Cube2_1,
  CubeProduct,  // I × J; also non-dependent pair types before checking
  TopeTop,
  TopeBottom,
  TopeAnd,
  TopeOr,
  TopeEq,
  TopeLeq,
  Shape,      // {p : I | φ}
  Pi,         // (p : A) → B, or (p : I | φ) → B
  Lambda,     // \ p → e, optionally annotated
  App,
  Sigma,      // Σ (p : A) , B
  Pair,
  First,
  Second,
  IdType,     // a =_{A} b, A optional
  Refl,       // refl, refl_{a}, refl_{a : A}
  IndPath,    // idJ(A, a, C, d, x, p)
  Refinement, // A [φ₁ ↦ a₁, …]
  RecOr,      // recOR(φ ↦ a, …)
  RecBot,
  Var,
  GlobalRef,
  TypeAscription,
  Hole,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// One node of the unified syntax tree.
// 
// Children live in `args`, with a per-kind layout:
//   CubeProduct, TopeAnd/Or/Eq/Leq, App, Pair   [lhs, rhs]
//   Shape                                       [cube, tope]
//   Pi                                          [domain, codomain, tope-or-null]
//   Lambda                                      [annotation-or-null, body]
//   Sigma                                       [domain, codomain]
//   First, Second                               [operand]
//   IdType                                      [lhs, rhs, type-or-null]
//   Refl                                        [term-or-null, type-or-null]
//   IndPath                                     [A, a, C, d, x, p]
//   Refinement                                  [carrier, φ₁, a₁, φ₂, a₂, …]
//   RecOr                                       [φ₁, a₁, φ₂, a₂, …]
//   TypeAscription                              [term, type]
struct Expr {
  ExprKind kind;
  Span span;
  std::string name;  // Var / GlobalRef
  Pattern binder;    // Shape / Pi / Lambda / Sigma
  std::vector<ExprPtr> args;

  const ExprPtr& arg(std::size_t i) const { return args[i]; }
};

ExprPtr make(ExprKind kind, Span span, std::vector<ExprPtr> args = {});
ExprPtr make_var(std::string name, Span span);
ExprPtr make_global(std::string name, Span span);
ExprPtr make_binder(ExprKind kind, Pattern binder, Span span, std::vector<ExprPtr> args);

// Expression corresponding to a pattern, e.g. `(t , s)` for a pair pattern.
ExprPtr pattern_expr(const Pattern& p, const Span& span);

bool is_keyword(const std::string& ident);

// α-equivalence: structural equality ignoring spans and bound-variable names.
bool alpha_equal(const ExprPtr& a, const ExprPtr& b);

// True if `name` occurs free in `e`.
bool occurs_free(const std::string& name, const ExprPtr& e);

// Replaces free Var/GlobalRef occurrences of the mapped names. Replacements
// are inserted as is (no renaming of binders).
ExprPtr substitute_free(const ExprPtr& e, const std::function<ExprPtr(const Expr&)>& replace);

// Free variable names (Var and GlobalRef nodes not captured by a binder).
void free_names(const ExprPtr& e, std::vector<std::string>& out);

enum class DeclKind { Define, Postulate, SectionBegin, SectionEnd, VariableDecl, Lang };

// `(a b : A)` groups are expanded into one Param per name by the parser.
struct Param {
  Pattern pattern;
  ExprPtr type;
  Span span;
};

struct Declaration {
  DeclKind kind;
  Span span;
  std::string name;                // Define/Postulate/Section names, Lang version
  std::vector<std::string> names;  // VariableDecl names
  std::vector<Param> params;
  std::vector<std::string> uses;
  bool has_uses = false;
  ExprPtr type;  // result type (Define/Postulate) or variable type
  ExprPtr body;  // Define only

  // Pi over the parameters ending in the result type.
  ExprPtr full_type() const;
  // Lambda over the parameters wrapping the body.
  ExprPtr full_body() const;
};

struct SourceModule {
  std::string lang;  // contents of `#lang`, empty if absent
  std::vector<Declaration> decls;
};

}  // namespace stt::syntax
