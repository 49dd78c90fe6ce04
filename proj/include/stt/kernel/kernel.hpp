#pragma once

#include <utility>

#include "stt/diagnostic.hpp"
#include "stt/kernel/value.hpp"

namespace stt::kernel {

// ---- evaluation ----

Val eval(const Ctx& c, const Env& env, const syntax::ExprPtr& e);
Val apply(const Ctx& c, const Val& f, const Val& arg);
Val apply_closure(const Ctx& c, const ClosurePtr& clo, const Val& arg);
Val do_first(const Ctx& c, const Val& v);
Val do_second(const Ctx& c, const Val& v);
Val do_j(const Ctx& c, const std::vector<Val>& args, const Val& p);

// Re-reduces a value under the tope hypotheses of `c`: neutrals whose
// type carries an entailed refinement compute, and entailed recOR
// branches are selected.
Val force(const Ctx& c, const Val& v);

// Builds a neutral value, applying the refinement computation rule.
Val reflect(const Ctx& c, Neutral n);

// Splits a type into its carrier and refinement constraints.
std::pair<Val, std::vector<Val>> unrefine(const Ctx& c, const Val& type);

struct Bound {
  Val value;
  Ctx ctx;
  syntax::Pattern display;  // pattern with the chosen display names
};

// Introduces fresh variables for `p` at `type`, binding the pattern's names.
// With `rename`, display names are chosen to be unique in the context;
// otherwise the pattern's own names are used (surface binders).
Bound bind_fresh(const Ctx& c, const syntax::Pattern& p, const Val& type, bool rename = true);

// ---- read-back ----

// η-long normal form of `v` at `type`.
syntax::ExprPtr quote(const Ctx& c, const Val& type, const Val& v);
syntax::ExprPtr quote_type(const Ctx& c, const Val& t);
// Read-back without type information (no η); used for messages and keys.
syntax::ExprPtr quote_untyped(const Ctx& c, const Val& v);
std::string show(const Ctx& c, const Val& v);

// ---- topes ----

bool ctx_entails(const Ctx& c, const Val& goal);
bool ctx_satisfiable(const Ctx& c);
// hyps ⊢ φ₁ ∨ … ∨ φₙ
bool ctx_entails_any(const Ctx& c, const std::vector<Val>& phis);

// ---- conversion ----

bool equal_terms(const Ctx& c, const Val& type, const Val& a, const Val& b);
bool equal_types(const Ctx& c, const Val& a, const Val& b);
bool subtype(const Ctx& c, const Val& a, const Val& b);

// ---- bidirectional checking ----

syntax::ExprPtr check(const Ctx& c, const syntax::ExprPtr& e, const Val& type);
std::pair<syntax::ExprPtr, Val> infer(const Ctx& c, const syntax::ExprPtr& e);
// Checks that `e` is a type; returns the elaborated term and its value.
std::pair<syntax::ExprPtr, Val> check_type(const Ctx& c, const syntax::ExprPtr& e);
// Infers the type of `e` and reads back its normal form.
syntax::ExprPtr normalize(const Ctx& c, const syntax::ExprPtr& e);

}  // namespace stt::kernel
