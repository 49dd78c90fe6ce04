#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "stt/syntax/expr.hpp"
#include "stt/tope/tope.hpp"

namespace stt::kernel {

struct Value;
using Val = std::shared_ptr<const Value>;

struct EnvEntry;
using Env = std::shared_ptr<const EnvEntry>;

// One binding of a persistent environment. `level` is set for entries that
// bind a fresh context variable, so read-back terms can refer to it.
struct EnvEntry {
  std::string name;
  int level = -1;
  Val value;
  Val type;  // null inside closures created by evaluation
  Env next;
};

Env extend(Env env, std::string name, Val value, Val type = nullptr, int level = -1);

// Body of a binder: either syntax under an environment or a native function.
struct Closure {
  Env env;
  syntax::Pattern pattern;
  syntax::ExprPtr body;
  std::function<Val(const Val&)> native;
};

using ClosurePtr = std::shared_ptr<const Closure>;

ClosurePtr closure(Env env, syntax::Pattern pat, syntax::ExprPtr body);
ClosurePtr native_closure(std::string binder, std::function<Val(const Val&)> fn);
ClosurePtr const_closure(Val v);

enum class VK {
  Universe,
  CubeU,
  TopeU,
  Unit,
  Two,
  CubeProd,  // vs: [I, J]
  Star,
  Zero,
  One,
  Top,
  Bot,
  And,  // vs: [φ, ψ]
  Or,
  TEq,   // vs: [p, q]
  TLeq,
  Pi,      // vs: [domain]; clo: codomain; tope: shape restriction (optional)
  Lambda,  // clo
  Sigma,   // vs: [domain]; clo: codomain
  Pair,    // vs: [a, b]
  Id,      // vs: [type, lhs, rhs]
  Refl,
  Refine,  // vs: [carrier, φ₁, a₁, …]; carrier is never a Refine
  RecOr,   // vs: [φ₁, a₁, …]; empty for recBOT
  Neutral,
};

struct Elim {
  enum Kind { App, First, Second, J } kind;
  Val arg;                // App
  std::vector<Val> j;     // J: [A, a, C, d, x]
};

struct Head {
  bool global = false;
  std::string name;  // display name (unique within its context) or global name
  int level = -1;    // locals only
};

struct Neutral {
  Head head;
  Val head_type;
  std::vector<Elim> spine;
  Val type;  // type of the whole neutral term; may be null for untyped read-back
};

struct Value {
  VK kind;
  std::vector<Val> vs;
  ClosurePtr clo;
  ClosurePtr tope;
  std::shared_ptr<const Neutral> ne;
};

Val mk(VK k, std::vector<Val> vs = {});
Val mk_pi(Val dom, ClosurePtr cod, ClosurePtr tope = nullptr);
Val mk_sigma(Val dom, ClosurePtr cod);
Val mk_lambda(ClosurePtr body);
Val mk_neutral(Neutral n);

struct GlobalEntry {
  enum Kind { Defined, Postulated, Variable } kind = Defined;
  std::string name;
  syntax::ExprPtr type_expr;  // elaborated
  Val type;
  syntax::ExprPtr body_expr;  // elaborated; Defined only
  Val value;                  // Defined: the body's value; otherwise the neutral head
  syntax::Span span;
};

// Global definitions in insertion order. Copies are cheap snapshots.
class GlobalEnv {
 public:
  const GlobalEntry* lookup(const std::string& name) const;
  bool contains(const std::string& name) const { return map_.count(name) > 0; }
  void insert(std::shared_ptr<const GlobalEntry> entry);
  void erase(const std::string& name);
  const std::vector<std::string>& order() const { return order_; }
  std::size_t size() const { return order_.size(); }

 private:
  std::vector<std::string> order_;
  std::unordered_map<std::string, std::shared_ptr<const GlobalEntry>> map_;
};

// Checking context: globals, local bindings, and tope hypotheses.
struct Ctx {
  const GlobalEnv* globals = nullptr;
  Env env;
  std::vector<Val> topes;
  int depth = 0;  // number of fresh variables introduced so far
  std::size_t bound = tope::kDefaultBound;

  const EnvEntry* lookup(const std::string& name) const;
  bool name_in_use(const std::string& name) const;
  Ctx with_tope(Val phi) const;
};

}  // namespace stt::kernel
