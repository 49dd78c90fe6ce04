#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stt/syntax/expr.hpp"

namespace stt::tope {

// A point of the interval 2: a context variable or one of the endpoints.
struct Point {
  enum Kind { Var, Zero, One } kind = Zero;
  int var = -1;

  static Point variable(int i) { return Point{Var, i}; }
  static Point zero() { return Point{Zero, -1}; }
  static Point one() { return Point{One, -1}; }
  bool operator==(const Point& o) const { return kind == o.kind && var == o.var; }
};

struct Tope;
using TopePtr = std::shared_ptr<const Tope>;

// Coherent formula over interval points. `Atom` stands for a tope the
// solver treats as an opaque proposition (e.g. an applied tope variable).
struct Tope {
  enum Kind { Top, Bot, And, Or, Eq, Leq, Atom } kind = Top;
  TopePtr lhs, rhs;  // And / Or
  Point p, q;        // Eq / Leq
  int atom = -1;     // Atom
};

TopePtr top();
TopePtr bot();
TopePtr conj(TopePtr a, TopePtr b);
TopePtr disj(TopePtr a, TopePtr b);
TopePtr eq(Point p, Point q);
TopePtr leq(Point p, Point q);
TopePtr atom(int i);

// Interval variables (each ranging over 2) and opaque atom names.
struct CubeContext {
  std::vector<std::string> vars;
  std::vector<std::string> atoms;

  int add_var(const std::string& name);
  int add_atom(const std::string& name);
};

std::string to_string(const Point& p, const CubeContext& ctx);
std::string to_string(const TopePtr& t, const CubeContext& ctx);

struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& m) : std::runtime_error(m) {}
};

struct IllFormedPoint : std::runtime_error {
  explicit IllFormedPoint(const std::string& m) : std::runtime_error(m) {}
};

constexpr std::size_t kDefaultBound = 8;

// Decides hyps ⊢ goal in the theory of the directed interval.
bool entails(const CubeContext& ctx, const std::vector<TopePtr>& hyps, const TopePtr& goal,
             std::size_t bound = kDefaultBound);
bool satisfiable(const CubeContext& ctx, const std::vector<TopePtr>& hyps, std::size_t bound = kDefaultBound);

// ---- semantic oracle ----

enum class BlockFlag { AtZero, Interior, AtOne };

// A weak ordering of the variables: block[v] is the index of v's block,
// blocks are strictly increasing, flags[b] places block b in the interval.
// atoms[i] is the truth value of atom i.
struct IntervalModel {
  std::vector<int> block;
  std::vector<BlockFlag> flags;
  std::vector<bool> atoms;
};

std::vector<IntervalModel> enumerate_models(const CubeContext& ctx, std::size_t bound = kDefaultBound);
bool eval_tope(const IntervalModel& m, const TopePtr& t);
bool oracle_entails(const CubeContext& ctx, const std::vector<TopePtr>& hyps, const TopePtr& goal,
                    std::size_t bound = kDefaultBound);
std::optional<IntervalModel> find_countermodel(const CubeContext& ctx, const std::vector<TopePtr>& hyps,
                                               const TopePtr& goal, std::size_t bound = kDefaultBound);

// Renders a model as e.g. `0 = ∅ < {s} < {t} < 1`.
std::string format_model(const IntervalModel& m, const CubeContext& ctx);

// ---- flattening from surface syntax ----

// Flattens a tope over raw point expressions. `cube_vars` lists each
// variable with its cube (built from 1, 2 and ×); variables of product
// cubes are split into components named `p.1`, `p.2`, ….
std::pair<CubeContext, TopePtr> flatten_points(
    const std::vector<std::pair<std::string, syntax::ExprPtr>>& cube_vars, const syntax::ExprPtr& tope);

}  // namespace stt::tope
