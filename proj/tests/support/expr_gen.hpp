#pragma once

#include <random>
#include <string>
#include <vector>

#include "stt/syntax/expr.hpp"

namespace stt::testing {

// Random surface ASTs covering every node kind the parser can produce.
class ExprGen {
 public:
  explicit ExprGen(unsigned seed) : rng_(seed) {}

  syntax::ExprPtr gen(int depth) {
    using syntax::ExprKind;
    if (depth <= 0) return leaf();
    switch (pick(24)) {
      case 0: return leaf();
      case 1: return bin(ExprKind::CubeProduct, depth);
      case 2: return bin(ExprKind::TopeAnd, depth);
      case 3: return bin(ExprKind::TopeOr, depth);
      case 4: return bin(ExprKind::TopeEq, depth);
      case 5: return bin(ExprKind::TopeLeq, depth);
      case 6: return binder(ExprKind::Shape, pattern(), {gen(depth - 1), gen(depth - 1)});
      case 7: return binder(ExprKind::Pi, pattern(), {gen(depth - 1), gen(depth - 1), nullptr});
      case 8: return binder(ExprKind::Pi, pattern(), {gen(depth - 1), gen(depth - 1), gen(depth - 1)});
      case 9: return binder(ExprKind::Pi, syntax::Pattern::leaf("_"), {gen(depth - 1), gen(depth - 1), nullptr});
      case 10: return binder(ExprKind::Lambda, pattern(), {pick(2) ? gen(depth - 1) : nullptr, gen(depth - 1)});
      case 11:
      case 12: return bin(ExprKind::App, depth);
      case 13: return binder(ExprKind::Sigma, pattern(), {gen(depth - 1), gen(depth - 1)});
      case 14: return bin(ExprKind::Pair, depth);
      case 15: return node(pick(2) ? ExprKind::First : ExprKind::Second, {gen(depth - 1)});
      case 16: return node(ExprKind::IdType, {gen(depth - 1), gen(depth - 1), pick(2) ? gen(depth - 1) : nullptr});
      case 17: {
        int k = pick(3);
        if (k == 0) return node(ExprKind::Refl, {nullptr, nullptr});
        return node(ExprKind::Refl, {gen(depth - 1), k == 2 ? gen(depth - 1) : nullptr});
      }
      case 18: {
        std::vector<syntax::ExprPtr> a;
        for (int i = 0; i < 6; ++i) a.push_back(gen(depth - 1));
        return node(ExprKind::IndPath, a);
      }
      case 19: {
        std::vector<syntax::ExprPtr> a = {gen(depth - 1)};
        branches(a, depth);
        return node(ExprKind::Refinement, a);
      }
      case 20: {
        std::vector<syntax::ExprPtr> a;
        branches(a, depth);
        return node(ExprKind::RecOr, a);
      }
      case 21: return bin(ExprKind::TypeAscription, depth);
      default: return bin(ExprKind::App, depth);
    }
  }

  syntax::Pattern pattern() {
    static const char* names[] = {"x", "y", "t", "s", "_", "f′"};
    if (pick(5) == 0) return syntax::Pattern::pair(pattern(), pattern());
    return syntax::Pattern::leaf(names[pick(6)]);
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  syntax::ExprPtr node(syntax::ExprKind k, std::vector<syntax::ExprPtr> args) {
    return syntax::make(k, {}, std::move(args));
  }

  syntax::ExprPtr bin(syntax::ExprKind k, int depth) { return node(k, {gen(depth - 1), gen(depth - 1)}); }

  syntax::ExprPtr binder(syntax::ExprKind k, syntax::Pattern p, std::vector<syntax::ExprPtr> args) {
    return syntax::make_binder(k, std::move(p), {}, std::move(args));
  }

  void branches(std::vector<syntax::ExprPtr>& a, int depth) {
    int n = 1 + pick(3);
    for (int i = 0; i < n; ++i) {
      a.push_back(gen(depth - 1));
      a.push_back(gen(depth - 1));
    }
  }

  syntax::ExprPtr leaf() {
    using syntax::ExprKind;
    static const char* vars[] = {"x", "y", "t", "s", "A", "is-contr", "Δ¹", "f′", "hom2", "x1"};
    static const ExprKind consts[] = {ExprKind::Universe,   ExprKind::UniverseCube, ExprKind::UniverseTope,
                                      ExprKind::CubeUnit,   ExprKind::CubeUnitStar, ExprKind::Cube2,
                                      ExprKind::Cube2_0,    ExprKind::Cube2_1,      ExprKind::TopeTop,
                                      ExprKind::TopeBottom, ExprKind::RecBot,       ExprKind::Hole};
    if (pick(2)) return syntax::make_var(vars[pick(10)], {});
    return node(consts[pick(12)], {});
  }

  std::mt19937 rng_;
};

}  // namespace stt::testing
