#include <map>

#include "stt/syntax/printer.hpp"
#include "stt/tope/tope.hpp"

namespace stt::tope {

using syntax::Expr;
using syntax::ExprKind;
using syntax::ExprPtr;

namespace {

// A point of a cube built from 1, 2 and ×.
struct PointTree {
  enum Kind { Unit, Leaf, Pair } kind = Unit;
  Point leaf;
  std::shared_ptr<PointTree> l, r;
};

using TreePtr = std::shared_ptr<PointTree>;

TreePtr unit() { return std::make_shared<PointTree>(); }
TreePtr leaf(Point p) {
  auto t = std::make_shared<PointTree>();
  t->kind = PointTree::Leaf;
  t->leaf = p;
  return t;
}
TreePtr pair(TreePtr a, TreePtr b) {
  auto t = std::make_shared<PointTree>();
  t->kind = PointTree::Pair;
  t->l = std::move(a);
  t->r = std::move(b);
  return t;
}

class Flattener {
 public:
  CubeContext ctx;
  std::map<std::string, TreePtr> vars;

  void declare(const std::string& name, const ExprPtr& cube) { vars[name] = split(name, cube); }

  TopePtr tope(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::TopeTop: return top();
      case ExprKind::TopeBottom: return bot();
      case ExprKind::TopeAnd: return conj(tope(e->args[0]), tope(e->args[1]));
      case ExprKind::TopeOr: return disj(tope(e->args[0]), tope(e->args[1]));
      case ExprKind::TopeEq: return equal(point(e->args[0]), point(e->args[1]));
      case ExprKind::TopeLeq: {
        TreePtr a = point(e->args[0]), b = point(e->args[1]);
        if (a->kind != PointTree::Leaf || b->kind != PointTree::Leaf)
          throw IllFormedPoint("≤ compares points of 2 only: " + syntax::pretty_print(e));
        return leq(a->leaf, b->leaf);
      }
      default:
        throw IllFormedPoint("not a tope: " + syntax::pretty_print(e));
    }
  }

 private:
  TreePtr split(const std::string& name, const ExprPtr& cube) {
    switch (cube->kind) {
      case ExprKind::CubeUnit: return unit();
      case ExprKind::Cube2: return leaf(Point::variable(ctx.add_var(name)));
      case ExprKind::CubeProduct: {
        TreePtr a = split(name + ".1", cube->args[0]);
        TreePtr b = split(name + ".2", cube->args[1]);
        return pair(a, b);
      }
      default:
        throw IllFormedPoint("not a cube: " + syntax::pretty_print(cube));
    }
  }

  TreePtr point(const ExprPtr& e) {
    switch (e->kind) {
      case ExprKind::Cube2_0: return leaf(Point::zero());
      case ExprKind::Cube2_1: return leaf(Point::one());
      case ExprKind::CubeUnitStar: return unit();
      case ExprKind::Var:
      case ExprKind::GlobalRef: {
        auto it = vars.find(e->name);
        if (it == vars.end()) throw IllFormedPoint("unknown point variable " + e->name);
        return it->second;
      }
      case ExprKind::Pair: {
        TreePtr a = point(e->args[0]);
        TreePtr b = point(e->args[1]);
        return pair(a, b);
      }
      case ExprKind::First:
      case ExprKind::Second: {
        TreePtr p = point(e->args[0]);
        if (p->kind != PointTree::Pair) throw IllFormedPoint("projection of a non-pair point: " + syntax::pretty_print(e));
        return e->kind == ExprKind::First ? p->l : p->r;
      }
      default:
        throw IllFormedPoint("not a point: " + syntax::pretty_print(e));
    }
  }

  TopePtr equal(const TreePtr& a, const TreePtr& b) {
    if (a->kind != b->kind) throw IllFormedPoint("≡ between points of different cubes");
    switch (a->kind) {
      case PointTree::Unit: return top();
      case PointTree::Leaf: return eq(a->leaf, b->leaf);
      case PointTree::Pair: return conj(equal(a->l, b->l), equal(a->r, b->r));
    }
    return top();
  }
};

}  // namespace

std::pair<CubeContext, TopePtr> flatten_points(const std::vector<std::pair<std::string, ExprPtr>>& cube_vars,
                                               const ExprPtr& t) {
  Flattener f;
  for (const auto& [name, cube] : cube_vars) f.declare(name, cube);
  TopePtr result = f.tope(t);
  return {f.ctx, result};
}

}  // namespace stt::tope
