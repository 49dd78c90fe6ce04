// Translation of tope values into the tope logic. Interval variables and
// opaque topes are keyed by their read-back text.

#include "stt/kernel/kernel.hpp"
#include "stt/syntax/printer.hpp"

namespace stt::kernel {

namespace {

struct NotAnIntervalPoint {};

struct PointTree {
  enum Kind { Unit, Leaf, Pair } kind = Unit;
  tope::Point leaf;
  std::shared_ptr<PointTree> l, r;
};
using TreePtr = std::shared_ptr<PointTree>;

class Translator {
 public:
  explicit Translator(const Ctx& c) : c_(c) {}

  tope::CubeContext ctx;

  tope::TopePtr tope(const Val& v0) {
    Val v = force(c_, v0);
    switch (v->kind) {
      case VK::Top: return tope::top();
      case VK::Bot: return tope::bot();
      case VK::And: return tope::conj(tope(v->vs[0]), tope(v->vs[1]));
      case VK::Or: return tope::disj(tope(v->vs[0]), tope(v->vs[1]));
      case VK::TEq:
        try {
          return equal(point(v->vs[0]), point(v->vs[1]));
        } catch (const NotAnIntervalPoint&) {
          return opaque(v);
        }
      case VK::TLeq:
        try {
          TreePtr a = point(v->vs[0]), b = point(v->vs[1]);
          if (a->kind != PointTree::Leaf || b->kind != PointTree::Leaf) return opaque(v);
          return tope::leq(a->leaf, b->leaf);
        } catch (const NotAnIntervalPoint&) {
          return opaque(v);
        }
      case VK::RecOr: {
        tope::TopePtr acc = tope::bot();
        for (std::size_t i = 0; i + 1 < v->vs.size(); i += 2)
          acc = tope::disj(acc, tope::conj(tope(v->vs[i]), tope(v->vs[i + 1])));
        return acc;
      }
      default:
        return opaque(v);
    }
  }

 private:
  tope::TopePtr opaque(const Val& v) { return tope::atom(ctx.add_atom(show(c_, v))); }

  TreePtr point(const Val& v0) {
    Val v = force(c_, v0);
    auto t = std::make_shared<PointTree>();
    switch (v->kind) {
      case VK::Zero:
        t->kind = PointTree::Leaf;
        t->leaf = tope::Point::zero();
        return t;
      case VK::One:
        t->kind = PointTree::Leaf;
        t->leaf = tope::Point::one();
        return t;
      case VK::Star: return t;
      case VK::Pair:
        t->kind = PointTree::Pair;
        t->l = point(v->vs[0]);
        t->r = point(v->vs[1]);
        return t;
      case VK::Neutral: {
        if (!v->ne->type) throw NotAnIntervalPoint{};
        Val ty = unrefine(c_, v->ne->type).first;
        switch (ty->kind) {
          case VK::Two:
            t->kind = PointTree::Leaf;
            t->leaf = tope::Point::variable(ctx.add_var(key(v)));
            return t;
          case VK::Unit: return t;
          case VK::CubeProd:
            t->kind = PointTree::Pair;
            t->l = point(do_first(c_, v));
            t->r = point(do_second(c_, v));
            return t;
          default:
            throw NotAnIntervalPoint{};
        }
      }
      default:
        throw NotAnIntervalPoint{};
    }
  }

  std::string key(const Val& v) {
    const Neutral& n = *v->ne;
    if (n.spine.empty() && !n.head.global) return n.head.name + "#" + std::to_string(n.head.level);
    return show(c_, v);
  }

  tope::TopePtr equal(const TreePtr& a, const TreePtr& b) {
    if (a->kind != b->kind) throw NotAnIntervalPoint{};
    switch (a->kind) {
      case PointTree::Unit: return tope::top();
      case PointTree::Leaf: return tope::eq(a->leaf, b->leaf);
      case PointTree::Pair: return tope::conj(equal(a->l, b->l), equal(a->r, b->r));
    }
    return tope::top();
  }

  const Ctx& c_;
};

bool query(const Ctx& c, const Val& goal) {
  // Translation forces values under an empty context so that forcing does
  // not recursively consult the hypotheses being translated.
  Ctx plain = c;
  plain.topes.clear();
  Translator tr(plain);
  std::vector<tope::TopePtr> hyps;
  hyps.reserve(c.topes.size());
  for (const auto& h : c.topes) hyps.push_back(tr.tope(h));
  tope::TopePtr g = goal ? tr.tope(goal) : tope::bot();
  if (g->kind == tope::Tope::Top) return true;
  return tope::entails(tr.ctx, hyps, g, c.bound);
}

}  // namespace

bool ctx_entails(const Ctx& c, const Val& goal) {
  if (goal->kind == VK::Top) return true;
  if (c.topes.empty() && goal->kind == VK::Bot) return false;
  return query(c, goal);
}

bool ctx_satisfiable(const Ctx& c) {
  if (c.topes.empty()) return true;
  return !query(c, nullptr);
}

bool ctx_entails_any(const Ctx& c, const std::vector<Val>& phis) {
  if (phis.empty()) return !ctx_satisfiable(c);
  Val acc = phis[0];
  for (std::size_t i = 1; i < phis.size(); ++i) acc = mk(VK::Or, {acc, phis[i]});
  return ctx_entails(c, acc);
}

}  // namespace stt::kernel
