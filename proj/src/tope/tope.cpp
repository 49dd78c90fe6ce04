#include "stt/tope/tope.hpp"

#include <algorithm>

namespace stt::tope {

namespace {
TopePtr node(Tope t) { return std::make_shared<const Tope>(std::move(t)); }
}  // namespace

TopePtr top() {
  static const TopePtr t = node(Tope{Tope::Top});
  return t;
}

TopePtr bot() {
  static const TopePtr t = node(Tope{Tope::Bot});
  return t;
}

TopePtr conj(TopePtr a, TopePtr b) {
  if (a->kind == Tope::Top) return b;
  if (b->kind == Tope::Top) return a;
  if (a->kind == Tope::Bot || b->kind == Tope::Bot) return bot();
  return node(Tope{Tope::And, std::move(a), std::move(b)});
}

TopePtr disj(TopePtr a, TopePtr b) {
  if (a->kind == Tope::Bot) return b;
  if (b->kind == Tope::Bot) return a;
  if (a->kind == Tope::Top || b->kind == Tope::Top) return top();
  return node(Tope{Tope::Or, std::move(a), std::move(b)});
}

TopePtr eq(Point p, Point q) {
  Tope t{Tope::Eq};
  t.p = p;
  t.q = q;
  return node(t);
}

TopePtr leq(Point p, Point q) {
  Tope t{Tope::Leq};
  t.p = p;
  t.q = q;
  return node(t);
}

TopePtr atom(int i) {
  Tope t{Tope::Atom};
  t.atom = i;
  return node(t);
}

int CubeContext::add_var(const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it != vars.end()) return static_cast<int>(it - vars.begin());
  vars.push_back(name);
  return static_cast<int>(vars.size()) - 1;
}

int CubeContext::add_atom(const std::string& name) {
  auto it = std::find(atoms.begin(), atoms.end(), name);
  if (it != atoms.end()) return static_cast<int>(it - atoms.begin());
  atoms.push_back(name);
  return static_cast<int>(atoms.size()) - 1;
}

std::string to_string(const Point& p, const CubeContext& ctx) {
  switch (p.kind) {
    case Point::Zero: return "0₂";
    case Point::One: return "1₂";
    case Point::Var:
      return p.var >= 0 && p.var < static_cast<int>(ctx.vars.size()) ? ctx.vars[p.var] : "?" + std::to_string(p.var);
  }
  return "?";
}

namespace {

void render(const TopePtr& t, const CubeContext& ctx, int need, std::string& out) {
  switch (t->kind) {
    case Tope::Top: out += "⊤"; return;
    case Tope::Bot: out += "⊥"; return;
    case Tope::Atom:
      if (t->atom >= 0 && t->atom < static_cast<int>(ctx.atoms.size())) {
        out += "(" + ctx.atoms[t->atom] + ")";
      } else {
        out += "?a" + std::to_string(t->atom);
      }
      return;
    case Tope::Eq: out += to_string(t->p, ctx) + " ≡ " + to_string(t->q, ctx); return;
    case Tope::Leq: out += to_string(t->p, ctx) + " ≤ " + to_string(t->q, ctx); return;
    case Tope::Or:
    case Tope::And: {
      int lvl = t->kind == Tope::Or ? 1 : 2;
      if (lvl < need) out += "(";
      render(t->lhs, ctx, lvl, out);
      out += t->kind == Tope::Or ? " ∨ " : " ∧ ";
      render(t->rhs, ctx, lvl + 1, out);
      if (lvl < need) out += ")";
      return;
    }
  }
}

}  // namespace

std::string to_string(const TopePtr& t, const CubeContext& ctx) {
  std::string out;
  render(t, ctx, 0, out);
  return out;
}

}  // namespace stt::tope
