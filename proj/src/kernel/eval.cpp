#include <stdexcept>

#include "stt/kernel/kernel.hpp"

namespace stt::kernel {

using syntax::Expr;
using syntax::ExprKind;
using syntax::ExprPtr;
using syntax::Pattern;

namespace {

Env bind_pattern(const Ctx& c, Env env, const Pattern& p, const Val& v) {
  if (p.is_leaf()) return extend(std::move(env), p.name, v);
  env = bind_pattern(c, std::move(env), p.parts[0], do_first(c, v));
  return bind_pattern(c, std::move(env), p.parts[1], do_second(c, v));
}

bool is_cube(const Ctx& c, const Val& v) {
  switch (v->kind) {
    case VK::Unit:
    case VK::Two:
    case VK::CubeProd:
      return true;
    case VK::Neutral:
      return v->ne->type && force(c, v->ne->type)->kind == VK::CubeU;
    default:
      return false;
  }
}

// recOR with branches transformed by `fn`, resolved if a branch is entailed.
Val map_recor(const Ctx& c, const Val& v, const std::function<Val(const Val&)>& fn) {
  std::vector<Val> out;
  for (std::size_t i = 0; i + 1 < v->vs.size(); i += 2) {
    if (ctx_entails(c, v->vs[i])) return fn(v->vs[i + 1]);
  }
  for (std::size_t i = 0; i + 1 < v->vs.size(); i += 2) {
    out.push_back(v->vs[i]);
    out.push_back(fn(v->vs[i + 1]));
  }
  return mk(VK::RecOr, std::move(out));
}

Val carrier_of(const Ctx& c, const Val& type) {
  if (!type) return nullptr;
  Val t = force(c, type);
  return t->kind == VK::Refine ? t->vs[0] : t;
}

Neutral extend_spine(const Neutral& n, Elim e, Val type) {
  Neutral out = n;
  out.spine.push_back(std::move(e));
  out.type = std::move(type);
  return out;
}

Val lookup_var(const Ctx& c, const Env& env, const Expr& e) {
  for (const EnvEntry* x = env.get(); x; x = x->next.get())
    if (x->name == e.name) return x->value;
  if (c.globals) {
    if (const GlobalEntry* g = c.globals->lookup(e.name)) return g->value;
  }
  throw std::logic_error("unbound variable during evaluation: " + e.name);
}

}  // namespace

Val eval(const Ctx& c, const Env& env, const ExprPtr& e) {
  const auto& a = e->args;
  switch (e->kind) {
    case ExprKind::Universe: return mk(VK::Universe);
    case ExprKind::UniverseCube: return mk(VK::CubeU);
    case ExprKind::UniverseTope: return mk(VK::TopeU);
    case ExprKind::CubeUnit: return mk(VK::Unit);
    case ExprKind::CubeUnitStar: return mk(VK::Star);
    case ExprKind::Cube2: return mk(VK::Two);
    case ExprKind::Cube2_0: return mk(VK::Zero);
    case ExprKind::Cube2_1: return mk(VK::One);
    case ExprKind::CubeProduct: {
      Val l = eval(c, env, a[0]);
      Val r = eval(c, env, a[1]);
      if (is_cube(c, l)) return mk(VK::CubeProd, {l, r});
      return mk_sigma(l, const_closure(r));
    }
    case ExprKind::TopeTop: return mk(VK::Top);
    case ExprKind::TopeBottom: return mk(VK::Bot);
    case ExprKind::TopeAnd: {
      Val l = eval(c, env, a[0]);
      Val r = eval(c, env, a[1]);
      if (l->kind == VK::Top || r->kind == VK::Bot) return r;
      if (r->kind == VK::Top || l->kind == VK::Bot) return l;
      return mk(VK::And, {l, r});
    }
    case ExprKind::TopeOr: {
      Val l = eval(c, env, a[0]);
      Val r = eval(c, env, a[1]);
      if (l->kind == VK::Bot || r->kind == VK::Top) return r;
      if (r->kind == VK::Bot || l->kind == VK::Top) return l;
      return mk(VK::Or, {l, r});
    }
    case ExprKind::TopeEq: return mk(VK::TEq, {eval(c, env, a[0]), eval(c, env, a[1])});
    case ExprKind::TopeLeq: return mk(VK::TLeq, {eval(c, env, a[0]), eval(c, env, a[1])});
    case ExprKind::Shape: return mk_lambda(closure(env, e->binder, a[1]));
    case ExprKind::Pi:
      return mk_pi(eval(c, env, a[0]), closure(env, e->binder, a[1]), a[2] ? closure(env, e->binder, a[2]) : nullptr);
    case ExprKind::Lambda: return mk_lambda(closure(env, e->binder, a[1]));
    case ExprKind::App: return apply(c, eval(c, env, a[0]), eval(c, env, a[1]));
    case ExprKind::Sigma: return mk_sigma(eval(c, env, a[0]), closure(env, e->binder, a[1]));
    case ExprKind::Pair: return mk(VK::Pair, {eval(c, env, a[0]), eval(c, env, a[1])});
    case ExprKind::First: return do_first(c, eval(c, env, a[0]));
    case ExprKind::Second: return do_second(c, eval(c, env, a[0]));
    case ExprKind::IdType:
      return mk(VK::Id, {a[2] ? eval(c, env, a[2]) : nullptr, eval(c, env, a[0]), eval(c, env, a[1])});
    case ExprKind::Refl: return mk(VK::Refl);
    case ExprKind::IndPath: {
      std::vector<Val> args;
      for (int i = 0; i < 5; ++i) args.push_back(eval(c, env, a[static_cast<std::size_t>(i)]));
      return do_j(c, args, eval(c, env, a[5]));
    }
    case ExprKind::Refinement: {
      Val carrier = eval(c, env, a[0]);
      std::vector<Val> vs;
      Val forced = force(c, carrier);
      if (forced->kind == VK::Refine) {
        vs = forced->vs;
      } else {
        vs.push_back(carrier);
      }
      for (std::size_t i = 1; i + 1 < a.size(); i += 2) {
        vs.push_back(eval(c, env, a[i]));
        vs.push_back(eval(c, env, a[i + 1]));
      }
      return mk(VK::Refine, std::move(vs));
    }
    case ExprKind::RecOr: {
      std::vector<Val> phis;
      for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
        Val phi = eval(c, env, a[i]);
        if (ctx_entails(c, phi)) return eval(c, env, a[i + 1]);
        phis.push_back(phi);
      }
      std::vector<Val> vs;
      for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
        vs.push_back(phis[i / 2]);
        vs.push_back(eval(c, env, a[i + 1]));
      }
      return mk(VK::RecOr, std::move(vs));
    }
    case ExprKind::RecBot: return mk(VK::RecOr);
    case ExprKind::Var: return lookup_var(c, env, *e);
    case ExprKind::GlobalRef: {
      const GlobalEntry* g = c.globals ? c.globals->lookup(e->name) : nullptr;
      if (!g) throw std::logic_error("unknown global " + e->name);
      return g->value;
    }
    case ExprKind::TypeAscription: return eval(c, env, a[0]);
    case ExprKind::Hole: throw std::logic_error("evaluating a hole");
  }
  throw std::logic_error("eval: unhandled expression");
}

Val apply_closure(const Ctx& c, const ClosurePtr& clo, const Val& arg) {
  if (clo->native) return clo->native(arg);
  return eval(c, bind_pattern(c, clo->env, clo->pattern, arg), clo->body);
}

Val apply(const Ctx& c, const Val& f, const Val& arg) {
  switch (f->kind) {
    case VK::Lambda: return apply_closure(c, f->clo, arg);
    case VK::Neutral: {
      Val t = carrier_of(c, f->ne->type);
      Val result_type;
      if (t && t->kind == VK::Pi) result_type = apply_closure(c, t->clo, arg);
      return reflect(c, extend_spine(*f->ne, Elim{Elim::App, arg, {}}, result_type));
    }
    case VK::RecOr: return map_recor(c, f, [&](const Val& b) { return apply(c, b, arg); });
    default: throw std::logic_error("apply: not a function");
  }
}

Val do_first(const Ctx& c, const Val& v) {
  switch (v->kind) {
    case VK::Pair: return v->vs[0];
    case VK::Neutral: {
      Val t = carrier_of(c, v->ne->type);
      Val ty;
      if (t && (t->kind == VK::Sigma || t->kind == VK::CubeProd)) ty = t->vs[0];
      return reflect(c, extend_spine(*v->ne, Elim{Elim::First, nullptr, {}}, ty));
    }
    case VK::RecOr: return map_recor(c, v, [&](const Val& b) { return do_first(c, b); });
    default: throw std::logic_error("first: not a pair");
  }
}

Val do_second(const Ctx& c, const Val& v) {
  switch (v->kind) {
    case VK::Pair: return v->vs[1];
    case VK::Neutral: {
      Val t = carrier_of(c, v->ne->type);
      Val ty;
      if (t && t->kind == VK::Sigma) ty = apply_closure(c, t->clo, do_first(c, v));
      if (t && t->kind == VK::CubeProd) ty = t->vs[1];
      return reflect(c, extend_spine(*v->ne, Elim{Elim::Second, nullptr, {}}, ty));
    }
    case VK::RecOr: return map_recor(c, v, [&](const Val& b) { return do_second(c, b); });
    default: throw std::logic_error("second: not a pair");
  }
}

Val do_j(const Ctx& c, const std::vector<Val>& args, const Val& p) {
  Val fp = force(c, p);
  switch (fp->kind) {
    case VK::Refl: return args[3];
    case VK::Neutral: {
      Val ty = apply(c, apply(c, args[2], args[4]), fp);
      return reflect(c, extend_spine(*fp->ne, Elim{Elim::J, nullptr, args}, ty));
    }
    case VK::RecOr: return map_recor(c, fp, [&](const Val& b) { return do_j(c, args, b); });
    default: throw std::logic_error("idJ: not a path");
  }
}

Val reflect(const Ctx& c, Neutral n) {
  if (n.type) {
    Val t = force(c, n.type);
    if (t->kind == VK::Refine) {
      for (std::size_t i = 1; i + 1 < t->vs.size(); i += 2)
        if (ctx_entails(c, t->vs[i])) return force(c, t->vs[i + 1]);
    }
  }
  return mk_neutral(std::move(n));
}

Val force(const Ctx& c, const Val& v) {
  if (c.topes.empty()) return v;
  switch (v->kind) {
    case VK::RecOr:
      for (std::size_t i = 0; i + 1 < v->vs.size(); i += 2)
        if (ctx_entails(c, v->vs[i])) return force(c, v->vs[i + 1]);
      return v;
    case VK::Neutral: {
      const Neutral& n = *v->ne;
      Val cur = reflect(c, Neutral{n.head, n.head_type, {}, n.head_type});
      for (const Elim& e : n.spine) {
        switch (e.kind) {
          case Elim::App: cur = apply(c, cur, e.arg); break;
          case Elim::First: cur = do_first(c, cur); break;
          case Elim::Second: cur = do_second(c, cur); break;
          case Elim::J: cur = do_j(c, e.j, cur); break;
        }
      }
      return cur;
    }
    default:
      return v;
  }
}

std::pair<Val, std::vector<Val>> unrefine(const Ctx& c, const Val& type) {
  Val t = force(c, type);
  if (t->kind != VK::Refine) return {t, {}};
  return {force(c, t->vs[0]), std::vector<Val>(t->vs.begin() + 1, t->vs.end())};
}

namespace {

std::string fresh_name(const Ctx& c, const std::string& base) {
  if (!c.name_in_use(base)) return base;
  static const char* subs[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  for (int i = 1;; ++i) {
    std::string digits;
    for (int k = i; k > 0; k /= 10) digits = subs[k % 10] + digits;
    std::string cand = base + digits;
    if (!c.name_in_use(cand)) return cand;
  }
}

std::string joined(const Pattern& p) {
  std::vector<std::string> names;
  p.collect_names(names);
  std::string s;
  for (const auto& n : names) s += n == "_" ? "" : n;
  return s.empty() ? "x" : s;
}

Bound bind_leaf(const Ctx& c, const std::string& name, const std::string& display, const Val& type) {
  Bound b{nullptr, c, Pattern::leaf(display)};
  int level = c.depth;
  b.value = reflect(c, Neutral{Head{false, b.display.name, level}, type, {}, type});
  b.ctx.env = extend(c.env, name, b.value, type, level);
  b.ctx.depth = c.depth + 1;
  return b;
}

}  // namespace

Bound bind_fresh(const Ctx& c, const Pattern& p, const Val& type, bool rename) {
  if (p.is_leaf()) {
    std::string base = p.name == "_" ? "x" : p.name;
    return bind_leaf(c, p.name, rename ? fresh_name(c, base) : p.name, type);
  }
  Val t = type ? unrefine(c, type).first : nullptr;
  if (t && (t->kind == VK::Sigma || t->kind == VK::CubeProd)) {
    Bound l = bind_fresh(c, p.parts[0], t->vs[0], rename);
    Val cod = t->kind == VK::Sigma ? apply_closure(l.ctx, t->clo, l.value) : t->vs[1];
    Bound r = bind_fresh(l.ctx, p.parts[1], cod, rename);
    return Bound{mk(VK::Pair, {l.value, r.value}), r.ctx, Pattern::pair(l.display, r.display)};
  }
  // The type does not split: bind one variable and project the components.
  Bound b = bind_leaf(c, "", fresh_name(c, joined(p)), type);
  b.ctx.env = bind_pattern(b.ctx, b.ctx.env, p, b.value);
  return b;
}

}  // namespace stt::kernel
