#include "stt/kernel/kernel.hpp"
#include "stt/syntax/printer.hpp"

namespace stt::kernel {

using syntax::ExprKind;
using syntax::ExprPtr;
using syntax::make;
using syntax::make_binder;
using syntax::Pattern;
using syntax::Span;

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& msg, const Span& span,
                       std::optional<std::string> expected = std::nullopt,
                       std::optional<std::string> actual = std::nullopt) {
  Diagnostic d;
  d.code = code;
  d.message = msg;
  d.span = span;
  d.expected = std::move(expected);
  d.actual = std::move(actual);
  throw CheckError(std::move(d));
}

std::string pp_type(const Ctx& c, const Val& t) { return syntax::pretty_print(quote_type(c, t)); }
std::string pp_term(const Ctx& c, const Val& t, const Val& v) { return syntax::pretty_print(quote(c, t, v)); }

std::string tope_context(const Ctx& c) {
  std::string s;
  for (const auto& h : c.topes) s += (s.empty() ? "" : ", ") + show(c, h);
  return s.empty() ? "⊤" : s;
}

Val value_of(const Ctx& c, const ExprPtr& e) { return eval(c, c.env, e); }

bool is_cube_type(const Ctx& c, const Val& t0) {
  Val t = force(c, t0);
  switch (t->kind) {
    case VK::Unit:
    case VK::Two:
    case VK::CubeProd:
      return true;
    case VK::Neutral:
      return t->ne->type && force(c, t->ne->type)->kind == VK::CubeU;
    default:
      return false;
  }
}

const Val& universe() {
  static const Val u = mk(VK::Universe);
  return u;
}
const Val& cube_universe() {
  static const Val u = mk(VK::CubeU);
  return u;
}
const Val& tope_universe() {
  static const Val u = mk(VK::TopeU);
  return u;
}

ExprPtr rec_bot() { return make(ExprKind::RecBot, Span{}); }

// Checks under an extra hypothesis; an unsatisfiable context accepts anything.
ExprPtr check_under(const Ctx& c, const ExprPtr& e, const Val& type) {
  if (!ctx_satisfiable(c)) return rec_bot();
  return check(c, e, type);
}

// Binder domain: a type, a cube, or a cube restricted by a tope.
struct Domain {
  ExprPtr expr;
  Val value;
  ExprPtr tope;  // under the binder; may be null
};

Domain elaborate_domain(const Ctx& c, const Pattern& p, const ExprPtr& dom, const ExprPtr& tope) {
  if (tope) {
    ExprPtr cube = check(c, dom, cube_universe());
    Val cv = value_of(c, cube);
    Bound b = bind_fresh(c, p, cv, false);
    return Domain{cube, cv, check(b.ctx, tope, tope_universe())};
  }
  if (dom->kind == ExprKind::Shape) {
    // A literal shape used as a domain binds its own variable name.
    const ExprPtr& cube = dom->args[0];
    if (dom->binder.is_leaf() && p.is_leaf() && dom->binder.name == p.name) return elaborate_domain(c, p, cube, dom->args[1]);
  }
  auto [d, dt0] = infer(c, dom);
  Val dt = force(c, dt0);
  if (dt->kind == VK::Universe) return Domain{d, value_of(c, d), nullptr};
  if (dt->kind == VK::CubeU) return Domain{d, value_of(c, d), nullptr};
  if (dt->kind == VK::Pi && is_cube_type(c, dt->vs[0])) {
    Bound x = bind_fresh(c, dt->clo->pattern, dt->vs[0]);
    if (force(x.ctx, apply_closure(x.ctx, dt->clo, x.value))->kind == VK::TopeU) {
      Bound b = bind_fresh(c, p, dt->vs[0], false);
      ExprPtr phi = make(ExprKind::App, dom->span, {d, syntax::pattern_expr(p, dom->span)});
      if (dt->tope) {
        ExprPtr inner = quote_untyped(b.ctx, apply_closure(b.ctx, dt->tope, b.value));
        phi = make(ExprKind::TopeAnd, dom->span, {inner, phi});
      }
      return Domain{quote_type(c, dt->vs[0]), dt->vs[0], phi};
    }
  }
  fail("E-NOT-A-TYPE", "expected a type, a cube or a shape", dom->span, std::nullopt, pp_type(c, dt));
}

// Binds `p` at a domain, adding its tope to the hypotheses.
Bound bind_domain(const Ctx& c, const Pattern& p, const Domain& d) {
  Bound b = bind_fresh(c, p, d.value, false);
  if (d.tope) b.ctx = b.ctx.with_tope(value_of(b.ctx, d.tope));
  return b;
}

void check_agreement(const Ctx& c, const Val& type, const std::vector<Val>& phis, const std::vector<Val>& vals,
                     const std::vector<ExprPtr>& exprs) {
  for (std::size_t i = 0; i < phis.size(); ++i) {
    for (std::size_t j = i + 1; j < phis.size(); ++j) {
      Ctx both = c.with_tope(phis[i]).with_tope(phis[j]);
      if (!ctx_satisfiable(both)) continue;
      if (!equal_terms(both, type, vals[i], vals[j])) {
        fail("E-BOUNDARY",
             "values must agree when (" + show(c, phis[i]) + ") ∧ (" + show(c, phis[j]) + ") holds",
             exprs[j]->span, pp_term(both, type, vals[i]), pp_term(both, type, vals[j]));
      }
    }
  }
}

ExprPtr check_recor(const Ctx& c, const ExprPtr& e, const Val& type) {
  const auto& a = e->args;
  std::vector<ExprPtr> out;
  std::vector<Val> phis, vals;
  std::vector<ExprPtr> bodies;
  for (std::size_t i = 0; i + 1 < a.size(); i += 2) {
    ExprPtr phi = check(c, a[i], tope_universe());
    phis.push_back(value_of(c, phi));
    out.push_back(phi);
    out.push_back(nullptr);
  }
  if (!ctx_entails_any(c, phis)) {
    std::string cover;
    for (const auto& p : phis) cover += (cover.empty() ? "" : " ∨ ") + show(c, p);
    fail("E-TOPE", "recOR branches do not cover the tope context", e->span, cover.empty() ? "⊥" : cover,
         tope_context(c));
  }
  for (std::size_t i = 0; i < phis.size(); ++i) {
    Ctx under = c.with_tope(phis[i]);
    ExprPtr body = check_under(under, a[2 * i + 1], type);
    out[2 * i + 1] = body;
    vals.push_back(value_of(under, body));
    bodies.push_back(a[2 * i + 1]);
  }
  check_agreement(c, type, phis, vals, bodies);
  return make(ExprKind::RecOr, e->span, std::move(out));
}

ExprPtr check_lambda(const Ctx& c, const ExprPtr& e, const Val& pi) {
  Bound b = bind_fresh(c, e->binder, pi->vs[0], false);
  Ctx inner = b.ctx;
  Val pi_tope = pi->tope ? apply_closure(inner, pi->tope, b.value) : nullptr;
  if (const ExprPtr& ann = e->args[0]) {
    Domain d = ann->kind == ExprKind::Shape ? elaborate_domain(c, e->binder, ann->args[0], ann->args[1])
                                            : elaborate_domain(c, e->binder, ann, nullptr);
    if (!equal_types(c, d.value, pi->vs[0]))
      fail("E-TYPE-MISMATCH", "lambda parameter type does not match the function type", ann->span,
           pp_type(c, pi->vs[0]), pp_type(c, d.value));
    if (d.tope) {
      Val ann_tope = value_of(inner, d.tope);
      Ctx hyp = pi_tope ? inner.with_tope(pi_tope) : inner;
      if (!ctx_entails(hyp, ann_tope))
        fail("E-TOPE", "lambda parameter shape is narrower than the function's shape", ann->span,
             show(inner, ann_tope), pi_tope ? show(inner, pi_tope) : "⊤");
    }
  }
  if (pi_tope) inner = inner.with_tope(pi_tope);
  Val cod = apply_closure(inner, pi->clo, b.value);
  ExprPtr body = pi_tope ? check_under(inner, e->args[1], cod) : check(inner, e->args[1], cod);
  return make_binder(ExprKind::Lambda, e->binder, e->span, {nullptr, body});
}

ExprPtr check_refl(const Ctx& c, const ExprPtr& e, const Val& id) {
  const Val& type = id->vs[0];
  ExprPtr term, ann;
  if (e->args[0]) {
    Val t = type;
    if (e->args[1]) {
      auto [a, av] = check_type(c, e->args[1]);
      ann = a;
      t = av;
      if (type && !equal_types(c, t, type))
        fail("E-TYPE-MISMATCH", "refl annotation does not match the identity type", e->args[1]->span,
             pp_type(c, type), pp_type(c, t));
    }
    Val xv;
    if (t) {
      term = check(c, e->args[0], t);
    } else {
      auto [x, xt] = infer(c, e->args[0]);
      term = x;
      t = xt;
    }
    xv = value_of(c, term);
    if (!equal_terms(c, t, xv, id->vs[1]))
      fail("E-TYPE-MISMATCH", "refl term does not match the left endpoint", e->span, pp_term(c, t, id->vs[1]),
           pp_term(c, t, xv));
  }
  if (!equal_terms(c, type, id->vs[1], id->vs[2]))
    fail("E-TYPE-MISMATCH", "refl requires both endpoints to be judgmentally equal", e->span,
         pp_term(c, type, id->vs[1]), pp_term(c, type, id->vs[2]));
  return make(ExprKind::Refl, e->span, {term, ann});
}

Val type_of_entry(const EnvEntry& x, const Span& span) {
  if (x.type) return x.type;
  if (x.value && x.value->kind == VK::Neutral && x.value->ne->type) return x.value->ne->type;
  fail("E-CANNOT-INFER", "cannot infer the type of " + x.name, span);
}

}  // namespace

ExprPtr check(const Ctx& c, const ExprPtr& e, const Val& type0) {
  switch (e->kind) {
    case ExprKind::Hole:
      fail("E-HOLE", "hole under tope context " + tope_context(c), e->span, pp_type(c, type0));
    case ExprKind::RecBot:
      if (ctx_satisfiable(c))
        fail("E-TOPE", "recBOT requires a contradictory tope context", e->span, "⊥", tope_context(c));
      return e;
    case ExprKind::RecOr: return check_recor(c, e, type0);
    default:
      break;
  }
  auto [carrier, cons] = unrefine(c, type0);
  if (!cons.empty()) {
    ExprPtr out = check(c, e, carrier);
    Val v = value_of(c, out);
    for (std::size_t i = 0; i + 1 < cons.size(); i += 2) {
      Ctx under = c.with_tope(cons[i]);
      if (!ctx_satisfiable(under)) continue;
      if (!equal_terms(under, carrier, v, cons[i + 1]))
        fail("E-BOUNDARY", "boundary mismatch when " + show(c, cons[i]) + " holds", e->span,
             pp_term(under, carrier, cons[i + 1]), pp_term(under, carrier, v));
    }
    return out;
  }
  const Val& t = carrier;
  switch (e->kind) {
    case ExprKind::Lambda:
      if (t->kind != VK::Pi)
        fail("E-TYPE-MISMATCH", "a lambda cannot have a non-function type", e->span, pp_type(c, t));
      return check_lambda(c, e, t);
    case ExprKind::Pair:
      if (t->kind == VK::Sigma) {
        ExprPtr a = check(c, e->args[0], t->vs[0]);
        ExprPtr b = check(c, e->args[1], apply_closure(c, t->clo, value_of(c, a)));
        return make(ExprKind::Pair, e->span, {a, b});
      }
      if (t->kind == VK::CubeProd) {
        ExprPtr a = check(c, e->args[0], t->vs[0]);
        ExprPtr b = check(c, e->args[1], t->vs[1]);
        return make(ExprKind::Pair, e->span, {a, b});
      }
      break;
    case ExprKind::Refl:
      if (t->kind == VK::Id) return check_refl(c, e, t);
      if (!e->args[0]) fail("E-TYPE-MISMATCH", "refl checked against a non-identity type", e->span, pp_type(c, t));
      break;
    default:
      break;
  }
  auto [out, actual] = infer(c, e);
  if (!subtype(c, actual, t))
    fail("E-TYPE-MISMATCH", "type mismatch", e->span, pp_type(c, t), pp_type(c, actual));
  return out;
}

std::pair<ExprPtr, Val> infer(const Ctx& c, const ExprPtr& e) {
  const auto& a = e->args;
  switch (e->kind) {
    case ExprKind::Universe:
    case ExprKind::UniverseCube:
    case ExprKind::UniverseTope:
      return {e, universe()};
    case ExprKind::CubeUnit:
    case ExprKind::Cube2:
      return {e, cube_universe()};
    case ExprKind::CubeUnitStar: return {e, mk(VK::Unit)};
    case ExprKind::Cube2_0:
    case ExprKind::Cube2_1:
      return {e, mk(VK::Two)};
    case ExprKind::CubeProduct: {
      auto [l, lt0] = infer(c, a[0]);
      Val lt = force(c, lt0);
      if (lt->kind == VK::CubeU)
        return {make(ExprKind::CubeProduct, e->span, {l, check(c, a[1], cube_universe())}), cube_universe()};
      if (lt->kind == VK::Universe) {
        ExprPtr r = check(c, a[1], universe());
        return {make_binder(ExprKind::Sigma, Pattern::leaf("_"), e->span, {l, r}), universe()};
      }
      fail("E-NOT-A-TYPE", "product of something that is neither a type nor a cube", a[0]->span, std::nullopt,
           pp_type(c, lt));
    }
    case ExprKind::TopeTop:
    case ExprKind::TopeBottom:
      return {e, tope_universe()};
    case ExprKind::TopeAnd: {
      ExprPtr l = check(c, a[0], tope_universe());
      ExprPtr r = check(c.with_tope(value_of(c, l)), a[1], tope_universe());
      return {make(e->kind, e->span, {l, r}), tope_universe()};
    }
    case ExprKind::TopeOr:
      return {make(e->kind, e->span, {check(c, a[0], tope_universe()), check(c, a[1], tope_universe())}),
              tope_universe()};
    case ExprKind::TopeEq: {
      auto [l, lt] = infer(c, a[0]);
      if (!is_cube_type(c, lt))
        fail("E-TYPE-MISMATCH", "tope equality needs points of a cube", a[0]->span, "a point of a cube",
             pp_type(c, lt));
      return {make(ExprKind::TopeEq, e->span, {l, check(c, a[1], lt)}), tope_universe()};
    }
    case ExprKind::TopeLeq: {
      Val two = mk(VK::Two);
      return {make(ExprKind::TopeLeq, e->span, {check(c, a[0], two), check(c, a[1], two)}), tope_universe()};
    }
    case ExprKind::Shape: {
      ExprPtr cube = check(c, a[0], cube_universe());
      Val cv = value_of(c, cube);
      Bound b = bind_fresh(c, e->binder, cv, false);
      ExprPtr phi = check(b.ctx, a[1], tope_universe());
      return {make_binder(ExprKind::Shape, e->binder, e->span, {cube, phi}),
              mk_pi(cv, const_closure(tope_universe()))};
    }
    case ExprKind::Pi: {
      Pattern binder = e->binder;
      Domain d = elaborate_domain(c, binder, a[0], a[2]);
      if (d.tope && binder.is_leaf() && binder.name == "_") {
        // An anonymous shape binder still occurs in its tope.
        std::string n = "t";
        for (int i = 1; syntax::occurs_free(n, a[0]) || syntax::occurs_free(n, a[1]) || (a[2] && syntax::occurs_free(n, a[2])); ++i)
          n = "t" + std::to_string(i);
        binder = Pattern::leaf(n);
        d = elaborate_domain(c, binder, a[0], a[2]);
      }
      Bound b = bind_domain(c, binder, d);
      ExprPtr cod = check_type(b.ctx, a[1]).first;
      return {make_binder(ExprKind::Pi, binder, e->span, {d.expr, cod, d.tope}), universe()};
    }
    case ExprKind::Sigma: {
      Domain d = elaborate_domain(c, e->binder, a[0], nullptr);
      if (d.tope) fail("E-NOT-A-TYPE", "Σ over a shape is not supported", a[0]->span);
      Bound b = bind_domain(c, e->binder, d);
      ExprPtr cod = check_type(b.ctx, a[1]).first;
      return {make_binder(ExprKind::Sigma, e->binder, e->span, {d.expr, cod}), universe()};
    }
    case ExprKind::Lambda: {
      if (!a[0]) fail("E-CANNOT-INFER", "cannot infer the type of an unannotated lambda", e->span);
      const ExprPtr& ann = a[0];
      Domain d = ann->kind == ExprKind::Shape ? elaborate_domain(c, e->binder, ann->args[0], ann->args[1])
                                              : elaborate_domain(c, e->binder, ann, nullptr);
      Bound b = bind_domain(c, e->binder, d);
      auto [body, bt] = infer(b.ctx, a[1]);
      ExprPtr cod = quote_type(b.ctx, bt);
      Val pi = mk_pi(d.value, closure(c.env, e->binder, cod), d.tope ? closure(c.env, e->binder, d.tope) : nullptr);
      return {make_binder(ExprKind::Lambda, e->binder, e->span, {nullptr, body}), pi};
    }
    case ExprKind::App: {
      auto [f, ft] = infer(c, a[0]);
      Val t = unrefine(c, ft).first;
      if (t->kind != VK::Pi) fail("E-NOT-FUNCTION", "applying a non-function", a[0]->span, std::nullopt, pp_type(c, t));
      ExprPtr arg = check(c, a[1], t->vs[0]);
      Val av = value_of(c, arg);
      if (t->tope) {
        Val phi = apply_closure(c, t->tope, av);
        if (!ctx_entails(c, phi))
          fail("E-TOPE", "argument is outside the function's shape", a[1]->span, show(c, phi), tope_context(c));
      }
      return {make(ExprKind::App, e->span, {f, arg}), apply_closure(c, t->clo, av)};
    }
    case ExprKind::First:
    case ExprKind::Second: {
      auto [p, pt] = infer(c, a[0]);
      Val t = unrefine(c, pt).first;
      ExprPtr out = make(e->kind, e->span, {p});
      if (t->kind == VK::Sigma) {
        if (e->kind == ExprKind::First) return {out, t->vs[0]};
        return {out, apply_closure(c, t->clo, do_first(c, value_of(c, p)))};
      }
      if (t->kind == VK::CubeProd) return {out, t->vs[e->kind == ExprKind::First ? 0 : 1]};
      fail("E-NOT-PAIR", "projection from a non-pair", a[0]->span, std::nullopt, pp_type(c, t));
    }
    case ExprKind::Pair: {
      auto [l, lt] = infer(c, a[0]);
      auto [r, rt] = infer(c, a[1]);
      ExprPtr out = make(ExprKind::Pair, e->span, {l, r});
      if (is_cube_type(c, lt) && is_cube_type(c, rt)) return {out, mk(VK::CubeProd, {lt, rt})};
      return {out, mk_sigma(lt, const_closure(rt))};
    }
    case ExprKind::IdType: {
      ExprPtr ty, lhs;
      Val tv;
      if (a[2]) {
        std::tie(ty, tv) = check_type(c, a[2]);
        lhs = check(c, a[0], tv);
      } else {
        std::tie(lhs, tv) = infer(c, a[0]);
        tv = force(c, tv);
        if (tv->kind == VK::Refine) tv = tv->vs[0];
        ty = quote_type(c, tv);
      }
      ExprPtr rhs = check(c, a[1], tv);
      return {make(ExprKind::IdType, e->span, {lhs, rhs, ty}), universe()};
    }
    case ExprKind::Refl: {
      if (!a[0]) fail("E-CANNOT-INFER", "cannot infer the type of refl without an annotation", e->span);
      ExprPtr x, ann;
      Val tv;
      if (a[1]) {
        std::tie(ann, tv) = check_type(c, a[1]);
        x = check(c, a[0], tv);
      } else {
        std::tie(x, tv) = infer(c, a[0]);
      }
      Val xv = value_of(c, x);
      return {make(ExprKind::Refl, e->span, {x, ann}), mk(VK::Id, {tv, xv, xv})};
    }
    case ExprKind::IndPath: {
      auto [ty, tv] = check_type(c, a[0]);
      ExprPtr base = check(c, a[1], tv);
      Val bv = value_of(c, base);
      Val motive_type = mk_pi(tv, native_closure("x", [tv, bv](const Val& x) {
                                return mk_pi(mk(VK::Id, {tv, bv, x}), const_closure(universe()));
                              }));
      ExprPtr motive = check(c, a[2], motive_type);
      Val mv = value_of(c, motive);
      ExprPtr d = check(c, a[3], apply(c, apply(c, mv, bv), mk(VK::Refl)));
      ExprPtr x = check(c, a[4], tv);
      Val xv = value_of(c, x);
      ExprPtr p = check(c, a[5], mk(VK::Id, {tv, bv, xv}));
      Val result = apply(c, apply(c, mv, xv), value_of(c, p));
      return {make(ExprKind::IndPath, e->span, {ty, base, motive, d, x, p}), result};
    }
    case ExprKind::Refinement: {
      auto [carrier, cv] = check_type(c, a[0]);
      std::vector<ExprPtr> out{carrier};
      std::vector<Val> phis, vals;
      std::vector<ExprPtr> bodies;
      for (std::size_t i = 1; i + 1 < a.size(); i += 2) {
        ExprPtr phi = check(c, a[i], tope_universe());
        Val pv = value_of(c, phi);
        Ctx under = c.with_tope(pv);
        ExprPtr body = check_under(under, a[i + 1], cv);
        out.push_back(phi);
        out.push_back(body);
        phis.push_back(pv);
        vals.push_back(value_of(under, body));
        bodies.push_back(a[i + 1]);
      }
      check_agreement(c, cv, phis, vals, bodies);
      return {make(ExprKind::Refinement, e->span, std::move(out)), universe()};
    }
    case ExprKind::RecOr: {
      if (a.size() < 2) break;
      ExprPtr phi = check(c, a[0], tope_universe());
      Ctx under = c.with_tope(value_of(c, phi));
      auto [first, ft] = infer(under, a[1]);
      (void)first;
      return {check_recor(c, e, ft), ft};
    }
    case ExprKind::Var: {
      if (const EnvEntry* x = c.lookup(e->name)) return {e, type_of_entry(*x, e->span)};
      if (c.globals) {
        if (const GlobalEntry* g = c.globals->lookup(e->name)) return {e, g->type};
      }
      fail("E-UNBOUND", "unbound variable " + e->name, e->span);
    }
    case ExprKind::GlobalRef: {
      const GlobalEntry* g = c.globals ? c.globals->lookup(e->name) : nullptr;
      if (!g) fail("E-UNBOUND", "unknown definition " + e->name, e->span);
      return {e, g->type};
    }
    case ExprKind::TypeAscription: {
      auto [ty, tv] = check_type(c, a[1]);
      return {make(ExprKind::TypeAscription, e->span, {check(c, a[0], tv), ty}), tv};
    }
    case ExprKind::Hole:
      fail("E-HOLE", "hole with unknown type under tope context " + tope_context(c), e->span);
    case ExprKind::RecBot:
      break;
  }
  fail("E-CANNOT-INFER", "cannot infer a type here; add an annotation", e->span);
}

std::pair<ExprPtr, Val> check_type(const Ctx& c, const ExprPtr& e) {
  auto [out, t0] = infer(c, e);
  Val t = force(c, t0);
  if (t->kind != VK::Universe && t->kind != VK::CubeU)
    fail("E-NOT-A-TYPE", "expected a type", e->span, "U", pp_type(c, t));
  return {out, value_of(c, out)};
}

ExprPtr normalize(const Ctx& c, const ExprPtr& e) {
  auto [out, t] = infer(c, e);
  return quote(c, t, value_of(c, out));
}

}  // namespace stt::kernel
