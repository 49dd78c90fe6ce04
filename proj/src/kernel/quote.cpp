#include <stdexcept>

#include "stt/kernel/kernel.hpp"
#include "stt/syntax/printer.hpp"

namespace stt::kernel {

using syntax::ExprKind;
using syntax::ExprPtr;
using syntax::make;
using syntax::Pattern;
using syntax::Span;

namespace {

class Quoter {
 public:
  ExprPtr typed(const Ctx& c, const Val& type, const Val& v0) {
    if (!type) return value(c, v0);
    Val v = force(c, v0);
    Val t = unrefine(c, type).first;
    if (v->kind == VK::RecOr) return recor(c, v, t);
    switch (t->kind) {
      case VK::Pi: {
        Bound b = bind_fresh(c, t->clo->pattern, t->vs[0]);
        Ctx inner = b.ctx;
        if (t->tope) inner = inner.with_tope(apply_closure(inner, t->tope, b.value));
        ExprPtr body = typed(inner, apply_closure(inner, t->clo, b.value), apply(inner, v, b.value));
        return syntax::make_binder(ExprKind::Lambda, b.display, Span{}, {nullptr, body});
      }
      case VK::Sigma: {
        Val a = do_first(c, v);
        return make(ExprKind::Pair, Span{},
                    {typed(c, t->vs[0], a), typed(c, apply_closure(c, t->clo, a), do_second(c, v))});
      }
      case VK::CubeProd:
        return make(ExprKind::Pair, Span{},
                    {typed(c, t->vs[0], do_first(c, v)), typed(c, t->vs[1], do_second(c, v))});
      default:
        return value(c, v);
    }
  }

  ExprPtr value(const Ctx& c, const Val& v0) {
    Val v = force(c, v0);
    switch (v->kind) {
      case VK::Universe: return make(ExprKind::Universe, Span{});
      case VK::CubeU: return make(ExprKind::UniverseCube, Span{});
      case VK::TopeU: return make(ExprKind::UniverseTope, Span{});
      case VK::Unit: return make(ExprKind::CubeUnit, Span{});
      case VK::Two: return make(ExprKind::Cube2, Span{});
      case VK::Star: return make(ExprKind::CubeUnitStar, Span{});
      case VK::Zero: return make(ExprKind::Cube2_0, Span{});
      case VK::One: return make(ExprKind::Cube2_1, Span{});
      case VK::Top: return make(ExprKind::TopeTop, Span{});
      case VK::Bot: return make(ExprKind::TopeBottom, Span{});
      case VK::Refl: return make(ExprKind::Refl, Span{}, {nullptr, nullptr});
      case VK::CubeProd: return binary(c, ExprKind::CubeProduct, v);
      case VK::And: return binary(c, ExprKind::TopeAnd, v);
      case VK::Or: return binary(c, ExprKind::TopeOr, v);
      case VK::TEq: return binary(c, ExprKind::TopeEq, v);
      case VK::TLeq: return binary(c, ExprKind::TopeLeq, v);
      case VK::Pair: return binary(c, ExprKind::Pair, v);
      case VK::Pi: {
        Bound b = bind_fresh(c, v->clo->pattern, v->vs[0]);
        Ctx inner = b.ctx;
        ExprPtr tope;
        if (v->tope) {
          Val phi = apply_closure(inner, v->tope, b.value);
          tope = value(inner, phi);
          inner = inner.with_tope(phi);
        }
        ExprPtr cod = value(inner, apply_closure(inner, v->clo, b.value));
        return syntax::make_binder(ExprKind::Pi, b.display, Span{}, {value(c, v->vs[0]), cod, tope});
      }
      case VK::Sigma: {
        Bound b = bind_fresh(c, v->clo->pattern, v->vs[0]);
        ExprPtr cod = value(b.ctx, apply_closure(b.ctx, v->clo, b.value));
        return syntax::make_binder(ExprKind::Sigma, b.display, Span{}, {value(c, v->vs[0]), cod});
      }
      case VK::Lambda: {
        Bound b = bind_fresh(c, v->clo->pattern, nullptr);
        ExprPtr body = value(b.ctx, apply_closure(b.ctx, v->clo, b.value));
        return syntax::make_binder(ExprKind::Lambda, b.display, Span{}, {nullptr, body});
      }
      case VK::Id: {
        const Val& ty = v->vs[0];
        return make(ExprKind::IdType, Span{},
                    {typed(c, ty, v->vs[1]), typed(c, ty, v->vs[2]), ty ? value(c, ty) : nullptr});
      }
      case VK::Refine: {
        std::vector<ExprPtr> args{value(c, v->vs[0])};
        for (std::size_t i = 1; i + 1 < v->vs.size(); i += 2) {
          args.push_back(value(c, v->vs[i]));
          Ctx under = c.with_tope(v->vs[i]);
          args.push_back(typed(under, v->vs[0], v->vs[i + 1]));
        }
        return make(ExprKind::Refinement, Span{}, std::move(args));
      }
      case VK::RecOr: return recor(c, v, nullptr);
      case VK::Neutral: return neutral(c, *v->ne);
    }
    throw std::logic_error("quote: unhandled value");
  }

 private:
  ExprPtr binary(const Ctx& c, ExprKind k, const Val& v) {
    return make(k, Span{}, {value(c, v->vs[0]), value(c, v->vs[1])});
  }

  ExprPtr recor(const Ctx& c, const Val& v, const Val& type) {
    if (v->vs.empty()) return make(ExprKind::RecBot, Span{});
    std::vector<ExprPtr> args;
    for (std::size_t i = 0; i + 1 < v->vs.size(); i += 2) {
      args.push_back(value(c, v->vs[i]));
      Ctx under = c.with_tope(v->vs[i]);
      args.push_back(type ? typed(under, type, v->vs[i + 1]) : value(under, v->vs[i + 1]));
    }
    return make(ExprKind::RecOr, Span{}, std::move(args));
  }

  ExprPtr head(const Head& h) {
    if (h.global) return syntax::make_global(h.name, Span{});
    return syntax::make_var(h.name, Span{});
  }

  ExprPtr neutral(const Ctx& c, const Neutral& n) {
    ExprPtr out = head(n.head);
    Val ty = n.head_type;
    Neutral prefix{n.head, n.head_type, {}, n.head_type};
    for (const Elim& e : n.spine) {
      Val t = ty ? unrefine(c, ty).first : nullptr;
      Val next;
      switch (e.kind) {
        case Elim::App: {
          Val dom = t && t->kind == VK::Pi ? t->vs[0] : nullptr;
          out = make(ExprKind::App, Span{}, {out, typed(c, dom, e.arg)});
          if (t && t->kind == VK::Pi) next = apply_closure(c, t->clo, e.arg);
          break;
        }
        case Elim::First:
          out = make(ExprKind::First, Span{}, {out});
          if (t && (t->kind == VK::Sigma || t->kind == VK::CubeProd)) next = t->vs[0];
          break;
        case Elim::Second:
          out = make(ExprKind::Second, Span{}, {out});
          if (t && t->kind == VK::Sigma) next = apply_closure(c, t->clo, do_first(c, mk_neutral(prefix)));
          if (t && t->kind == VK::CubeProd) next = t->vs[1];
          break;
        case Elim::J: {
          const auto& j = e.j;
          Val motive_app = apply(c, apply(c, j[2], j[1]), mk(VK::Refl));
          out = make(ExprKind::IndPath, Span{},
                     {value(c, j[0]), typed(c, j[0], j[1]), value(c, j[2]), typed(c, motive_app, j[3]),
                      typed(c, j[0], j[4]), out});
          next = apply(c, apply(c, j[2], j[4]), mk_neutral(prefix));
          break;
        }
      }
      prefix.spine.push_back(e);
      prefix.type = next;
      ty = next;
    }
    return out;
  }
};

}  // namespace

ExprPtr quote(const Ctx& c, const Val& type, const Val& v) { return Quoter().typed(c, type, v); }

ExprPtr quote_type(const Ctx& c, const Val& t) { return Quoter().value(c, t); }

ExprPtr quote_untyped(const Ctx& c, const Val& v) { return Quoter().value(c, v); }

std::string show(const Ctx& c, const Val& v) { return syntax::pretty_print(quote_untyped(c, v)); }

}  // namespace stt::kernel
