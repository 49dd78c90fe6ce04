#include <functional>

#include "stt/kernel/kernel.hpp"

namespace stt::kernel {

namespace {

enum class Mode { Equal, Sub };

using Goal = std::function<bool(const Ctx&)>;

void flatten_conj(const Val& v, std::vector<Val>& out) {
  if (v->kind == VK::And) {
    flatten_conj(v->vs[0], out);
    flatten_conj(v->vs[1], out);
  } else {
    out.push_back(v);
  }
}

// Replaces the first disjunctive hypothesis by each of its sides.
bool split_hyps(const Ctx& c, Ctx& left, Ctx& right) {
  std::vector<Val> flat;
  for (const auto& h : c.topes) flatten_conj(h, flat);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i]->kind != VK::Or) continue;
    left = c;
    right = c;
    left.topes = flat;
    right.topes = flat;
    left.topes[i] = flat[i]->vs[0];
    right.topes[i] = flat[i]->vs[1];
    return true;
  }
  return false;
}

// Runs `goal`; on failure, retries under each side of a disjunctive
// hypothesis. Unsatisfiable contexts make every goal hold.
bool with_split(const Ctx& c, const Goal& goal) {
  if (!ctx_satisfiable(c)) return true;
  if (goal(c)) return true;
  Ctx l, r;
  if (!split_hyps(c, l, r)) return false;
  return with_split(l, goal) && with_split(r, goal);
}

// For an unresolved recOR, compares under each branch condition.
bool split_recor(const Ctx& c, const Val& r, const Goal& goal) {
  std::vector<Val> phis;
  for (std::size_t i = 0; i + 1 < r->vs.size(); i += 2) phis.push_back(r->vs[i]);
  if (!ctx_entails_any(c, phis)) return false;
  for (const auto& phi : phis)
    if (!with_split(c.with_tope(phi), goal)) return false;
  return true;
}

class Conv {
 public:
  bool terms(const Ctx& c, const Val& type, const Val& a0, const Val& b0) {
    Val a = force(c, a0), b = force(c, b0);
    if (a.get() == b.get()) return true;
    if (a->kind == VK::RecOr || b->kind == VK::RecOr) {
      return split_recor(c, a->kind == VK::RecOr ? a : b,
                         [&](const Ctx& c2) { return terms(c2, type, a, b); });
    }
    if (!type) return generic(c, a, b);
    Val t = unrefine(c, type).first;
    switch (t->kind) {
      case VK::Pi: {
        Bound x = bind_fresh(c, t->clo->pattern, t->vs[0]);
        Ctx inner = x.ctx;
        Val cod = apply_closure(inner, t->clo, x.value);
        if (t->tope) {
          inner = inner.with_tope(apply_closure(inner, t->tope, x.value));
          return with_split(inner, [&](const Ctx& c2) {
            return terms(c2, cod, apply(c2, a, x.value), apply(c2, b, x.value));
          });
        }
        return terms(inner, cod, apply(inner, a, x.value), apply(inner, b, x.value));
      }
      case VK::Sigma: {
        Val a1 = do_first(c, a), b1 = do_first(c, b);
        return terms(c, t->vs[0], a1, b1) && terms(c, apply_closure(c, t->clo, a1), do_second(c, a), do_second(c, b));
      }
      case VK::CubeProd:
        return terms(c, t->vs[0], do_first(c, a), do_first(c, b)) &&
               terms(c, t->vs[1], do_second(c, a), do_second(c, b));
      case VK::Unit: return true;
      case VK::Two: return ctx_entails(c, mk(VK::TEq, {a, b}));
      case VK::TopeU: return ctx_entails(c.with_tope(a), b) && ctx_entails(c.with_tope(b), a);
      case VK::Universe:
      case VK::CubeU:
        return types(c, a, b, Mode::Equal);
      case VK::Id:
        if (a->kind == VK::Refl && b->kind == VK::Refl) return true;
        return generic(c, a, b);
      default:
        return generic(c, a, b);
    }
  }

  bool types(const Ctx& c, const Val& a0, const Val& b0, Mode mode) {
    Val a = force(c, a0), b = force(c, b0);
    if (a.get() == b.get()) return true;
    if (a->kind == VK::RecOr || b->kind == VK::RecOr) {
      return split_recor(c, a->kind == VK::RecOr ? a : b,
                         [&](const Ctx& c2) { return types(c2, a, b, mode); });
    }
    if (a->kind == VK::Refine || b->kind == VK::Refine) return refinements(c, a, b, mode);
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case VK::Universe:
      case VK::CubeU:
      case VK::TopeU:
      case VK::Unit:
      case VK::Two:
        return true;
      case VK::CubeProd:
        return types(c, a->vs[0], b->vs[0], Mode::Equal) && types(c, a->vs[1], b->vs[1], Mode::Equal);
      case VK::Pi: {
        if (!types(c, a->vs[0], b->vs[0], Mode::Equal)) return false;
        Bound x = bind_fresh(c, b->clo->pattern, b->vs[0]);
        Ctx inner = x.ctx;
        Val ta = a->tope ? apply_closure(inner, a->tope, x.value) : mk(VK::Top);
        Val tb = b->tope ? apply_closure(inner, b->tope, x.value) : mk(VK::Top);
        if (!ctx_entails(inner.with_tope(tb), ta)) return false;
        if (mode == Mode::Equal && !ctx_entails(inner.with_tope(ta), tb)) return false;
        if (b->tope) inner = inner.with_tope(tb);
        Val ca = apply_closure(inner, a->clo, x.value), cb = apply_closure(inner, b->clo, x.value);
        if (!b->tope) return types(inner, ca, cb, mode);
        return with_split(inner, [&](const Ctx& c2) { return types(c2, ca, cb, mode); });
      }
      case VK::Sigma: {
        if (!types(c, a->vs[0], b->vs[0], mode)) return false;
        Bound x = bind_fresh(c, a->clo->pattern, a->vs[0]);
        return types(x.ctx, apply_closure(x.ctx, a->clo, x.value), apply_closure(x.ctx, b->clo, x.value), mode);
      }
      case VK::Id: {
        const Val& ta = a->vs[0];
        const Val& tb = b->vs[0];
        if (ta && tb && !types(c, ta, tb, Mode::Equal)) return false;
        Val t = ta ? ta : tb;
        return terms(c, t, a->vs[1], b->vs[1]) && terms(c, t, a->vs[2], b->vs[2]);
      }
      case VK::Top:
      case VK::Bot:
      case VK::And:
      case VK::Or:
      case VK::TEq:
      case VK::TLeq:
        return ctx_entails(c.with_tope(a), b) && ctx_entails(c.with_tope(b), a);
      default:
        return generic(c, a, b);
    }
  }

 private:
  // Values compared without a usable type.
  bool generic(const Ctx& c, const Val& a, const Val& b) {
    if (a->kind == VK::Neutral && b->kind == VK::Neutral) return neutrals(c, *a->ne, *b->ne);
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case VK::Refl:
      case VK::Zero:
      case VK::One:
      case VK::Star:
        return true;
      case VK::Pair:
        return terms(c, nullptr, a->vs[0], b->vs[0]) && terms(c, nullptr, a->vs[1], b->vs[1]);
      case VK::Lambda: {
        Bound x = bind_fresh(c, a->clo->pattern, nullptr);
        return terms(x.ctx, nullptr, apply(x.ctx, a, x.value), apply(x.ctx, b, x.value));
      }
      default:
        return types(c, a, b, Mode::Equal);
    }
  }

  bool neutrals(const Ctx& c, const Neutral& a, const Neutral& b) {
    if (a.head.global != b.head.global || a.head.name != b.head.name || a.head.level != b.head.level) return false;
    if (a.spine.size() != b.spine.size()) return false;
    Val ty = a.head_type;
    Neutral prefix{a.head, a.head_type, {}, a.head_type};
    for (std::size_t i = 0; i < a.spine.size(); ++i) {
      const Elim& ea = a.spine[i];
      const Elim& eb = b.spine[i];
      if (ea.kind != eb.kind) return false;
      Val t = ty ? unrefine(c, ty).first : nullptr;
      Val next;
      switch (ea.kind) {
        case Elim::App: {
          bool pi = t && t->kind == VK::Pi;
          if (!terms(c, pi ? t->vs[0] : nullptr, ea.arg, eb.arg)) return false;
          if (pi) next = apply_closure(c, t->clo, ea.arg);
          break;
        }
        case Elim::First:
          if (t && (t->kind == VK::Sigma || t->kind == VK::CubeProd)) next = t->vs[0];
          break;
        case Elim::Second:
          if (t && t->kind == VK::Sigma) next = apply_closure(c, t->clo, do_first(c, mk_neutral(prefix)));
          if (t && t->kind == VK::CubeProd) next = t->vs[1];
          break;
        case Elim::J: {
          const auto& ja = ea.j;
          const auto& jb = eb.j;
          if (!types(c, ja[0], jb[0], Mode::Equal)) return false;
          if (!terms(c, ja[0], ja[1], jb[1])) return false;
          if (!terms(c, nullptr, ja[2], jb[2])) return false;
          Val motive = apply(c, apply(c, ja[2], ja[1]), mk(VK::Refl));
          if (!terms(c, motive, ja[3], jb[3])) return false;
          if (!terms(c, ja[0], ja[4], jb[4])) return false;
          next = apply(c, apply(c, ja[2], ja[4]), mk_neutral(prefix));
          break;
        }
      }
      prefix.spine.push_back(ea);
      prefix.type = next;
      ty = next;
    }
    return true;
  }

  // A[φᵢ ↦ aᵢ] <: B[ψⱼ ↦ bⱼ]: carriers are subtypes, and every constraint of
  // B is covered by constraints of A with agreeing values.
  bool refinements(const Ctx& c, const Val& a, const Val& b, Mode mode) {
    if (mode == Mode::Equal) return refinements(c, a, b, Mode::Sub) && refinements(c, b, a, Mode::Sub);
    auto [ca, cons_a] = unrefine(c, a);
    auto [cb, cons_b] = unrefine(c, b);
    if (!types(c, ca, cb, Mode::Sub)) return false;
    std::vector<Val> phis;
    for (std::size_t i = 0; i + 1 < cons_a.size(); i += 2) phis.push_back(cons_a[i]);
    for (std::size_t j = 0; j + 1 < cons_b.size(); j += 2) {
      Ctx under = c.with_tope(cons_b[j]);
      if (!ctx_satisfiable(under)) continue;
      if (!ctx_entails_any(under, phis)) return false;
      for (std::size_t i = 0; i + 1 < cons_a.size(); i += 2) {
        Ctx both = under.with_tope(cons_a[i]);
        const Val& va = cons_a[i + 1];
        const Val& vb = cons_b[j + 1];
        if (!with_split(both, [&](const Ctx& c2) { return terms(c2, cb, va, vb); })) return false;
      }
    }
    return true;
  }
};

}  // namespace

bool equal_terms(const Ctx& c, const Val& type, const Val& a, const Val& b) {
  Conv conv;
  return with_split(c, [&](const Ctx& c2) { return conv.terms(c2, type, a, b); });
}

bool equal_types(const Ctx& c, const Val& a, const Val& b) {
  Conv conv;
  return with_split(c, [&](const Ctx& c2) { return conv.types(c2, a, b, Mode::Equal); });
}

bool subtype(const Ctx& c, const Val& a, const Val& b) {
  Conv conv;
  return with_split(c, [&](const Ctx& c2) { return conv.types(c2, a, b, Mode::Sub); });
}

}  // namespace stt::kernel
