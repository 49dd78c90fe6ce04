#include "stt/syntax/expr.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace stt::syntax {

Span Span::merge(const Span& a, const Span& b) {
  Span s = a;
  if (b.end_line > s.end_line || (b.end_line == s.end_line && b.end_col > s.end_col)) {
    s.end_line = b.end_line;
    s.end_col = b.end_col;
  }
  return s;
}

std::string Span::to_string() const {
  return file + ":" + std::to_string(start_line) + ":" + std::to_string(start_col) + "-" +
         std::to_string(end_line) + ":" + std::to_string(end_col);
}

Pattern Pattern::pair(Pattern a, Pattern b) {
  Pattern p;
  p.parts.push_back(std::move(a));
  p.parts.push_back(std::move(b));
  return p;
}

void Pattern::collect_names(std::vector<std::string>& out) const {
  if (is_leaf()) {
    out.push_back(name);
    return;
  }
  for (const auto& p : parts) p.collect_names(out);
}

bool Pattern::binds(const std::string& n) const {
  if (is_leaf()) return name == n;
  return std::any_of(parts.begin(), parts.end(), [&](const Pattern& p) { return p.binds(n); });
}

ExprPtr make(ExprKind kind, Span span, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->span = std::move(span);
  e->args = std::move(args);
  return e;
}

ExprPtr make_var(std::string name, Span span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->span = std::move(span);
  e->name = std::move(name);
  return e;
}

ExprPtr make_global(std::string name, Span span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::GlobalRef;
  e->span = std::move(span);
  e->name = std::move(name);
  return e;
}

ExprPtr make_binder(ExprKind kind, Pattern binder, Span span, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->span = std::move(span);
  e->binder = std::move(binder);
  e->args = std::move(args);
  return e;
}

ExprPtr pattern_expr(const Pattern& p, const Span& span) {
  if (p.is_leaf()) return make_var(p.name, span);
  return make(ExprKind::Pair, span, {pattern_expr(p.parts[0], span), pattern_expr(p.parts[1], span)});
}

bool is_keyword(const std::string& ident) {
  static const std::unordered_set<std::string> kws = {
      "U",      "CUBE",   "TOPE",  "TOP", "BOT", "refl", "first", "second", "π₁", "π₂",
      "recOR",  "recBOT", "idJ",   "as",  "uses", "Sigma", "_"};
  return kws.count(ident) > 0;
}

namespace {

// Bound names map to the binding depth on each side.
struct AlphaScope {
  std::vector<std::pair<std::string, int>> left, right;
  int depth = 0;

  static int lookup(const std::vector<std::pair<std::string, int>>& s, const std::string& n) {
    for (auto it = s.rbegin(); it != s.rend(); ++it)
      if (it->first == n) return it->second;
    return -1;
  }
};

bool same_shape(const Pattern& a, const Pattern& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return true;
  return same_shape(a.parts[0], b.parts[0]) && same_shape(a.parts[1], b.parts[1]);
}

void push_pattern(std::vector<std::pair<std::string, int>>& s, const Pattern& p, int& depth) {
  std::vector<std::string> names;
  p.collect_names(names);
  for (auto& n : names) s.emplace_back(n, depth++);
}

bool alpha(const ExprPtr& a, const ExprPtr& b, AlphaScope& sc);

bool alpha_binder(const ExprPtr& a, const ExprPtr& b, AlphaScope& sc, std::size_t first_scoped) {
  // Children before first_scoped are outside the binder.
  for (std::size_t i = 0; i < first_scoped; ++i)
    if (!alpha(a->args[i], b->args[i], sc)) return false;
  if (!same_shape(a->binder, b->binder)) return false;
  auto l = sc.left.size(), r = sc.right.size();
  int d = sc.depth, dl = sc.depth, dr = sc.depth;
  push_pattern(sc.left, a->binder, dl);
  push_pattern(sc.right, b->binder, dr);
  sc.depth = dl;
  bool ok = true;
  for (std::size_t i = first_scoped; ok && i < a->args.size(); ++i) ok = alpha(a->args[i], b->args[i], sc);
  sc.left.resize(l);
  sc.right.resize(r);
  sc.depth = d;
  return ok;
}

bool alpha(const ExprPtr& a, const ExprPtr& b, AlphaScope& sc) {
  if (!a || !b) return !a && !b;
  bool a_name = a->kind == ExprKind::Var || a->kind == ExprKind::GlobalRef;
  bool b_name = b->kind == ExprKind::Var || b->kind == ExprKind::GlobalRef;
  if (a_name || b_name) {
    if (!a_name || !b_name) return false;
    int da = AlphaScope::lookup(sc.left, a->name);
    int db = AlphaScope::lookup(sc.right, b->name);
    if (da >= 0 || db >= 0) return da == db;
    return a->name == b->name;
  }
  if (a->kind != b->kind || a->args.size() != b->args.size()) return false;
  switch (a->kind) {
    case ExprKind::Shape:
      return alpha_binder(a, b, sc, 1);
    case ExprKind::Pi:
    case ExprKind::Sigma:
      return alpha_binder(a, b, sc, 1);
    case ExprKind::Lambda:
      return alpha_binder(a, b, sc, 1);
    default:
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha(a->args[i], b->args[i], sc)) return false;
      return true;
  }
}

void free_names_rec(const ExprPtr& e, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (!e) return;
  switch (e->kind) {
    case ExprKind::Var:
    case ExprKind::GlobalRef:
      if (std::find(bound.begin(), bound.end(), e->name) == bound.end() &&
          std::find(out.begin(), out.end(), e->name) == out.end())
        out.push_back(e->name);
      return;
    case ExprKind::Shape:
    case ExprKind::Pi:
    case ExprKind::Sigma:
    case ExprKind::Lambda: {
      free_names_rec(e->args[0], bound, out);
      auto mark = bound.size();
      e->binder.collect_names(bound);
      for (std::size_t i = 1; i < e->args.size(); ++i) free_names_rec(e->args[i], bound, out);
      bound.resize(mark);
      return;
    }
    default:
      for (const auto& c : e->args) free_names_rec(c, bound, out);
  }
}

ExprPtr subst_rec(const ExprPtr& e, std::vector<std::string>& bound,
                  const std::function<ExprPtr(const Expr&)>& replace) {
  if (!e) return e;
  switch (e->kind) {
    case ExprKind::Var:
    case ExprKind::GlobalRef: {
      if (std::find(bound.begin(), bound.end(), e->name) != bound.end()) return e;
      ExprPtr r = replace(*e);
      return r ? r : e;
    }
    case ExprKind::Shape:
    case ExprKind::Pi:
    case ExprKind::Sigma:
    case ExprKind::Lambda: {
      std::vector<ExprPtr> args{subst_rec(e->args[0], bound, replace)};
      auto mark = bound.size();
      e->binder.collect_names(bound);
      for (std::size_t i = 1; i < e->args.size(); ++i) args.push_back(subst_rec(e->args[i], bound, replace));
      bound.resize(mark);
      return make_binder(e->kind, e->binder, e->span, std::move(args));
    }
    default: {
      std::vector<ExprPtr> args;
      for (const auto& c : e->args) args.push_back(subst_rec(c, bound, replace));
      auto out = std::make_shared<Expr>(*e);
      out->args = std::move(args);
      return out;
    }
  }
}

}  // namespace

ExprPtr substitute_free(const ExprPtr& e, const std::function<ExprPtr(const Expr&)>& replace) {
  std::vector<std::string> bound;
  return subst_rec(e, bound, replace);
}

bool alpha_equal(const ExprPtr& a, const ExprPtr& b) {
  AlphaScope sc;
  return alpha(a, b, sc);
}

void free_names(const ExprPtr& e, std::vector<std::string>& out) {
  std::vector<std::string> bound;
  free_names_rec(e, bound, out);
}

bool occurs_free(const std::string& name, const ExprPtr& e) {
  std::vector<std::string> names;
  free_names(e, names);
  return std::find(names.begin(), names.end(), name) != names.end();
}

ExprPtr Declaration::full_type() const {
  ExprPtr t = type;
  for (auto it = params.rbegin(); it != params.rend(); ++it)
    t = make_binder(ExprKind::Pi, it->pattern, Span::merge(it->span, t->span), {it->type, t, nullptr});
  return t;
}

ExprPtr Declaration::full_body() const {
  ExprPtr b = body;
  for (auto it = params.rbegin(); it != params.rend(); ++it)
    b = make_binder(ExprKind::Lambda, it->pattern, Span::merge(it->span, b->span), {nullptr, b});
  return b;
}

}  // namespace stt::syntax
