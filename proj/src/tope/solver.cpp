// Tableau refutation: search for a consistent branch of hyps ∧ ¬goal.
// Literals are order constraints between points; a branch is consistent
// iff the transitive closure of its constraints has no strict cycle.

#include <array>
#include <mutex>
#include <unordered_map>

#include "stt/tope/tope.hpp"

namespace stt::tope {

namespace {

enum class Rel : unsigned char { None = 0, Le = 1, Lt = 2 };

Rel compose(Rel a, Rel b) {
  if (a == Rel::None || b == Rel::None) return Rel::None;
  return a == Rel::Lt || b == Rel::Lt ? Rel::Lt : Rel::Le;
}

Rel join(Rel a, Rel b) { return static_cast<unsigned char>(a) >= static_cast<unsigned char>(b) ? a : b; }

// Node 0 is 0₂, node 1 is 1₂, node k+2 is variable k.
int node_of(const Point& p) {
  switch (p.kind) {
    case Point::Zero: return 0;
    case Point::One: return 1;
    case Point::Var: return p.var + 2;
  }
  return 0;
}

struct Branch {
  int n = 2;
  std::vector<Rel> d;             // n×n closure matrix
  std::vector<signed char> atom;  // 0 unknown, 1 true, -1 false

  Branch(int vars, int atoms) : n(vars + 2), d(static_cast<std::size_t>(n * n), Rel::None), atom(atoms, 0) {
    for (int i = 0; i < n; ++i) {
      at(i, i) = Rel::Le;
      at(0, i) = join(at(0, i), Rel::Le);
      at(i, 1) = join(at(i, 1), Rel::Le);
    }
    at(0, 1) = Rel::Lt;
  }

  Rel& at(int i, int j) { return d[static_cast<std::size_t>(i * n + j)]; }

  // Adds a → b with relation r and closes; returns false on a strict cycle.
  bool add(int a, int b, Rel r) {
    if (compose(at(b, a), r) == Rel::Lt) return false;
    if (join(at(a, b), r) == at(a, b)) return true;
    std::vector<Rel> into(n), from(n);
    for (int i = 0; i < n; ++i) {
      into[i] = at(i, a);
      from[i] = at(b, i);
    }
    for (int i = 0; i < n; ++i) {
      if (into[i] == Rel::None) continue;
      Rel ia = compose(into[i], r);
      for (int j = 0; j < n; ++j) {
        Rel c = compose(ia, from[j]);
        if (c != Rel::None) at(i, j) = join(at(i, j), c);
      }
    }
    for (int i = 0; i < n; ++i)
      if (at(i, i) == Rel::Lt) return false;
    return true;
  }
};

// Negation normal form with strict inequality as an extra literal.
struct NNF {
  enum Kind { Top, Bot, And, Or, Le, Lt, Eq, AtomPos, AtomNeg } kind;
  std::vector<NNF> kids;
  int a = 0, b = 0;
};

NNF to_nnf(const TopePtr& t, bool neg) {
  switch (t->kind) {
    case Tope::Top: return NNF{neg ? NNF::Bot : NNF::Top};
    case Tope::Bot: return NNF{neg ? NNF::Top : NNF::Bot};
    case Tope::And:
    case Tope::Or: {
      bool is_and = (t->kind == Tope::And) != neg;
      return NNF{is_and ? NNF::And : NNF::Or, {to_nnf(t->lhs, neg), to_nnf(t->rhs, neg)}};
    }
    case Tope::Atom: return NNF{neg ? NNF::AtomNeg : NNF::AtomPos, {}, t->atom};
    case Tope::Leq: {
      int p = node_of(t->p), q = node_of(t->q);
      if (!neg) return NNF{NNF::Le, {}, p, q};
      return NNF{NNF::Lt, {}, q, p};
    }
    case Tope::Eq: {
      int p = node_of(t->p), q = node_of(t->q);
      if (!neg) return NNF{NNF::Eq, {}, p, q};
      return NNF{NNF::Or, {NNF{NNF::Lt, {}, p, q}, NNF{NNF::Lt, {}, q, p}}};
    }
  }
  return NNF{NNF::Top};
}

// Returns true if some branch extending `br` with all of `todo` is consistent.
bool open_branch(Branch br, std::vector<const NNF*> todo) {
  std::vector<const NNF*> disjunctions;
  while (!todo.empty()) {
    const NNF* f = todo.back();
    todo.pop_back();
    switch (f->kind) {
      case NNF::Top: break;
      case NNF::Bot: return false;
      case NNF::And:
        for (const auto& k : f->kids) todo.push_back(&k);
        break;
      case NNF::Or: disjunctions.push_back(f); break;
      case NNF::Le:
        if (!br.add(f->a, f->b, Rel::Le)) return false;
        break;
      case NNF::Lt:
        if (!br.add(f->a, f->b, Rel::Lt)) return false;
        break;
      case NNF::Eq:
        if (!br.add(f->a, f->b, Rel::Le) || !br.add(f->b, f->a, Rel::Le)) return false;
        break;
      case NNF::AtomPos:
      case NNF::AtomNeg: {
        signed char want = f->kind == NNF::AtomPos ? 1 : -1;
        auto& cur = br.atom[static_cast<std::size_t>(f->a)];
        if (cur == -want) return false;
        cur = want;
        break;
      }
    }
  }
  if (disjunctions.empty()) return true;
  const NNF* split = disjunctions.back();
  disjunctions.pop_back();
  for (const auto& alt : split->kids) {
    std::vector<const NNF*> next = disjunctions;
    next.push_back(&alt);
    if (open_branch(br, std::move(next))) return true;
  }
  return false;
}

void key_point(const Point& p, std::string& k) {
  if (p.kind == Point::Zero) k += '0';
  else if (p.kind == Point::One) k += '1';
  else k += 'v' + std::to_string(p.var);
}

void key_of(const TopePtr& t, std::string& k) {
  switch (t->kind) {
    case Tope::Top: k += 'T'; return;
    case Tope::Bot: k += 'F'; return;
    case Tope::Atom: k += 'a' + std::to_string(t->atom) + ';'; return;
    case Tope::Eq:
    case Tope::Leq:
      k += t->kind == Tope::Eq ? '=' : '<';
      key_point(t->p, k);
      k += ',';
      key_point(t->q, k);
      k += ';';
      return;
    case Tope::And:
    case Tope::Or:
      k += t->kind == Tope::And ? '&' : '|';
      key_of(t->lhs, k);
      key_of(t->rhs, k);
      return;
  }
}

struct Memo {
  std::mutex mu;
  std::unordered_map<std::string, bool> table;
};

Memo& memo() {
  static Memo m;
  return m;
}

}  // namespace

bool entails(const CubeContext& ctx, const std::vector<TopePtr>& hyps, const TopePtr& goal, std::size_t bound) {
  if (ctx.vars.size() > bound)
    throw BoundExceeded("tope query has " + std::to_string(ctx.vars.size()) + " interval variables (bound " +
                        std::to_string(bound) + ")");
  std::string key = std::to_string(ctx.vars.size()) + "/" + std::to_string(ctx.atoms.size()) + ":";
  for (const auto& h : hyps) {
    key_of(h, key);
    key += ',';
  }
  key += "|-";
  key_of(goal, key);
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().table.find(key);
    if (it != memo().table.end()) return it->second;
  }
  std::vector<NNF> forms;
  forms.reserve(hyps.size() + 1);
  for (const auto& h : hyps) forms.push_back(to_nnf(h, false));
  forms.push_back(to_nnf(goal, true));
  std::vector<const NNF*> todo;
  for (const auto& f : forms) todo.push_back(&f);
  Branch start(static_cast<int>(ctx.vars.size()), static_cast<int>(ctx.atoms.size()));
  bool result = !open_branch(std::move(start), std::move(todo));
  std::lock_guard<std::mutex> lock(memo().mu);
  if (memo().table.size() > 1'000'000) memo().table.clear();
  memo().table.emplace(std::move(key), result);
  return result;
}

bool satisfiable(const CubeContext& ctx, const std::vector<TopePtr>& hyps, std::size_t bound) {
  return !entails(ctx, hyps, bot(), bound);
}

}  // namespace stt::tope
