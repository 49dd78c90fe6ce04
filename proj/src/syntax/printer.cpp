#include "stt/syntax/printer.hpp"

namespace stt::syntax {

namespace {

// Precedence levels, loosest first.
enum Level { Bind = 0, Disj, Conj, Prod, Rel, Refine, Apply, Atom };

int level_of(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Pi:
    case ExprKind::Lambda:
    case ExprKind::Sigma:
    case ExprKind::TypeAscription:
      return Bind;
    case ExprKind::TopeOr: return Disj;
    case ExprKind::TopeAnd: return Conj;
    case ExprKind::CubeProduct: return Prod;
    case ExprKind::TopeEq:
    case ExprKind::TopeLeq:
    case ExprKind::IdType:
      return Rel;
    case ExprKind::Refinement: return Refine;
    case ExprKind::App:
    case ExprKind::First:
    case ExprKind::Second:
      return Apply;
    default:
      return Atom;
  }
}

class Printer {
 public:
  std::string out;

  void expr(const ExprPtr& e, int need) {
    bool paren = level_of(*e) < need;
    if (paren) out += '(';
    body(*e);
    if (paren) out += ')';
  }

  void pattern(const Pattern& p) {
    if (p.is_leaf()) {
      out += p.name;
      return;
    }
    out += '(';
    pattern(p.parts[0]);
    out += " , ";
    pattern(p.parts[1]);
    out += ')';
  }

  void branches(const Expr& e, std::size_t from) {
    for (std::size_t i = from; i + 1 < e.args.size(); i += 2) {
      if (i != from) out += " , ";
      expr(e.args[i], Bind);
      out += " ↦ ";
      expr(e.args[i + 1], Bind);
    }
  }

  void binary(const Expr& e, const char* op, int l, int r) {
    expr(e.args[0], l);
    out += op;
    expr(e.args[1], r);
  }

  void body(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Universe: out += "U"; break;
      case ExprKind::UniverseCube: out += "CUBE"; break;
      case ExprKind::UniverseTope: out += "TOPE"; break;
      case ExprKind::CubeUnit: out += "1"; break;
      case ExprKind::CubeUnitStar: out += "*₁"; break;
      case ExprKind::Cube2: out += "2"; break;
      case ExprKind::Cube2_0: out += "0₂"; break;
      case ExprKind::Cube2_1: out += "1₂"; break;
      case ExprKind::TopeTop: out += "⊤"; break;
      case ExprKind::TopeBottom: out += "⊥"; break;
      case ExprKind::RecBot: out += "recBOT"; break;
      case ExprKind::Hole: out += "?"; break;
      case ExprKind::Var:
      case ExprKind::GlobalRef: out += e.name; break;
      case ExprKind::CubeProduct: binary(e, " × ", Rel, Prod); break;
      case ExprKind::TopeAnd: binary(e, " ∧ ", Conj, Prod); break;
      case ExprKind::TopeOr: binary(e, " ∨ ", Disj, Conj); break;
      case ExprKind::TopeEq: binary(e, " ≡ ", Refine, Refine); break;
      case ExprKind::TopeLeq: binary(e, " ≤ ", Refine, Refine); break;
      case ExprKind::IdType:
        expr(e.args[0], Refine);
        if (e.args[2]) {
          out += " =_{";
          expr(e.args[2], Bind);
          out += "} ";
        } else {
          out += " = ";
        }
        expr(e.args[1], Refine);
        break;
      case ExprKind::App: binary(e, " ", Apply, Atom); break;
      case ExprKind::First:
      case ExprKind::Second:
        out += e.kind == ExprKind::First ? "first " : "second ";
        expr(e.args[0], Atom);
        break;
      case ExprKind::Pair:
        out += '(';
        expr(e.args[0], Bind);
        out += " , ";
        expr(e.args[1], Bind);
        out += ')';
        break;
      case ExprKind::Shape:
        out += '{';
        pattern(e.binder);
        out += " : ";
        expr(e.args[0], Bind);
        out += " | ";
        expr(e.args[1], Bind);
        out += '}';
        break;
      case ExprKind::Pi: {
        bool anonymous = e.binder.is_leaf() && !e.args[2] &&
                         (e.binder.name == "_" || !occurs_free(e.binder.name, e.args[1]));
        if (anonymous) {
          expr(e.args[0], Disj);
        } else {
          out += '(';
          pattern(e.binder);
          out += " : ";
          expr(e.args[0], Bind);
          if (e.args[2]) {
            out += " | ";
            expr(e.args[2], Bind);
          }
          out += ')';
        }
        out += " → ";
        expr(e.args[1], Bind);
        break;
      }
      case ExprKind::Sigma:
        out += "Σ (";
        pattern(e.binder);
        out += " : ";
        expr(e.args[0], Bind);
        out += ") , ";
        expr(e.args[1], Bind);
        break;
      case ExprKind::Lambda:
        out += "\\ ";
        if (e.args[0]) {
          out += '(';
          pattern(e.binder);
          out += " : ";
          expr(e.args[0], Bind);
          out += ')';
        } else {
          pattern(e.binder);
        }
        out += " → ";
        expr(e.args[1], Bind);
        break;
      case ExprKind::TypeAscription:
        expr(e.args[0], Disj);
        out += " as ";
        expr(e.args[1], Bind);
        break;
      case ExprKind::Refl:
        out += "refl";
        if (e.args[0]) {
          out += "_{";
          expr(e.args[0], Disj);
          if (e.args[1]) {
            out += " : ";
            expr(e.args[1], Bind);
          }
          out += '}';
        }
        break;
      case ExprKind::IndPath:
        out += "idJ(";
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i) out += " , ";
          expr(e.args[i], Bind);
        }
        out += ')';
        break;
      case ExprKind::Refinement:
        expr(e.args[0], Refine);
        out += " [";
        branches(e, 1);
        out += ']';
        break;
      case ExprKind::RecOr:
        out += "recOR(";
        branches(e, 0);
        out += ')';
        break;
    }
  }
};

}  // namespace

std::string pretty_print(const ExprPtr& e) {
  Printer p;
  p.expr(e, Bind);
  return p.out;
}

std::string pretty_print(const Pattern& pat) {
  Printer p;
  p.pattern(pat);
  return p.out;
}

std::string pretty_print(const Declaration& d) {
  std::string s;
  auto head = [&](const char* dir) {
    s += dir;
    s += d.name;
    if (d.has_uses) {
      s += " uses (";
      for (std::size_t i = 0; i < d.uses.size(); ++i) s += (i ? " " : "") + d.uses[i];
      s += ')';
    }
    for (const auto& p : d.params) s += "\n  (" + pretty_print(p.pattern) + " : " + pretty_print(p.type) + ")";
    s += "\n  : " + pretty_print(d.type);
  };
  switch (d.kind) {
    case DeclKind::Lang: return "#lang " + d.name;
    case DeclKind::SectionBegin: return "#section " + d.name;
    case DeclKind::SectionEnd: return "#end " + d.name;
    case DeclKind::VariableDecl:
      s = d.names.size() == 1 ? "#variable" : "#variables";
      for (const auto& n : d.names) s += " " + n;
      return s + " : " + pretty_print(d.type);
    case DeclKind::Postulate:
      head("#postulate ");
      return s;
    case DeclKind::Define:
      head("#def ");
      return s + "\n  := " + pretty_print(d.body);
  }
  return s;
}

std::string pretty_print(const SourceModule& m) {
  std::string s;
  if (!m.lang.empty()) s += "#lang " + m.lang + "\n\n";
  for (const auto& d : m.decls) s += pretty_print(d) + "\n\n";
  return s;
}

namespace {

const char* kind_name(ExprKind k) {
  switch (k) {
    case ExprKind::Universe: return "U";
    case ExprKind::UniverseCube: return "CUBE";
    case ExprKind::UniverseTope: return "TOPE";
    case ExprKind::CubeUnit: return "Unit";
    case ExprKind::CubeUnitStar: return "Star";
    case ExprKind::Cube2: return "Two";
    case ExprKind::Cube2_0: return "Zero";
    case ExprKind::Cube2_1: return "One";
    case ExprKind::CubeProduct: return "Product";
    case ExprKind::TopeTop: return "Top";
    case ExprKind::TopeBottom: return "Bot";
    case ExprKind::TopeAnd: return "And";
    case ExprKind::TopeOr: return "Or";
    case ExprKind::TopeEq: return "Eq";
    case ExprKind::TopeLeq: return "Leq";
    case ExprKind::Shape: return "Shape";
    case ExprKind::Pi: return "Pi";
    case ExprKind::Lambda: return "Lambda";
    case ExprKind::App: return "App";
    case ExprKind::Sigma: return "Sigma";
    case ExprKind::Pair: return "Pair";
    case ExprKind::First: return "First";
    case ExprKind::Second: return "Second";
    case ExprKind::IdType: return "Id";
    case ExprKind::Refl: return "Refl";
    case ExprKind::IndPath: return "IdJ";
    case ExprKind::Refinement: return "Refine";
    case ExprKind::RecOr: return "RecOr";
    case ExprKind::RecBot: return "RecBot";
    case ExprKind::Var: return "Var";
    case ExprKind::GlobalRef: return "Global";
    case ExprKind::TypeAscription: return "As";
    case ExprKind::Hole: return "Hole";
  }
  return "?";
}

std::string dump_pattern(const Pattern& p) {
  if (p.is_leaf()) return p.name;
  return "(" + dump_pattern(p.parts[0]) + " , " + dump_pattern(p.parts[1]) + ")";
}

void dump_rec(const ExprPtr& e, std::string& out) {
  if (!e) {
    out += "_";
    return;
  }
  bool leaf = e->args.empty() && e->name.empty();
  if (!leaf) out += "(";
  out += kind_name(e->kind);
  if (!e->name.empty()) out += " " + e->name;
  switch (e->kind) {
    case ExprKind::Shape:
    case ExprKind::Pi:
    case ExprKind::Lambda:
    case ExprKind::Sigma:
      out += " " + dump_pattern(e->binder);
      break;
    default:
      break;
  }
  for (const auto& a : e->args) {
    out += " ";
    dump_rec(a, out);
  }
  if (!leaf) out += ")";
}

const char* decl_kind(DeclKind k) {
  switch (k) {
    case DeclKind::Define: return "def";
    case DeclKind::Postulate: return "postulate";
    case DeclKind::SectionBegin: return "section";
    case DeclKind::SectionEnd: return "end";
    case DeclKind::VariableDecl: return "variables";
    case DeclKind::Lang: return "lang";
  }
  return "?";
}

}  // namespace

std::string dump_ast(const ExprPtr& e) {
  std::string out;
  dump_rec(e, out);
  return out;
}

std::string dump_ast(const SourceModule& m) {
  std::string out;
  for (const auto& d : m.decls) {
    out += std::string("(") + decl_kind(d.kind);
    if (!d.name.empty()) out += " " + d.name;
    for (const auto& n : d.names) out += " " + n;
    if (d.has_uses) {
      out += " (uses";
      for (const auto& u : d.uses) out += " " + u;
      out += ")";
    }
    for (const auto& p : d.params) out += "\n  (param " + dump_pattern(p.pattern) + " " + dump_ast(p.type) + ")";
    if (d.type) out += "\n  (type " + dump_ast(d.type) + ")";
    if (d.body) out += "\n  (body " + dump_ast(d.body) + ")";
    out += ")\n";
  }
  return out;
}

}  // namespace stt::syntax
