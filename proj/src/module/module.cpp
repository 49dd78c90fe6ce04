#include "stt/module/module.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "stt/kernel/kernel.hpp"

namespace stt::module {

using kernel::Ctx;
using kernel::GlobalEntry;
using kernel::GlobalEnv;
using kernel::Val;
using syntax::Declaration;
using syntax::DeclKind;
using syntax::ExprKind;
using syntax::ExprPtr;
using syntax::Span;

bool ModuleResult::ok() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

namespace {

Diagnostic error(std::string code, std::string msg, Span span) {
  Diagnostic d;
  d.code = std::move(code);
  d.message = std::move(msg);
  d.span = std::move(span);
  return d;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
  return s;
}

struct Frame {
  std::string name;
  Span span;
  std::vector<std::string> vars;
  std::vector<std::string> defs;
};

class Elaborator {
 public:
  Elaborator(GlobalEnv env, const ElabOptions& opts) : opts_(opts) { out_.env = std::move(env); }

  void run(const syntax::SourceModule& m) {
    for (const Declaration& d : m.decls) declaration(d);
    while (!frames_.empty()) {
      report(error("E-SECTION", "section " + frames_.back().name + " is not closed", frames_.back().span));
      end_section();
    }
    std::stable_sort(out_.diagnostics.begin(), out_.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
      if (a.span.file != b.span.file) return false;
      return std::tie(a.span.start_line, a.span.start_col) < std::tie(b.span.start_line, b.span.start_col);
    });
  }

  ModuleResult take() { return std::move(out_); }

 private:
  Ctx ctx() const {
    Ctx c;
    c.globals = &out_.env;
    c.bound = opts_.max_cube_vars;
    return c;
  }

  void report(Diagnostic d) { out_.diagnostics.push_back(std::move(d)); }

  // Runs `fn`, converting kernel failures into diagnostics.
  template <class F>
  bool guarded(const Span& span, F&& fn) {
    try {
      fn();
      return true;
    } catch (const CheckError& e) {
      report(e.diag);
    } catch (const tope::BoundExceeded& e) {
      report(error("E-TOPE-BOUND", std::string("tope query too large: ") + e.what() + "; raise --max-cube-vars", span));
    } catch (const std::logic_error& e) {
      report(error("E-INTERNAL", std::string("internal error: ") + e.what(), span));
    }
    return false;
  }

  void declaration(const Declaration& d) {
    switch (d.kind) {
      case DeclKind::Lang: return;
      case DeclKind::SectionBegin: frames_.push_back(Frame{d.name, d.span, {}, {}}); return;
      case DeclKind::SectionEnd:
        if (frames_.empty()) {
          report(error("E-SECTION", "#end without an open section", d.span));
          return;
        }
        if (frames_.back().name != d.name) {
          report(error("E-SECTION", "#end " + d.name + " closes section " + frames_.back().name, d.span));
          return;
        }
        end_section();
        return;
      case DeclKind::VariableDecl: variables(d); return;
      case DeclKind::Define:
      case DeclKind::Postulate: definition(d); return;
    }
  }

  bool is_var(const std::string& n) const {
    for (const auto& f : frames_)
      if (std::find(f.vars.begin(), f.vars.end(), n) != f.vars.end()) return true;
    return false;
  }

  std::vector<std::string> all_vars() const {
    std::vector<std::string> out;
    for (const auto& f : frames_) out.insert(out.end(), f.vars.begin(), f.vars.end());
    return out;
  }

  void variables(const Declaration& d) {
    if (frames_.empty()) {
      report(error("E-SECTION", "variables may only be declared inside a section", d.span));
      return;
    }
    auto start = std::chrono::steady_clock::now();
    bool ok = guarded(d.span, [&] {
      Ctx c = ctx();
      auto [te, tv] = kernel::check_type(c, d.type);
      for (const auto& n : d.names) {
        if (out_.env.contains(n)) {
          report(error("E-DUP", "duplicate name " + n, d.span));
          continue;
        }
        auto e = std::make_shared<GlobalEntry>();
        e->kind = GlobalEntry::Variable;
        e->name = n;
        e->type_expr = te;
        e->type = tv;
        e->value = kernel::reflect(c, kernel::Neutral{kernel::Head{true, n, -1}, tv, {}, tv});
        e->span = d.span;
        out_.env.insert(e);
        frames_.back().vars.push_back(n);
      }
    });
    status(d.names.empty() ? "" : join(d.names), d.span, ok, start);
  }

  void status(const std::string& name, const Span& span, bool ok, std::chrono::steady_clock::time_point start) {
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out_.decls.push_back(DeclStatus{name, span, ok, ms});
  }

  // Section variables (of all open frames) that `es` depend on, directly,
  // through in-section definitions, or through the types of variables.
  std::set<std::string> depends(const std::vector<ExprPtr>& es) const {
    std::set<std::string> out;
    std::vector<std::string> work;
    for (const auto& e : es) {
      std::vector<std::string> names;
      syntax::free_names(e, names);
      for (const auto& n : names) {
        if (is_var(n)) work.push_back(n);
        auto it = used_.find(n);
        if (it != used_.end()) work.insert(work.end(), it->second.begin(), it->second.end());
      }
    }
    while (!work.empty()) {
      std::string v = work.back();
      work.pop_back();
      if (!out.insert(v).second) continue;
      if (const GlobalEntry* g = out_.env.lookup(v)) {
        std::vector<std::string> names;
        syntax::free_names(g->type_expr, names);
        for (const auto& n : names)
          if (is_var(n)) work.push_back(n);
      }
    }
    return out;
  }

  std::vector<std::string> ordered(const std::set<std::string>& s) const {
    std::vector<std::string> out;
    for (const auto& v : all_vars())
      if (s.count(v)) out.push_back(v);
    return out;
  }

  // Throws on implicitly used variables; reports unused declarations.
  void check_uses(const Declaration& d, const ExprPtr& type, const ExprPtr& body) {
    for (const auto& u : d.uses)
      if (!is_var(u))
        throw CheckError(error("E-USES", "uses clause names " + u + ", which is not a section variable", d.span));
    std::set<std::string> computed = depends({type, body});
    if (frames_.empty()) return;
    std::set<std::string> allowed = depends({type});
    std::vector<ExprPtr> declared;
    for (const auto& u : d.uses) declared.push_back(syntax::make_var(u, d.span));
    for (const auto& v : depends(declared)) allowed.insert(v);

    UsesReport r;
    r.name = d.name;
    r.declared = d.uses;
    r.computed = ordered(computed);
    for (const auto& v : r.computed)
      if (!allowed.count(v)) r.missing.push_back(v);
    r.ok = r.missing.empty();
    out_.uses.push_back(r);
    if (!r.ok) {
      throw CheckError(error("E-USES",
                             d.name + " implicitly uses section variable" + (r.missing.size() > 1 ? "s " : " ") +
                                 join(r.missing) + "; declare them with uses (…)",
                             d.span));
    }
    for (const auto& u : d.uses) {
      if (!computed.count(u)) {
        Diagnostic w = error("W-UNUSED-USES", d.name + " declares uses (" + u + ") but does not use it", d.span);
        w.severity = Severity::Warning;
        report(w);
      }
    }
  }

  void definition(const Declaration& d) {
    auto start = std::chrono::steady_clock::now();
    if (out_.env.contains(d.name)) {
      report(error("E-DUP", "duplicate definition of " + d.name, d.span));
      status(d.name, d.span, false, start);
      return;
    }
    bool ok = guarded(d.span, [&] {
      Ctx c = ctx();
      auto [te, tv] = kernel::check_type(c, d.full_type());
      ExprPtr be;
      if (d.kind == DeclKind::Define) be = kernel::check(c, d.full_body(), tv);
      check_uses(d, te, be);
      auto e = std::make_shared<GlobalEntry>();
      e->name = d.name;
      e->type_expr = te;
      e->type = tv;
      e->span = d.span;
      if (be) {
        e->kind = GlobalEntry::Defined;
        e->body_expr = be;
        e->value = kernel::eval(c, nullptr, be);
      } else {
        e->kind = GlobalEntry::Postulated;
        e->value = kernel::reflect(c, kernel::Neutral{kernel::Head{true, d.name, -1}, tv, {}, tv});
      }
      out_.env.insert(e);
      if (!frames_.empty()) {
        frames_.back().defs.push_back(d.name);
        used_[d.name] = ordered(depends({te, be}));
      }
    });
    status(d.name, d.span, ok, start);
  }

  // Abstracts every definition of the innermost section over the section
  // variables it uses, then removes the variables.
  void end_section() {
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    std::map<std::string, std::vector<std::string>> params;
    for (const auto& name : f.defs) {
      std::vector<std::string> ps;
      for (const auto& v : used_[name])
        if (std::find(f.vars.begin(), f.vars.end(), v) != f.vars.end()) ps.push_back(v);
      params[name] = ps;
    }
    auto rewrite = [&](const ExprPtr& e) {
      return syntax::substitute_free(e, [&](const syntax::Expr& x) -> ExprPtr {
        if (std::find(f.vars.begin(), f.vars.end(), x.name) != f.vars.end()) return syntax::make_var(x.name, x.span);
        auto it = params.find(x.name);
        if (it == params.end() || it->second.empty()) return nullptr;
        ExprPtr app = syntax::make_global(x.name, x.span);
        for (const auto& v : it->second) app = syntax::make(ExprKind::App, x.span, {app, syntax::make_var(v, x.span)});
        return app;
      });
    };
    std::map<std::string, ExprPtr> var_types;
    for (const auto& v : f.vars)
      if (const GlobalEntry* g = out_.env.lookup(v)) var_types[v] = rewrite(g->type_expr);
    for (const auto& v : f.vars) out_.env.erase(v);

    for (const auto& name : f.defs) {
      const GlobalEntry* old = out_.env.lookup(name);
      if (!old) continue;
      const auto& ps = params[name];
      auto& u = used_[name];
      u.erase(std::remove_if(u.begin(), u.end(),
                             [&](const std::string& v) { return std::find(ps.begin(), ps.end(), v) != ps.end(); }),
              u.end());
      if (ps.empty()) continue;
      ExprPtr type = rewrite(old->type_expr);
      ExprPtr body = old->body_expr ? rewrite(old->body_expr) : nullptr;
      for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
        syntax::Pattern p = syntax::Pattern::leaf(*it);
        type = syntax::make_binder(ExprKind::Pi, p, old->span, {var_types[*it], type, nullptr});
        if (body) body = syntax::make_binder(ExprKind::Lambda, p, old->span, {nullptr, body});
      }
      auto e = std::make_shared<GlobalEntry>(*old);
      Span span = old->span;
      bool ok = guarded(span, [&] {
        Ctx c = ctx();
        auto [te, tv] = kernel::check_type(c, type);
        e->type_expr = te;
        e->type = tv;
        if (body) {
          e->body_expr = kernel::check(c, body, tv);
          e->value = kernel::eval(c, nullptr, e->body_expr);
        } else {
          e->value = kernel::reflect(c, kernel::Neutral{kernel::Head{true, name, -1}, tv, {}, tv});
        }
      });
      if (ok) {
        out_.env.insert(e);
      } else {
        out_.env.erase(name);
        report(error("E-SECTION", "could not generalize " + name + " over " + join(ps), span));
      }
    }
    if (!frames_.empty()) {
      auto& outer = frames_.back().defs;
      outer.insert(outer.end(), f.defs.begin(), f.defs.end());
    }
  }

  ElabOptions opts_;
  ModuleResult out_;
  std::vector<Frame> frames_;
  std::map<std::string, std::vector<std::string>> used_;
};

}  // namespace

ModuleResult elaborate_module(const syntax::SourceModule& m, GlobalEnv env, const ElabOptions& opts) {
  Elaborator el(std::move(env), opts);
  el.run(m);
  return el.take();
}

ModuleResult elaborate_modules(const std::vector<syntax::SourceModule>& ms, const ElabOptions& opts) {
  ModuleResult acc;
  for (const auto& m : ms) {
    ModuleResult r = elaborate_module(m, std::move(acc.env), opts);
    acc.env = std::move(r.env);
    acc.diagnostics.insert(acc.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    acc.decls.insert(acc.decls.end(), r.decls.begin(), r.decls.end());
    acc.uses.insert(acc.uses.end(), r.uses.begin(), r.uses.end());
  }
  return acc;
}

}  // namespace stt::module
