#pragma once

#include <string>
#include <vector>

#include "stt/diagnostic.hpp"
#include "stt/kernel/value.hpp"
#include "stt/syntax/expr.hpp"

namespace stt::module {

struct ElabOptions {
  std::size_t max_cube_vars = tope::kDefaultBound;
};

struct DeclStatus {
  std::string name;
  syntax::Span span;
  bool ok = true;
  double millis = 0;
};

// Outcome of the `uses` check for one definition made inside a section.
struct UsesReport {
  std::string name;
  std::vector<std::string> declared;
  std::vector<std::string> computed;  // section variables the definition depends on
  std::vector<std::string> missing;   // computed, not in the statement, not declared
  bool ok = true;
};

struct ModuleResult {
  kernel::GlobalEnv env;
  std::vector<Diagnostic> diagnostics;  // in source order
  std::vector<DeclStatus> decls;
  std::vector<UsesReport> uses;

  bool ok() const;
};

ModuleResult elaborate_module(const syntax::SourceModule& m, kernel::GlobalEnv env, const ElabOptions& opts = {});

// Elaborates several modules in order, threading the environment.
ModuleResult elaborate_modules(const std::vector<syntax::SourceModule>& ms, const ElabOptions& opts = {});

}  // namespace stt::module
