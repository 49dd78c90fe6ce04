#include "stt/cli/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "stt/corpus/corpus.hpp"
#include "stt/kernel/kernel.hpp"
#include "stt/module/module.hpp"
#include "stt/syntax/literate.hpp"
#include "stt/syntax/parser.hpp"
#include "stt/syntax/printer.hpp"
#include "stt/tope/tope.hpp"

namespace stt::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRed = "\033[31m";
constexpr const char* kGreen = "\033[32m";
constexpr const char* kYellow = "\033[33m";
constexpr const char* kBold = "\033[1m";
constexpr const char* kReset = "\033[0m";

struct Flags {
  bool machine = false;
  bool no_color = false;
  bool no_timing = false;
  std::size_t max_cube_vars = tope::kDefaultBound;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_flag("--machine", f.machine, "Emit diagnostics as JSON lines on stdout");
  cmd->add_flag("--no-color", f.no_color, "Disable ANSI colors");
  cmd->add_flag("--no-timing", f.no_timing, "Omit wall-clock timings");
  cmd->add_option("--max-cube-vars", f.max_cube_vars, "Largest number of cube variables in one tope query")
      ->check(CLI::Range(1, 16));
}

std::string display_path(const std::string& p) {
  fs::path path(p);
  if (path.is_absolute()) {
    std::error_code ec;
    fs::path rel = path.lexically_proximate(fs::current_path(ec));
    if (!ec) return rel.generic_string();
  }
  return path.lexically_normal().generic_string();
}

bool valid_source_path(const std::string& p) {
  auto ends = [&](const std::string& s) { return p.size() >= s.size() && p.compare(p.size() - s.size(), s.size(), s) == 0; };
  return ends(".rzk") || ends(".md");
}

Diagnostic parse_diag(const syntax::ParseError& e) {
  Diagnostic d;
  d.code = "E-PARSE";
  d.message = e.what();
  d.span = e.span;
  return d;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err, const Flags& f, bool color_allowed)
      : out_(out), err_(err), f_(f), color_(color_allowed && !f.no_color && !std::getenv("NO_COLOR")) {}

  std::string paint(const char* code, const std::string& s) const { return color_ ? code + s + kReset : s; }

  void diagnostics(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds) {
      if (f_.machine) {
        out_ << diagnostic_json(d) << "\n";
      } else {
        out_ << format_diagnostic(d, color_);
      }
    }
  }

  // Loads and parses the files; returns false (exit 2) on I/O problems.
  bool load(const std::vector<std::string>& paths, std::vector<syntax::SourceModule>& mods,
            std::vector<Diagnostic>& diags) {
    for (const auto& p : paths) {
      if (!valid_source_path(p)) {
        err_ << "stt: " << display_path(p) << ": expected a .rzk or .rzk.md file\n";
        return false;
      }
      std::string text;
      try {
        text = syntax::load_source(p);
      } catch (const std::exception& e) {
        err_ << "stt: cannot read " << display_path(p) << "\n";
        return false;
      }
      try {
        mods.push_back(syntax::parse_module(text, display_path(p)));
      } catch (const syntax::ParseError& e) {
        diags.push_back(parse_diag(e));
      }
    }
    return true;
  }

  module::ModuleResult elaborate(const std::vector<syntax::SourceModule>& mods) {
    module::ElabOptions opts;
    opts.max_cube_vars = f_.max_cube_vars;
    return module::elaborate_modules(mods, opts);
  }

  int typecheck(const std::vector<std::string>& paths) {
    auto start = std::chrono::steady_clock::now();
    std::vector<syntax::SourceModule> mods;
    std::vector<Diagnostic> diags;
    if (!load(paths, mods, diags)) return 2;
    module::ModuleResult r = elaborate(mods);
    diags.insert(diags.end(), r.diagnostics.begin(), r.diagnostics.end());
    std::size_t failed = 0;
    for (const auto& d : r.decls) failed += d.ok ? 0 : 1;
    if (!f_.machine) {
      std::size_t i = 0, n = r.decls.size();
      for (const auto& d : r.decls) {
        ++i;
        out_ << "[ " << i << " / " << n << " ] " << (d.ok ? paint(kGreen, "✓") : paint(kRed, "✗")) << " " << d.name;
        if (!f_.no_timing) out_ << " (" << static_cast<long>(d.millis + 0.5) << " ms)";
        out_ << "\n";
      }
    }
    diagnostics(diags);
    std::size_t errors = 0;
    for (const auto& d : diags) errors += d.severity == Severity::Error ? 1 : 0;
    if (!f_.machine) {
      out_ << "checked " << r.decls.size() << " declarations in " << paths.size() << " file"
           << (paths.size() == 1 ? "" : "s") << ": " << r.decls.size() - failed << " ok, " << failed << " failed, "
           << errors << " error" << (errors == 1 ? "" : "s") << "\n";
      if (!f_.no_timing) out_ << "time: " << elapsed(start) << " ms\n";
    }
    return errors == 0 ? 0 : 1;
  }

  int normalize(const std::string& text, const std::vector<std::string>& paths) {
    std::vector<syntax::SourceModule> mods;
    std::vector<Diagnostic> diags;
    if (!load(paths, mods, diags)) return 2;
    module::ModuleResult r = elaborate(mods);
    diags.insert(diags.end(), r.diagnostics.begin(), r.diagnostics.end());
    bool context_errors = false;
    for (const auto& d : diags) context_errors = context_errors || d.severity == Severity::Error;
    if (context_errors) {
      diagnostics(diags);
      return 1;
    }
    kernel::Ctx c;
    c.globals = &r.env;
    c.bound = f_.max_cube_vars;
    try {
      syntax::ExprPtr e = syntax::parse_expr(text, "<expr>");
      syntax::ExprPtr nf = kernel::normalize(c, e);
      if (f_.machine) {
        nlohmann::ordered_json j;
        j["normal_form"] = syntax::pretty_print(nf);
        out_ << j.dump() << "\n";
      } else {
        out_ << syntax::pretty_print(nf) << "\n";
      }
      return 0;
    } catch (const syntax::ParseError& e) {
      diagnostics({parse_diag(e)});
    } catch (const CheckError& e) {
      diagnostics({e.diag});
    } catch (const tope::BoundExceeded& e) {
      Diagnostic d;
      d.code = "E-TOPE-BOUND";
      d.message = e.what();
      d.span.file = "<expr>";
      diagnostics({d});
    }
    return 1;
  }

  int tope(const std::string& query) {
    TopeAnswer a;
    try {
      a = tope_query(query, f_.max_cube_vars);
    } catch (const syntax::ParseError& e) {
      err_ << "stt: tope query: " << e.what() << "\n";
      return 2;
    } catch (const tope::IllFormedPoint& e) {
      err_ << "stt: tope query: " << e.what() << "\n";
      return 2;
    } catch (const tope::BoundExceeded& e) {
      err_ << "stt: tope query: " << e.what() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      err_ << "stt: tope query: " << e.what() << "\n";
      return 2;
    }
    if (f_.machine) {
      nlohmann::ordered_json j;
      j["result"] = a.entailed ? "ENTAILED" : "NOT-ENTAILED";
      if (!a.entailed) j["countermodel"] = a.countermodel;
      out_ << j.dump() << "\n";
    } else {
      out_ << (a.entailed ? "ENTAILED" : "NOT-ENTAILED") << "\n";
      if (!a.entailed) out_ << "countermodel: " << a.countermodel << "\n";
    }
    return 0;
  }

  int parse(const std::vector<std::string>& paths, bool dump) {
    int code = 0;
    for (const auto& p : paths) {
      if (!valid_source_path(p)) {
        err_ << "stt: " << display_path(p) << ": expected a .rzk or .rzk.md file\n";
        return 2;
      }
      std::string text;
      try {
        text = syntax::load_source(p);
      } catch (const std::exception&) {
        err_ << "stt: cannot read " << display_path(p) << "\n";
        return 2;
      }
      try {
        syntax::SourceModule m = syntax::parse_module(text, display_path(p));
        if (!f_.machine) out_ << (dump ? syntax::dump_ast(m) : syntax::pretty_print(m));
      } catch (const syntax::ParseError& e) {
        diagnostics({parse_diag(e)});
        code = 1;
      }
    }
    return code;
  }

  int corpus(const std::string& manifest_path, bool stretch, const std::string& exports_path, bool inventory) {
    auto start = std::chrono::steady_clock::now();
    std::vector<corpus::ManifestEntry> manifest;
    std::vector<std::pair<std::string, std::string>> exports;
    try {
      manifest = corpus::load_manifest(manifest_path);
      if (inventory) exports = corpus::load_exports(exports_path);
    } catch (const corpus::ManifestError& e) {
      err_ << "stt: " << e.what() << "\n";
      return 2;
    }
    module::ElabOptions opts;
    opts.max_cube_vars = f_.max_cube_vars;
    std::string base = fs::path(manifest_path).parent_path().string();
    corpus::CorpusReport rep = corpus::run_corpus(manifest, base.empty() ? "." : base, stretch, opts);
    if (inventory) {
      try {
        for (const auto& e : corpus::export_inventory(rep, exports)) {
          if (f_.machine) {
            nlohmann::ordered_json j;
            j["name"] = e.name;
            j["file"] = e.file;
            j["type"] = e.type;
            out_ << j.dump() << "\n";
          } else {
            out_ << e.name << "\t" << e.file << "\t" << e.type << "\n";
          }
        }
      } catch (const corpus::MissingExport& e) {
        for (const auto& n : e.names) {
          Diagnostic d;
          d.code = "E-MISSING-EXPORT";
          d.message = "export " + n + " is not defined by its manifest file";
          d.span.file = display_path(exports_path);
          diagnostics({d});
        }
        return 1;
      }
      return rep.ok() ? 0 : 1;
    }
    for (const auto& o : rep.outcomes) {
      if (f_.machine) {
        nlohmann::ordered_json j;
        j["file"] = o.entry.path;
        j["expected"] = o.entry.expect_pass ? "PASS" : "FAIL:" + o.entry.code;
        j["tier"] = o.entry.required ? "REQUIRED" : "STRETCH";
        j["ok"] = o.ok;
        j["declarations"] = o.decls.size();
        if (!o.detail.empty()) j["detail"] = o.detail;
        out_ << j.dump() << "\n";
        continue;
      }
      out_ << (o.ok ? paint(kGreen, "PASS") : paint(kRed, "FAIL")) << " " << o.entry.path;
      if (!o.detail.empty()) out_ << ": " << o.detail;
      if (!f_.no_timing) out_ << " (" << static_cast<long>(o.millis + 0.5) << " ms)";
      out_ << "\n";
      if (!o.ok) diagnostics(o.diagnostics);
    }
    if (!f_.machine) {
      std::size_t bad = 0;
      for (const auto& o : rep.outcomes) bad += o.ok ? 0 : 1;
      out_ << rep.outcomes.size() << " corpus entries, " << bad << " unexpected result" << (bad == 1 ? "" : "s") << "\n";
      if (!f_.no_timing) out_ << "time: " << elapsed(start) << " ms\n";
    }
    return rep.ok() ? 0 : 1;
  }

 private:
  static long elapsed(std::chrono::steady_clock::time_point t) {
    return static_cast<long>(
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count() + 0.5);
  }

  std::ostream& out_;
  std::ostream& err_;
  Flags f_;
  bool color_;
};

}  // namespace

std::string format_diagnostic(const Diagnostic& d, bool color) {
  auto paint = [&](const char* code, const std::string& s) { return color ? code + s + kReset : s; };
  bool err = d.severity == Severity::Error;
  std::ostringstream os;
  std::string where = d.span.file;
  if (d.span.start_line > 0) where += ":" + std::to_string(d.span.start_line) + ":" + std::to_string(d.span.start_col);
  os << paint(kBold, where) << ": " << (err ? paint(kRed, "error") : paint(kYellow, "warning")) << "[" << d.code
     << "]: " << d.message << "\n";
  if (d.expected) os << "  expected: " << *d.expected << "\n";
  if (d.actual) os << "  actual:   " << *d.actual << "\n";
  return os.str();
}

std::string diagnostic_json(const Diagnostic& d) {
  nlohmann::ordered_json j;
  j["severity"] = d.severity == Severity::Error ? "error" : "warning";
  j["code"] = d.code;
  j["message"] = d.message;
  j["file"] = d.span.file;
  j["line"] = d.span.start_line;
  j["column"] = d.span.start_col;
  j["end_line"] = d.span.end_line;
  j["end_column"] = d.span.end_col;
  if (d.expected) j["expected"] = *d.expected;
  if (d.actual) j["actual"] = *d.actual;
  return j.dump();
}

TopeAnswer tope_query(const std::string& query, std::size_t bound) {
  auto bar = query.find('|');
  while (bar != std::string::npos && bar + 1 < query.size() && query[bar + 1] == '-') bar = query.find('|', bar + 2);
  auto turnstile = query.find("|-");
  if (bar == std::string::npos || turnstile == std::string::npos || turnstile < bar)
    throw std::invalid_argument("expected `<cube-vars> | <hyps> |- <goal>`");
  std::string vars_text = query.substr(0, bar);
  std::string hyps_text = query.substr(bar + 1, turnstile - bar - 1);
  std::string goal_text = query.substr(turnstile + 2);

  // `t s` declares points of 2; `p : 2 × 2` declares a point of a product cube.
  std::vector<std::pair<std::string, syntax::ExprPtr>> vars;
  std::istringstream groups(vars_text);
  std::string group;
  while (std::getline(groups, group, ',')) {
    auto colon = group.find(':');
    syntax::ExprPtr cube = colon == std::string::npos ? syntax::make(syntax::ExprKind::Cube2, syntax::Span{})
                                                      : syntax::parse_expr(group.substr(colon + 1), "<query>");
    std::istringstream names(group.substr(0, colon));
    std::string n;
    while (names >> n) vars.emplace_back(n, cube);
  }
  auto blank = [](const std::string& s) { return s.find_first_not_of(" \t\n") == std::string::npos; };
  syntax::ExprPtr hyps = blank(hyps_text) ? syntax::make(syntax::ExprKind::TopeTop, syntax::Span{})
                                          : syntax::parse_expr(hyps_text, "<query>");
  syntax::ExprPtr goal = syntax::parse_expr(goal_text, "<query>");
  auto [ctx, h] = tope::flatten_points(vars, hyps);
  auto [ctx2, g] = tope::flatten_points(vars, goal);
  (void)ctx2;
  TopeAnswer a;
  a.entailed = tope::entails(ctx, {h}, g, bound);
  if (!a.entailed) {
    auto m = tope::find_countermodel(ctx, {h}, g, bound);
    if (m) a.countermodel = tope::format_model(*m, ctx);
  }
  return a;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color_allowed) {
  CLI::App app{"stt: batch typechecker for simplicial type theory", "stt"};
  app.require_subcommand(1);
  Flags flags;

  std::vector<std::string> paths;
  auto* typecheck = app.add_subcommand("typecheck", "Typecheck files in order (.rzk or literate .rzk.md)");
  typecheck->add_option("files", paths, "Source files")->required();
  add_flags(typecheck, flags);

  std::string expr;
  auto* normalize = app.add_subcommand("normalize", "Normalize an expression in the context of files");
  normalize->add_option("expr", expr, "Expression")->required();
  normalize->add_option("files", paths, "Context files");
  add_flags(normalize, flags);

  std::string query;
  auto* tope_cmd = app.add_subcommand("tope", "Decide a tope entailment `<vars> | <hyps> |- <goal>`");
  tope_cmd->add_option("query", query, "Query")->required();
  add_flags(tope_cmd, flags);

  bool dump = false;
  auto* parse = app.add_subcommand("parse", "Parse files and print them back");
  parse->add_option("files", paths, "Source files")->required();
  parse->add_flag("--dump-ast", dump, "Print the structural syntax tree");
  add_flags(parse, flags);

  std::string manifest = "corpus/manifest.tsv";
  std::string exports = "corpus/exports.tsv";
  bool stretch = false;
  auto* corpus_cmd = app.add_subcommand("corpus", "Run the corpus manifest as a regression suite");
  corpus_cmd->add_option("--manifest", manifest, "Manifest file");
  corpus_cmd->add_flag("--stretch", stretch, "Include STRETCH entries");
  add_flags(corpus_cmd, flags);

  auto* inventory = app.add_subcommand("inventory", "Print the exported names of the corpus with their types");
  inventory->add_option("--manifest", manifest, "Manifest file");
  inventory->add_option("--exports", exports, "Exports file");
  inventory->add_flag("--stretch", stretch, "Include STRETCH entries");
  add_flags(inventory, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Runner r(out, err, flags, color_allowed);
  if (*typecheck) return r.typecheck(paths);
  if (*normalize) return r.normalize(expr, paths);
  if (*tope_cmd) return r.tope(query);
  if (*parse) return r.parse(paths, dump);
  if (*corpus_cmd) return r.corpus(manifest, stretch, exports, false);
  if (*inventory) return r.corpus(manifest, stretch, exports, true);
  return 2;
}

}  // namespace stt::cli
