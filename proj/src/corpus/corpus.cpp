#include "stt/corpus/corpus.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stt/kernel/kernel.hpp"
#include "stt/syntax/literate.hpp"
#include "stt/syntax/parser.hpp"
#include "stt/syntax/printer.hpp"

namespace stt::corpus {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '\t') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(const std::string& text) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3) throw ManifestError("manifest line " + std::to_string(n) + ": expected 3 tab-separated fields");
    ManifestEntry e;
    e.path = cols[0];
    e.line = n;
    if (cols[1] == "PASS") {
      e.expect_pass = true;
    } else if (cols[1].rfind("FAIL:", 0) == 0 && cols[1].size() > 5) {
      e.expect_pass = false;
      e.code = cols[1].substr(5);
    } else {
      throw ManifestError("manifest line " + std::to_string(n) + ": bad outcome " + cols[1]);
    }
    if (cols[2] == "REQUIRED") {
      e.required = true;
    } else if (cols[2] == "STRETCH") {
      e.required = false;
    } else {
      throw ManifestError("manifest line " + std::to_string(n) + ": bad tier " + cols[2]);
    }
    out.push_back(e);
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) { return parse_manifest(read_file(path)); }

bool CorpusReport::ok() const {
  for (const auto& o : outcomes)
    if (!o.ok) return false;
  return true;
}

CorpusReport run_corpus(const std::vector<ManifestEntry>& manifest, const std::string& base_dir,
                        bool include_stretch, const module::ElabOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  CorpusReport report;
  for (const auto& entry : manifest) {
    if (!entry.required && !include_stretch) continue;
    auto t0 = std::chrono::steady_clock::now();
    EntryOutcome o;
    o.entry = entry;
    std::string full = (fs::path(base_dir) / entry.path).string();
    module::ModuleResult r;
    try {
      syntax::SourceModule m = syntax::parse_module(syntax::load_source(full), entry.path);
      r = module::elaborate_module(m, report.env, opts);
    } catch (const syntax::ParseError& e) {
      Diagnostic d;
      d.code = "E-PARSE";
      d.message = e.what();
      d.span = e.span;
      r.diagnostics.push_back(d);
      r.env = report.env;
    } catch (const std::runtime_error& e) {
      Diagnostic d;
      d.code = "E-IO";
      d.message = e.what();
      d.span.file = entry.path;
      r.diagnostics.push_back(d);
      r.env = report.env;
    }
    o.diagnostics = r.diagnostics;
    o.decls = r.decls;
    std::vector<std::string> codes;
    for (const auto& d : r.diagnostics)
      if (d.severity == Severity::Error) codes.push_back(d.code);
    if (entry.expect_pass) {
      o.ok = codes.empty();
      if (!o.ok) o.detail = std::to_string(codes.size()) + " error(s), first " + codes[0];
      for (const auto& d : r.decls)
        if (d.ok) report.defined.emplace_back(d.name, entry.path);
      report.env = std::move(r.env);
    } else {
      bool all_expected = !codes.empty();
      for (const auto& c : codes) all_expected = all_expected && c == entry.code;
      o.ok = all_expected;
      if (codes.empty()) {
        o.detail = "expected " + entry.code + " but the file checked";
      } else if (!all_expected) {
        std::string got;
        for (const auto& c : codes) got += (got.empty() ? "" : ",") + c;
        o.detail = "expected only " + entry.code + " but got " + got;
      } else {
        o.detail = "failed with " + entry.code + " as expected";
      }
    }
    o.millis = since(t0);
    report.outcomes.push_back(std::move(o));
  }
  report.millis = since(start);
  return report;
}

MissingExport::MissingExport(std::vector<std::string> ns)
    : std::runtime_error("missing exports"), names(std::move(ns)) {}

std::vector<std::pair<std::string, std::string>> load_exports(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 2) throw ManifestError("exports: expected `name<TAB>file`: " + line);
    out.emplace_back(cols[0], cols[1]);
  }
  return out;
}

std::vector<InventoryEntry> export_inventory(const CorpusReport& report,
                                             const std::vector<std::pair<std::string, std::string>>& exports) {
  std::vector<InventoryEntry> out;
  std::vector<std::string> missing;
  kernel::Ctx c;
  c.globals = &report.env;
  for (const auto& [name, file] : exports) {
    const kernel::GlobalEntry* g = report.env.lookup(name);
    std::string defined_in;
    for (const auto& [n, f] : report.defined)
      if (n == name) defined_in = f;
    if (!g || defined_in != file) {
      missing.push_back(name);
      continue;
    }
    out.push_back(InventoryEntry{name, file, syntax::pretty_print(g->type_expr)});
  }
  if (!missing.empty()) throw MissingExport(missing);
  return out;
}

}  // namespace stt::corpus
