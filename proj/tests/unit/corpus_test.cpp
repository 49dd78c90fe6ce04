#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "../support/kernel_env.hpp"
#include "stt/kernel/kernel.hpp"
#include "stt/syntax/literate.hpp"
#include "stt/syntax/printer.hpp"

using namespace stt;
using stt::testing::corpus_dir;

namespace {

const corpus::CorpusReport& required_report() {
  static corpus::CorpusReport r =
      corpus::run_corpus(corpus::load_manifest(corpus_dir() + "/manifest.tsv"), corpus_dir(), false);
  return r;
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Manifest, Parses) {
  auto m = corpus::parse_manifest("# comment\n\na.rzk\tPASS\tREQUIRED\nb.rzk\tFAIL:E-USES\tSTRETCH\r\n");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_TRUE(m[0].expect_pass);
  EXPECT_TRUE(m[0].required);
  EXPECT_FALSE(m[1].expect_pass);
  EXPECT_EQ(m[1].code, "E-USES");
  EXPECT_FALSE(m[1].required);
  EXPECT_EQ(m[1].line, 4);
}

TEST(Manifest, Rejects) {
  EXPECT_THROW(corpus::parse_manifest("a.rzk PASS REQUIRED\n"), corpus::ManifestError);
  EXPECT_THROW(corpus::parse_manifest("a.rzk\tOK\tREQUIRED\n"), corpus::ManifestError);
  EXPECT_THROW(corpus::parse_manifest("a.rzk\tFAIL:\tREQUIRED\n"), corpus::ManifestError);
  EXPECT_THROW(corpus::parse_manifest("a.rzk\tPASS\tMAYBE\n"), corpus::ManifestError);
}

TEST(Manifest, RequiredFormsAPrefix) {
  bool stretch_seen = false;
  for (const auto& e : corpus::load_manifest(corpus_dir() + "/manifest.tsv")) {
    if (!e.required) stretch_seen = true;
    EXPECT_FALSE(stretch_seen && e.required) << e.path;
  }
}

TEST(Corpus, RequiredTierPasses) {
  const auto& r = required_report();
  for (const auto& o : r.outcomes) EXPECT_TRUE(o.ok) << o.entry.path << ": " << o.detail;
  EXPECT_TRUE(r.ok());
}

TEST(Corpus, FixturesFailWithExpectedCodes) {
  int fixtures = 0;
  for (const auto& o : required_report().outcomes) {
    if (o.entry.expect_pass) continue;
    ++fixtures;
    ASSERT_FALSE(o.diagnostics.empty());
    for (const auto& d : o.diagnostics)
      if (d.severity == Severity::Error) EXPECT_EQ(d.code, o.entry.code) << o.entry.path;
    std::string first_line = read(corpus_dir() + "/" + o.entry.path).substr(0, 40);
    EXPECT_EQ(first_line.rfind("-- expect: " + o.entry.code, 0), 0u) << o.entry.path;
  }
  EXPECT_EQ(fixtures, 2);
}

TEST(Corpus, StretchTierPasses) {
  auto r = corpus::run_corpus(corpus::load_manifest(corpus_dir() + "/manifest.tsv"), corpus_dir(), true);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.outcomes.size(), required_report().outcomes.size());
}

TEST(Corpus, OnlyTheTwoAxiomsArePostulated) {
  std::regex postulate(R"(#postulate\s+(\S+))");
  std::vector<std::string> names;
  for (const auto& e : corpus::load_manifest(corpus_dir() + "/manifest.tsv")) {
    if (!e.required || !e.expect_pass) continue;
    std::string src = syntax::load_source(corpus_dir() + "/" + e.path);
    for (std::sregex_iterator it(src.begin(), src.end(), postulate), end; it != end; ++it) names.push_back((*it)[1]);
  }
  EXPECT_EQ(names, (std::vector<std::string>{"funext", "extext"}));
}

TEST(Corpus, NoSectionVariableEscapes) {
  const auto& env = required_report().env;
  for (const auto& n : env.order()) {
    const kernel::GlobalEntry* g = env.lookup(n);
    EXPECT_NE(g->kind, kernel::GlobalEntry::Variable) << n;
    std::vector<std::string> free;
    syntax::free_names(g->type_expr, free);
    if (g->body_expr) syntax::free_names(g->body_expr, free);
    for (const auto& f : free) EXPECT_TRUE(env.contains(f)) << n << " mentions " << f;
  }
}

TEST(Corpus, YonedaLemmaTakesFunextFirst) {
  const auto* g = required_report().env.lookup("yoneda-lemma");
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(syntax::pretty_print(g->type_expr).rfind("FunExt → (A : U) →", 0), 0u);
}

TEST(Inventory, ExportsResolve) {
  auto exports = corpus::load_exports(corpus_dir() + "/exports.tsv");
  auto inv = corpus::export_inventory(required_report(), exports);
  ASSERT_EQ(inv.size(), exports.size());
  std::map<std::string, std::string> types;
  for (const auto& e : inv) types[e.name] = e.type;
  EXPECT_EQ(types["hom"], "(A : U) → A → A → U");
  EXPECT_EQ(types["evid"], "(A : U) → (a : A) → (C : A → U) → ((z : A) → hom A a z → C z) → C a");
  EXPECT_EQ(types["Δ²"], "2 × 2 → TOPE");
}

TEST(Inventory, TypesReparseAndCheck) {
  const auto& r = required_report();
  kernel::Ctx c;
  c.globals = &r.env;
  for (const auto& e : corpus::export_inventory(r, corpus::load_exports(corpus_dir() + "/exports.tsv"))) {
    syntax::ExprPtr t = syntax::parse_expr(e.type);
    ASSERT_NO_THROW(kernel::check_type(c, t)) << e.name << " : " << e.type;
    auto [elab, v] = kernel::check_type(c, t);
    EXPECT_TRUE(kernel::equal_types(c, v, r.env.lookup(e.name)->type)) << e.name;
  }
}

TEST(Inventory, EmptyAndMissing) {
  EXPECT_TRUE(corpus::export_inventory(corpus::CorpusReport{}, {}).empty());
  try {
    corpus::export_inventory(required_report(), {{"hom", "06-segal.rzk.md"}, {"nope", "x.rzk"}, {"rev", "wrong.rzk"}});
    FAIL();
  } catch (const corpus::MissingExport& e) {
    EXPECT_EQ(e.names, (std::vector<std::string>{"nope", "rev"}));
  }
}

TEST(Corpus, FailEntryDoesNotExtendEnvironment) {
  auto dir = std::filesystem::temp_directory_path() / "stt-corpus-test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "a.rzk") << "#def a : U := U\n";
  std::ofstream(dir / "b.fail.rzk") << "-- expect: E-DUP\n#def b : U := U\n#def a : U := U\n";
  std::ofstream(dir / "c.rzk") << "#def c : U := b\n";
  auto r = corpus::run_corpus(corpus::parse_manifest("a.rzk\tPASS\tREQUIRED\nb.fail.rzk\tFAIL:E-DUP\tREQUIRED\n"
                                                     "c.rzk\tFAIL:E-UNBOUND\tREQUIRED\n"),
                              dir.string(), false);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.env.contains("b"));
  auto wrong = corpus::run_corpus(corpus::parse_manifest("a.rzk\tFAIL:E-DUP\tREQUIRED\n"), dir.string(), false);
  EXPECT_FALSE(wrong.ok());
  std::filesystem::remove_all(dir);
}
