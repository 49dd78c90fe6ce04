#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "../support/kernel_env.hpp"
#include "stt/cli/cli.hpp"

using stt::testing::corpus_dir;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args, bool color = false) {
  args.insert(args.begin(), "stt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = stt::cli::run(static_cast<int>(argv.size()), argv.data(), out, err, color);
  return {code, out.str(), err.str()};
}

std::vector<std::string> required_files() {
  std::vector<std::string> out;
  for (const auto& e : stt::corpus::load_manifest(corpus_dir() + "/manifest.tsv"))
    if (e.required && e.expect_pass) out.push_back(corpus_dir() + "/" + e.path);
  return out;
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, TypecheckCorpus) {
  auto args = required_files();
  args.insert(args.begin(), {"typecheck", "--no-timing"});
  Result r = run(args);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("✓ yoneda-lemma"), std::string::npos);
  EXPECT_EQ(r.out.find("✗"), std::string::npos);
  EXPECT_EQ(r.out.find("time:"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, TypecheckReportsErrors) {
  std::string f = temp_file("stt-cli-dup.rzk", "#def hom : U := U\n#def hom : U := U\n");
  Result r = run({"typecheck", "--no-timing", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("error[E-DUP]"), std::string::npos);
  EXPECT_NE(r.out.find("✗ hom"), std::string::npos);
}

TEST(Cli, UsageAndIoErrors) {
  EXPECT_EQ(run({"typecheck", "/nonexistent/file.rzk"}).code, 2);
  EXPECT_EQ(run({"typecheck", temp_file("stt-cli.txt", "")}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"typecheck", "--max-cube-vars", "0", corpus_dir() + "/01-paths.rzk.md"}).code, 2);
  EXPECT_EQ(run({"tope", "t | |- "}).code, 2);
}

TEST(Cli, MachineOutputIsJsonLines) {
  std::vector<std::string> args = {"typecheck", "--machine", "--no-timing", corpus_dir() + "/01-paths.rzk.md",
                                   corpus_dir() + "/02-contractible.rzk.md", corpus_dir() + "/03-equivalences.rzk.md",
                                   corpus_dir() + "/04-shapes.rzk.md", corpus_dir() + "/05-extension-types.rzk.md",
                                   corpus_dir() + "/06-segal.rzk.md",
                                   corpus_dir() + "/fail/hom-swapped-endpoints.fail.rzk"};
  Result r = run(args);
  EXPECT_EQ(r.code, 1);
  std::istringstream in(r.out);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["code"], "E-BOUNDARY");
    EXPECT_EQ(j["expected"], "y");
    EXPECT_EQ(j["actual"], "x");
    EXPECT_EQ(j["line"], 7);
    EXPECT_NE(j["file"].get<std::string>().front(), '/');
    ++n;
  }
  EXPECT_EQ(n, 1);
}

TEST(Cli, Deterministic) {
  auto args = required_files();
  args.push_back(corpus_dir() + "/fail/yoneda-lemma-no-uses.fail.rzk");
  args.insert(args.begin(), {"typecheck", "--machine", "--no-timing"});
  Result a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.code, b.code);
  args[1] = "--no-color";
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, Color) {
  std::string f = temp_file("stt-cli-color.rzk", "#def x : U := y\n");
  EXPECT_NE(run({"typecheck", f}, true).out.find("\033["), std::string::npos);
  EXPECT_EQ(run({"typecheck", "--no-color", f}, true).out.find("\033["), std::string::npos);
  setenv("NO_COLOR", "1", 1);
  EXPECT_EQ(run({"typecheck", f}, true).out.find("\033["), std::string::npos);
  unsetenv("NO_COLOR");
}

TEST(Cli, Normalize) {
  std::string ctx = temp_file("stt-cli-norm.rzk",
                              "#postulate A : U\n#postulate a : A\n#postulate b : A\n"
                              "#postulate f : (t : 2 | ⊤) → A [t ≡ 0₂ ↦ a]\n");
  Result r = run({"normalize", "first (a , b)", ctx});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a\n");
  EXPECT_EQ(run({"normalize", "f 0₂", ctx}).out, "a\n");
  Result bad = run({"normalize", "(a as A → A)", ctx});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("E-TYPE-MISMATCH"), std::string::npos);
}

TEST(Cli, Tope) {
  Result r = run({"tope", "t s | s ≤ t ∧ (s ≡ 0₂ ∨ t ≡ 1₂) |- s ≡ 0₂ ∨ s ≡ t ∨ t ≡ 1₂"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ENTAILED\n");
  EXPECT_EQ(run({"tope", "t | ⊤ |- t ≡ 0₂ ∨ t ≡ 1₂"}).out, "NOT-ENTAILED\ncountermodel: 0 = ∅ < {t} < 1\n");
  EXPECT_EQ(run({"tope", "| ⊥ |- ⊥"}).out, "ENTAILED\n");
  EXPECT_EQ(run({"tope", "t, s : 2 | |- t <= s \\/ s <= t"}).out, "ENTAILED\n");
}

TEST(Cli, TopeQueryMatchesOracle) {
  auto a = stt::cli::tope_query("t s | s ≤ t |- t ≡ s", 8);
  EXPECT_FALSE(a.entailed);
  EXPECT_EQ(a.countermodel, "0 = ∅ < {s} < {t} < 1");
  EXPECT_THROW(stt::cli::tope_query("t | |- u ≡ 0₂", 8), std::exception);
}

TEST(Cli, Parse) {
  EXPECT_EQ(run({"parse", corpus_dir() + "/06-segal.rzk.md"}).code, 0);
  std::string unbalanced = temp_file("stt-cli-unbalanced.rzk", "#section a\n#def x : U := U\n");
  Result bad = run({"parse", unbalanced});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("E-PARSE"), std::string::npos);
}

TEST(Cli, DumpAstGolden) {
  Result r = run({"parse", "--dump-ast", corpus_dir() + "/judgmental/eta-sigma.rzk"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read(std::string(STT_SOURCE_DIR) + "/tests/golden/eta-sigma.ast"));
  EXPECT_EQ(r.out, run({"parse", "--dump-ast", corpus_dir() + "/judgmental/eta-sigma.rzk"}).out);
}

TEST(Cli, CorpusAndInventory) {
  std::string manifest = corpus_dir() + "/manifest.tsv";
  Result c = run({"corpus", "--manifest", manifest, "--no-timing"});
  EXPECT_EQ(c.code, 0) << c.out;
  EXPECT_NE(c.out.find("0 unexpected results"), std::string::npos);
  Result inv = run({"inventory", "--manifest", manifest, "--exports", corpus_dir() + "/exports.tsv"});
  EXPECT_EQ(inv.code, 0);
  EXPECT_NE(inv.out.find("hom\t06-segal.rzk.md\t(A : U) → A → A → U\n"), std::string::npos);
}

TEST(Cli, FormatDiagnostic) {
  stt::Diagnostic d;
  d.code = "E-TOPE";
  d.message = "not entailed";
  d.span.file = "a.rzk";
  d.span.start_line = 3;
  d.span.start_col = 4;
  d.expected = "t ≡ 0₂";
  EXPECT_EQ(stt::cli::format_diagnostic(d, false), "a.rzk:3:4: error[E-TOPE]: not entailed\n  expected: t ≡ 0₂\n");
  auto j = nlohmann::json::parse(stt::cli::diagnostic_json(d));
  EXPECT_EQ(j["severity"], "error");
  EXPECT_FALSE(j.contains("actual"));
}
