#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stt/module/module.hpp"

namespace stt::corpus {

// One manifest line: `path<TAB>PASS|FAIL:code<TAB>REQUIRED|STRETCH`.
struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  bool expect_pass = true;
  std::string code;  // expected diagnostic code for FAIL entries
  bool required = true;
  int line = 0;
};

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<ManifestEntry> parse_manifest(const std::string& text);
std::vector<ManifestEntry> load_manifest(const std::string& path);

struct EntryOutcome {
  ManifestEntry entry;
  bool ok = false;
  std::string detail;
  std::vector<Diagnostic> diagnostics;
  std::vector<module::DeclStatus> decls;
  double millis = 0;
};

struct CorpusReport {
  std::vector<EntryOutcome> outcomes;
  kernel::GlobalEnv env;  // environment after all PASS entries
  std::vector<std::pair<std::string, std::string>> defined;  // (name, file) for PASS entries
  double millis = 0;

  bool ok() const;
};

// Checks PASS entries in manifest order in one environment. A FAIL entry is
// checked in a copy of the environment built by the PASS entries before it
// and must produce an error with exactly its expected code.
CorpusReport run_corpus(const std::vector<ManifestEntry>& manifest, const std::string& base_dir,
                        bool include_stretch, const module::ElabOptions& opts = {});

struct InventoryEntry {
  std::string name;
  std::string file;
  std::string type;  // pretty-printed
};

struct MissingExport : std::runtime_error {
  std::vector<std::string> names;
  explicit MissingExport(std::vector<std::string> ns);
};

// Reads `exports.tsv` lines `name<TAB>file`.
std::vector<std::pair<std::string, std::string>> load_exports(const std::string& path);

// Looks up every export in the report's environment.
std::vector<InventoryEntry> export_inventory(const CorpusReport& report,
                                             const std::vector<std::pair<std::string, std::string>>& exports);

}  // namespace stt::corpus
