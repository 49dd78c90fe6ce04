#pragma once

#include <string>
#include <string_view>

namespace stt::syntax {

// Keeps only the contents of ```rzk fences; every other line (fence lines
// included) becomes empty so line numbers match the Markdown file.
std::string extract_literate(std::string_view markdown);

// True for `.rzk.md` and `.md` paths.
bool is_literate_path(std::string_view path);

// Reads a source file, applying literate extraction when appropriate.
std::string load_source(const std::string& path);

}  // namespace stt::syntax
