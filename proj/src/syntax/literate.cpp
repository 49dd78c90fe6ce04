#include "stt/syntax/literate.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stt::syntax {

namespace {

// Returns the fence run length (``` or ~~~), or 0 if the line is not a fence.
std::size_t fence_length(std::string_view line, char& ch) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  if (i >= line.size() || (line[i] != '`' && line[i] != '~')) return 0;
  ch = line[i];
  std::size_t n = 0;
  while (i + n < line.size() && line[i + n] == ch) ++n;
  return n >= 3 ? n : 0;
}

std::string_view info_word(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '`' || line[i] == '~')) ++i;
  std::size_t j = i;
  while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '{' && line[j] != '\r') ++j;
  return line.substr(i, j - i);
}

}  // namespace

std::string extract_literate(std::string_view md) {
  std::string out;
  out.reserve(md.size());
  bool in_fence = false, keep = false;
  std::size_t open_len = 0;
  char open_ch = 0;
  std::size_t pos = 0;
  while (pos <= md.size()) {
    std::size_t nl = md.find('\n', pos);
    bool last = nl == std::string_view::npos;
    std::string_view line = md.substr(pos, last ? std::string_view::npos : nl - pos);
    char ch = 0;
    std::size_t n = fence_length(line, ch);
    if (!in_fence && n) {
      in_fence = true;
      open_len = n;
      open_ch = ch;
      keep = info_word(line) == "rzk";
    } else if (in_fence && n >= open_len && ch == open_ch && info_word(line).empty()) {
      in_fence = false;
      keep = false;
    } else if (in_fence && keep) {
      out += line;
    }
    if (last) break;
    out += '\n';
    pos = nl + 1;
  }
  return out;
}

bool is_literate_path(std::string_view path) {
  auto ends = [&](std::string_view suf) {
    return path.size() >= suf.size() && path.substr(path.size() - suf.size()) == suf;
  };
  return ends(".md");
}

std::string load_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  return is_literate_path(path) ? extract_literate(text) : text;
}

}  // namespace stt::syntax
