#pragma once

#include <iosfwd>
#include <string>

#include "stt/diagnostic.hpp"

namespace stt::cli {

// Runs the `stt` command line. Returns the process exit code:
// 0 success, 1 check errors, 2 usage or I/O errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color_allowed = false);

std::string format_diagnostic(const Diagnostic& d, bool color);
// One JSON object on a single line.
std::string diagnostic_json(const Diagnostic& d);

// Parses and decides `<cube-vars> | <hyps> |- <goal>`; throws on syntax errors.
struct TopeAnswer {
  bool entailed = false;
  std::string countermodel;
};
TopeAnswer tope_query(const std::string& query, std::size_t bound);

}  // namespace stt::cli
