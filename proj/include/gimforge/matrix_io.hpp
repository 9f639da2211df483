#pragma once

#include <istream>
#include <string>

#include "gimforge/arith.hpp"

namespace gimforge {

// Text form: a line with n, then n lines of n integers; lines starting with
// '#' are comments. JSON form: {"matrix": [[...], ...]}. Anything else, and
// any token that is not an integer, raises Error(ParseError).
IntMatrix parse_matrix(const std::string& text);
IntMatrix read_matrix_file(const std::string& path);

std::string format_matrix_text(const IntMatrix& m);

}  // namespace gimforge
