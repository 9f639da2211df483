#include "gimforge/matrix_io.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "gimforge/error.hpp"

namespace gimforge {

namespace {

Integer parse_int_token(const std::string& tok) {
  static const std::regex re("[+-]?[0-9]+");
  if (!std::regex_match(tok, re)) throw Error(Errc::ParseError, "not an integer: '" + tok + "'");
  return Integer(tok[0] == '+' ? tok.substr(1) : tok);
}

IntMatrix parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array())
    throw Error(Errc::ParseError, "JSON input needs a \"matrix\" array");
  const auto& rows = doc["matrix"];
  const std::size_t n = rows.size();
  if (n == 0) throw Error(Errc::ParseError, "empty matrix");
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw Error(Errc::ParseError, fmt::format("row {} must have {} entries", i + 1, n));
    for (std::size_t j = 0; j < n; ++j) {
      const auto& x = rows[i][j];
      if (!x.is_number_integer()) throw Error(Errc::ParseError, fmt::format("entry ({},{}) is not an integer", i + 1, j + 1));
      m(i, j) = static_cast<long>(x.get<long long>());
    }
  }
  return m;
}

IntMatrix parse_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> lines;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    lines.push_back(std::move(toks));
  }
  if (lines.empty()) throw Error(Errc::ParseError, "no data");
  if (lines[0].size() != 1) throw Error(Errc::ParseError, "first line must hold only the size n");
  Integer nn = parse_int_token(lines[0][0]);
  if (nn <= 0 || nn > 4096) throw Error(Errc::ParseError, "size must be a positive integer");
  const std::size_t n = nn.get_ui();
  if (lines.size() != n + 1)
    throw Error(Errc::ParseError, fmt::format("expected {} matrix rows, found {}", n, lines.size() - 1));
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (lines[i + 1].size() != n)
      throw Error(Errc::ParseError, fmt::format("row {} has {} entries, expected {}", i + 1, lines[i + 1].size(), n));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_int_token(lines[i + 1][j]);
  }
  return m;
}

}  // namespace

IntMatrix parse_matrix(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_matrix(ss.str());
}

std::string format_matrix_text(const IntMatrix& m) {
  std::string s = fmt::format("{}\n", m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += m(i, j).get_str();
    }
    s += '\n';
  }
  return s;
}

}  // namespace gimforge
