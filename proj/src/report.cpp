#include <fmt/format.h>
#include <json.hpp>

#include "gimforge/classify.hpp"

namespace gimforge {

namespace {

using ojson = nlohmann::ordered_json;

ojson matrix_json(const IntMatrix& m) {
  ojson rows = ojson::array();
  for (const auto& r : to_long_rows(m)) rows.push_back(r);
  return rows;
}

ojson moves_json(const MoveSequence& s) {
  ojson out = ojson::array();
  for (const auto& mv : s.moves) out.push_back({mv.i + 1, mv.j + 1});
  return out;
}

std::string matrix_block(const IntMatrix& m) {
  std::size_t w = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) w = std::max(w, m(i, j).get_str().size());
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += " ";
    for (std::size_t j = 0; j < m.cols(); ++j) s += fmt::format(" {:>{}}", m(i, j).get_str(), w);
    s += "\n";
  }
  return s;
}

}  // namespace

std::string report_json(const ClassificationReport& rep) {
  ojson j;
  j["input"] = matrix_json(rep.input.matrix());
  j["definiteness"] = definiteness_name(rep.definiteness);
  j["corank"] = rep.corank;
  j["label"] = rep.type.label();
  j["family"] = family_name(rep.type.family);
  j["rank"] = rep.type.rank;
  j["multiplicities"] = rep.type.multiplicities();
  j["reduced_gim"] = matrix_json(rep.reduced_gim.matrix());
  j["reduced_basis"] = ojson::parse(basis_to_json(rep.reduced_basis));
  ojson nodes = ojson::array();
  for (auto v : rep.node_of) nodes.push_back(v + 1);
  j["node_of"] = nodes;
  j["certificate"] = moves_json(rep.certificate);
  j["complete"] = rep.complete;
  if (rep.affine) {
    ojson a;
    a["type"] = rep.affine->type;
    a["gim"] = matrix_json(rep.affine->gim.matrix());
    a["certificate"] = moves_json(rep.affine->certificate);
    j["affine"] = a;
  } else {
    j["affine"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string report_text(const ClassificationReport& rep) {
  std::string s;
  s += fmt::format("label: {}\n", rep.type.label());
  s += fmt::format("definiteness: {}\n", definiteness_name(rep.definiteness));
  s += fmt::format("corank: {}\n", rep.corank);
  if (rep.affine) s += fmt::format("affine type: {}\n", rep.affine->type);
  s += "reduced matrix:\n" + matrix_block(rep.reduced_gim.matrix());
  s += "diagram node of each reduced root:";
  for (auto v : rep.node_of) s += fmt::format(" {}", v + 1);
  s += "\n";
  s += fmt::format("certificate ({} moves, lines \"k i j\"):\n", rep.certificate.size());
  s += rep.certificate.to_text();
  if (rep.affine) {
    s += fmt::format("affine form after {} moves:\n", rep.affine->certificate.size());
    s += matrix_block(rep.affine->gim.matrix());
  }
  return s;
}

std::string diagram_dot(const ModifiedDynkinType& t) {
  t.check();
  ModifiedDynkinType plain = t;
  plain.r = 1;
  plain.s = t.s ? 1 : 0;
  plain.t = t.t ? 1 : 0;
  const Template tmpl = make_template(plain);
  const auto mult = t.multiplicities();
  const auto& g = tmpl.gram.g;
  std::string s = fmt::format("digraph \"{}\" {{\n  rankdir=LR;\n  node [shape=circle];\n", t.label());
  for (std::size_t k = 0; k < mult.size(); ++k) {
    std::string lab = std::to_string(k + 1);
    if (mult[k] > 1) lab += fmt::format("\\n\u00d7{}", mult[k]);
    s += fmt::format("  n{} [label=\"{}\"];\n", k + 1, lab);
  }
  const auto& m = tmpl.gim.matrix();
  for (std::size_t a = 0; a < mult.size(); ++a)
    for (std::size_t b = a + 1; b < mult.size(); ++b) {
      if (m(a, b) == 0) continue;
      long bond = Integer(m(a, b) * m(b, a)).get_si();
      if (bond == 1) {
        s += fmt::format("  n{} -> n{} [dir=none];\n", a + 1, b + 1);
        continue;
      }
      std::string lines = "black";
      for (long k = 1; k < bond; ++k) lines += ":invis:black";
      // Arrow points at the shorter root.
      auto [from, to] = g(a, a) > g(b, b) ? std::make_pair(a, b) : std::make_pair(b, a);
      s += fmt::format("  n{} -> n{} [color=\"{}\"];\n", from + 1, to + 1, lines);
    }
  s += "}\n";
  return s;
}

}  // namespace gimforge
