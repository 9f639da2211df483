#include <regex>

#include <fmt/format.h>

#include "gimforge/classify.hpp"

namespace gimforge {

namespace {

bool two_lengths(Family f) {
  return f == Family::B || f == Family::C || f == Family::F4 || f == Family::G2 || f == Family::A1 ||
         f == Family::BC;
}

[[noreturn]] void illegal(const std::string& why) { throw Error(Errc::IllegalLabel, why); }

}  // namespace

std::string ModifiedDynkinType::label() const {
  switch (family) {
    case Family::A: return fmt::format("A_{}({})", rank, r);
    case Family::B: return fmt::format("B_{}({},{})", rank, r, s);
    case Family::C: return fmt::format("C_{}({},{})", rank, r, s);
    case Family::D: return fmt::format("D_{}({})", rank, r);
    case Family::E6:
    case Family::E7:
    case Family::E8: return fmt::format("E_{}({})", rank, r);
    case Family::F4: return fmt::format("F_4({},{})", r, s);
    case Family::G2: return fmt::format("G_2({},{})", r, s);
    case Family::A1: return fmt::format("A_1({},{})", r, s);
    case Family::BC: return fmt::format("BC_{}({},{},{})", rank, r, s, t);
  }
  return "?";
}

ModifiedDynkinType ModifiedDynkinType::parse(const std::string& text) {
  static const std::regex re(R"(^\s*(A|B|C|D|E|F|G|BC)_([0-9]+)\(([0-9]+)(?:,([0-9]+))?(?:,([0-9]+))?\)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) illegal("unrecognised label '" + text + "'");
  auto num = [&](int k) -> std::size_t {
    if (!m[k].matched) return 0;
    if (m[k].length() > 6) illegal("number too large in '" + text + "'");
    return std::stoul(m[k].str());
  };
  const std::string fam = m[1].str();
  ModifiedDynkinType t;
  t.rank = num(2);
  t.r = num(3);
  t.s = num(4);
  t.t = num(5);
  const std::size_t args = 1 + (m[4].matched ? 1 : 0) + (m[5].matched ? 1 : 0);
  if (fam == "A") t.family = (args == 2 && t.rank == 1) ? Family::A1 : Family::A;
  else if (fam == "B") t.family = Family::B;
  else if (fam == "C") t.family = Family::C;
  else if (fam == "D") t.family = Family::D;
  else if (fam == "E") t.family = t.rank == 6 ? Family::E6 : t.rank == 7 ? Family::E7 : Family::E8;
  else if (fam == "F") t.family = Family::F4;
  else if (fam == "G") t.family = Family::G2;
  else t.family = Family::BC;
  const std::size_t want = t.family == Family::BC ? 3 : two_lengths(t.family) ? 2 : 1;
  if (args != want) illegal(fmt::format("label '{}' needs {} multiplicities", text, want));
  t.check();
  return t;
}

void ModifiedDynkinType::check() const {
  const std::size_t want = family == Family::BC ? 3 : two_lengths(family) ? 2 : 1;
  if (r < 1 || (want >= 2 && s < 1) || (want >= 3 && t < 1))
    illegal("multiplicities must be positive");
  if ((want < 2 && s != 0) || (want < 3 && t != 0)) illegal("too many multiplicities for this family");
  if (rank > 1000 || r > 1000 || s > 1000 || t > 1000) illegal("label too large");
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 3; break;
    case Family::D: ok = rank >= 4; break;
    case Family::E6: ok = rank == 6; break;
    case Family::E7: ok = rank == 7; break;
    case Family::E8: ok = rank == 8; break;
    case Family::F4: ok = rank == 4; break;
    case Family::G2: ok = rank == 2; break;
    case Family::A1: ok = rank == 1; break;
    case Family::BC: ok = rank >= 2; break;
  }
  if (!ok) illegal("rank not allowed for this family: " + label());
}

std::size_t ModifiedDynkinType::node_count() const {
  if (family == Family::BC) return rank + 1;
  if (family == Family::A1) return 2;
  return rank;
}

std::vector<std::size_t> ModifiedDynkinType::multiplicities() const {
  std::vector<std::size_t> m(node_count(), 1);
  m[0] = r;
  switch (family) {
    case Family::B:
    case Family::C:
    case Family::F4:
    case Family::G2:
      m[rank - 1] = s;
      break;
    case Family::A1:
      m[1] = s;
      break;
    case Family::BC:
      m[1] = s;
      m[rank] = t;
      break;
    default:
      break;
  }
  return m;
}

std::size_t ModifiedDynkinType::matrix_size() const {
  std::size_t total = 0;
  for (auto x : multiplicities()) total += x;
  return total;
}

Template make_template(const ModifiedDynkinType& t) {
  t.check();
  auto simple = figure_simple_roots(t.family, t.rank);
  auto mult = t.multiplicities();
  std::vector<RatVector> rows;
  std::vector<std::size_t> node;
  for (std::size_t k = 0; k < mult.size(); ++k)
    for (std::size_t c = 0; c < mult[k]; ++c) {
      rows.push_back(simple[k]);
      node.push_back(k);
    }
  const std::size_t n = rows.size();
  IntMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    Rational self = dot(rows[a], rows[a]);
    for (std::size_t b = 0; b < n; ++b) {
      Rational q = 2 * dot(rows[a], rows[b]) / self;
      if (q.get_den() != 1) throw Error(Errc::NoTemplateMatch, "template pairing is not integral");
      m(a, b) = q.get_num();
    }
  }
  Gim g = validate_gim(m);
  GramMatrix gm = gram(g);
  return {g, gm, node};
}

Gim finite_cartan(Family f, std::size_t l) {
  if (f == Family::A1 || f == Family::BC) throw Error(Errc::IllegalLabel, "not a finite type");
  ModifiedDynkinType t{f, l, 1, two_lengths(f) ? std::size_t{1} : 0, 0};
  return make_template(t).gim;
}

std::vector<ModifiedDynkinType> all_labels(std::size_t max_rank, std::size_t max_mult) {
  std::vector<ModifiedDynkinType> out;
  for (std::size_t r = 1; r <= max_mult; ++r) {
    for (std::size_t l = 1; l <= max_rank; ++l) out.push_back({Family::A, l, r, 0, 0});
    for (std::size_t l = 4; l <= max_rank; ++l) out.push_back({Family::D, l, r, 0, 0});
    if (max_rank >= 6) out.push_back({Family::E6, 6, r, 0, 0});
    if (max_rank >= 7) out.push_back({Family::E7, 7, r, 0, 0});
    if (max_rank >= 8) out.push_back({Family::E8, 8, r, 0, 0});
    for (std::size_t s = 1; s <= max_mult; ++s) {
      for (std::size_t l = 2; l <= max_rank; ++l) out.push_back({Family::B, l, r, s, 0});
      for (std::size_t l = 3; l <= max_rank; ++l) out.push_back({Family::C, l, r, s, 0});
      if (max_rank >= 4) out.push_back({Family::F4, 4, r, s, 0});
      if (max_rank >= 2) out.push_back({Family::G2, 2, r, s, 0});
      out.push_back({Family::A1, 1, r, s, 0});
      for (std::size_t t = 1; t <= max_mult; ++t)
        for (std::size_t l = 2; l <= max_rank; ++l) out.push_back({Family::BC, l, r, s, t});
    }
  }
  return out;
}

Gim gim_from_toroidal(const Gim& c, std::size_t nu) {
  if (nu == 0) throw Error(Errc::InvalidArgument, "the number of copies must be at least 1");
  if (!c.is_cartan() || !is_indecomposable(c) || !is_symmetrizable(c))
    throw Error(Errc::NotFiniteType, "input is not an indecomposable finite-type Cartan matrix");
  auto sym = symmetrizer(c);
  if (gram(c, sym).definiteness != Definiteness::PositiveDefinite)
    throw Error(Errc::NotFiniteType, "input Cartan matrix is not of finite type");
  for (const auto& s : sym.s)
    if (s > sym.s[0]) throw Error(Errc::FirstRootNotLong, "the first simple root is not long");
  const std::size_t l = c.size();
  IntMatrix m(nu + l, nu + l);
  // Rows/columns 0..nu-1 are copies of the first simple root.
  auto src = [&](std::size_t p) { return p < nu ? std::size_t{0} : p - nu; };
  for (std::size_t p = 0; p < nu + l; ++p)
    for (std::size_t q = 0; q < nu + l; ++q) m(p, q) = c(src(p), src(q));
  return validate_gim(m);
}

}  // namespace gimforge
