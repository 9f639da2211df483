#include <map>

#include <fmt/format.h>

#include "gimforge/error.hpp"
#include "gimforge/liealg.hpp"

namespace gimforge {

namespace {

LieExpr e_(std::size_t i) { return LieExpr::gen(i); }
LieExpr f_(std::size_t n, std::size_t i) { return LieExpr::gen(n + i); }

long as_long(const Integer& x) {
  if (!x.fits_slong_p()) throw Error(Errc::InvalidArgument, "matrix entry too large");
  return x.get_si();
}

// [e_i, f_i] lands in degree 0, which is not part of the truncation.
void absorb_cartan(std::size_t n, RelationSet& rs) {
  for (std::size_t i = 0; i < n; ++i) rs.words.push_back(LieExpr::bracket(e_(i), f_(n, i)));
}

}  // namespace

std::vector<Generator> ef_generators(std::size_t n) {
  std::vector<Generator> g;
  for (int sign : {1, -1})
    for (std::size_t i = 0; i < n; ++i) {
      Degree d(n, 0);
      d[i] = sign;
      g.push_back({fmt::format("{}{}", sign > 0 ? 'e' : 'f', i + 1), d});
    }
  return g;
}

RelationSet relations_gim(const Gim& m) {
  const std::size_t n = m.size();
  RelationSet rs;
  absorb_cartan(n, rs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const long a = as_long(m(i, j));
      if (a <= 0) {
        rs.words.push_back(LieExpr::bracket(e_(i), f_(n, j)));
        rs.words.push_back(LieExpr::ad_power(e_(i), static_cast<std::size_t>(1 - a), e_(j)));
        rs.words.push_back(LieExpr::ad_power(f_(n, i), static_cast<std::size_t>(1 - a), f_(n, j)));
      } else {
        rs.words.push_back(LieExpr::bracket(e_(i), e_(j)));
        rs.words.push_back(LieExpr::bracket(f_(n, i), f_(n, j)));
        rs.words.push_back(LieExpr::ad_power(e_(i), static_cast<std::size_t>(1 + a), f_(n, j)));
        rs.words.push_back(LieExpr::ad_power(f_(n, i), static_cast<std::size_t>(1 + a), e_(j)));
      }
    }
  return rs;
}

RelationSet relations_im(const Gim& m) {
  RelationSet rs = relations_gim(m);
  const Symmetrizer s = symmetrizer(m);
  Integer smin = s.s[0];
  for (const auto& x : s.s)
    if (x < smin) smin = x;
  // Normalized so that the shortest prime root has square length 2.
  rs.kill = KillFilter{gram(m, s).g, Rational(2 * smin)};
  return rs;
}

RelationSet relations_pra(const Gim& m, EnumBounds bounds, std::size_t max_height) {
  const std::size_t n = m.size();
  if (!is_symmetrizable(m)) throw Error(Errc::NotSymmetrizable, "partial reflection relations need a symmetrizable matrix");
  const auto space = make_space(m);
  const Enumeration en = enumerate_equivalents(PrimeBasis::standard(space), bounds);

  auto degree = [&](const RatVector& v) {
    Degree d(n);
    for (std::size_t c = 0; c < space->dim(); ++c) {
      if (v[c].get_den() != 1 || (c >= n && v[c] != 0))
        throw Error(Errc::InvalidArgument, "braid-equivalent root outside the root lattice");
      if (c < n) d[c] = as_long(v[c].get_num());
    }
    return d;
  };
  auto weight = [](const Degree& d) {
    std::size_t w = 0;
    for (long x : d) w += static_cast<std::size_t>(x < 0 ? -x : x);
    return w;
  };
  auto negate = [](Degree d) {
    for (auto& x : d) x = -x;
    return d;
  };

  std::map<std::pair<Degree, Degree>, std::size_t> best;
  auto emit = [&](const Degree& a, const Degree& b, std::size_t k) {
    if (max_height && k * weight(a) + weight(b) > max_height) return;
    auto [it, fresh] = best.emplace(std::make_pair(a, b), k);
    if (!fresh && k < it->second) it->second = k;
  };
  for (const auto& basis : en.bases) {
    std::vector<Degree> deg;
    for (const auto& r : basis.roots()) deg.push_back(degree(r));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        const Rational p = space->pair(basis[x], basis[y]);
        const Rational c = 2 * p / space->pair(basis[x], basis[x]);
        if (c.get_den() != 1) throw Error(Errc::NonIntegerPairing, "non-integral pairing in an enumerated basis");
        const long ci = as_long(c.get_num());
        const Degree& a = deg[x];
        const Degree& b = deg[y];
        if (p < 0) {
          emit(a, b, static_cast<std::size_t>(1 - ci));
          emit(negate(a), b, 1);
        } else if (p > 0) {
          emit(negate(a), b, static_cast<std::size_t>(1 + ci));
          emit(a, b, 1);
        } else {
          emit(a, b, 1);
          emit(negate(a), b, 1);
        }
      }
  }
  RelationSet rs;
  absorb_cartan(n, rs);
  for (const auto& [ab, k] : best) rs.constraints.push_back({ab.first, ab.second, k});
  rs.complete = en.complete;
  return rs;
}

RelationKind parse_relation_kind(const std::string& name) {
  if (name == "gim") return RelationKind::Gim;
  if (name == "im") return RelationKind::Im;
  if (name == "pra") return RelationKind::Pra;
  throw Error(Errc::InvalidArgument, "relation family must be gim, im or pra, not '" + name + "'");
}

GradedPresentation presentation(const Gim& m, RelationKind kind, EnumBounds bounds, std::size_t max_height) {
  GradedPresentation p;
  p.generators = ef_generators(m.size());
  switch (kind) {
    case RelationKind::Gim: p.relations = relations_gim(m); break;
    case RelationKind::Im: p.relations = relations_im(m); break;
    case RelationKind::Pra: p.relations = relations_pra(m, bounds, max_height); break;
  }
  return p;
}

GradedPresentation kac_moody_positive(const Gim& a) {
  if (!a.is_cartan()) throw Error(Errc::InvalidArgument, "Serre relations need non-positive off-diagonal entries");
  const std::size_t n = a.size();
  GradedPresentation p;
  for (std::size_t i = 0; i < n; ++i) {
    Degree d(n, 0);
    d[i] = 1;
    p.generators.push_back({fmt::format("x{}", i + 1), d});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        p.relations.words.push_back(
            LieExpr::ad_power(LieExpr::gen(i), static_cast<std::size_t>(1 - as_long(a(i, j))), LieExpr::gen(j)));
  return p;
}

}  // namespace gimforge
