#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "gimforge/classify.hpp"
#include "gimforge/error.hpp"
#include "gimforge/liealg.hpp"

using namespace gimforge;

namespace {

const std::vector<std::vector<long>> kEx1{{2, -1, 1}, {-1, 2, -1}, {1, -1, 2}};
const std::vector<std::vector<long>> kEx3{{2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}};
const std::vector<std::vector<long>> kKm8{{2, 0, 0, 0, 0, -2, -2, -2}, {0, 2, 0, 0, -2, 0, -2, -2},
                                               {0, 0, 2, 0, -2, -2, 0, -2}, {0, 0, 0, 2, -2, -2, -2, 0},
                                               {0, -2, -2, -2, 2, 0, 0, 0}, {-2, 0, -2, -2, 0, 2, 0, 0},
                                               {-2, -2, 0, -2, 0, 0, 2, 0}, {-2, -2, -2, 0, 0, 0, 0, 2}};

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

bool is_lyndon(const std::vector<int>& w) {
  for (std::size_t r = 1; r < w.size(); ++r)
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<long>(r), w.end())) return false;
  return true;
}

GradedPresentation free_presentation(std::size_t m) {
  GradedPresentation p;
  for (std::size_t i = 0; i < m; ++i) {
    Degree d(m, 0);
    d[i] = 1;
    p.generators.push_back({"x" + std::to_string(i + 1), d});
  }
  return p;
}

// Positive roots of a finite type, as coefficient vectors on the simple roots.
std::map<Degree, std::size_t> positive_roots(const Gim& c) {
  auto s = PrimeBasis::standard(make_space(c));
  QuotientForm q(s.gram());
  std::map<Degree, std::size_t> out;
  for (const auto& [key, r] : q.closure(s.roots())) {
    Degree d;
    bool pos = true;
    for (const auto& x : r) {
      d.push_back(x.get_num().get_si());
      pos = pos && x >= 0;
    }
    if (pos) out[d] = 1;
  }
  return out;
}

std::map<Degree, std::size_t> positive_part(const std::map<Degree, std::size_t>& dims) {
  std::map<Degree, std::size_t> out;
  for (const auto& [d, k] : dims)
    if (std::all_of(d.begin(), d.end(), [](long x) { return x >= 0; })) out[d] = k;
  return out;
}

}  // namespace

TEST(FreeBasis, MatchesWittAndWordOracle) {
  for (std::size_t m : {2u, 3u}) {
    const std::size_t D = m == 2 ? 7 : 5;
    auto fb = free_basis(m, D);
    // Oracle: test every word up to length D for the Lyndon property.
    std::map<Multidegree, std::size_t> count;
    std::function<void(std::vector<int>&)> walk = [&](std::vector<int>& w) {
      if (!w.empty() && is_lyndon(w)) {
        Multidegree nu(m, 0);
        for (int x : w) ++nu[static_cast<std::size_t>(x)];
        ++count[nu];
      }
      if (w.size() == D) return;
      for (int a = 0; a < static_cast<int>(m); ++a) {
        w.push_back(a);
        walk(w);
        w.pop_back();
      }
    };
    std::vector<int> w;
    walk(w);
    ASSERT_EQ(fb.size(), count.size());
    for (const auto& [nu, elems] : fb) {
      EXPECT_EQ(elems.size(), count[nu]);
      EXPECT_EQ(Integer(elems.size()), witt_dimension(nu));
    }
  }
  auto fb4 = free_basis(4, 4);
  EXPECT_EQ(fb4[(Multidegree{1, 1, 1, 1})].size(), 6u);
  EXPECT_EQ(fb4[(Multidegree{1, 0, 0, 0})].size(), 1u);
  EXPECT_EQ(free_basis(2, 2)[(Multidegree{1, 1})][0].bracketing, "[x1,x2]");
  EXPECT_THROW(free_basis(2, 0), Error);
}

TEST(Truncation, FreeAlgebraDimensionsAreWitt) {
  auto t = Truncation::build(free_presentation(2), 2);
  EXPECT_EQ(t.positive_dims_by_height(), (std::vector<std::size_t>{2, 1}));
  auto t3 = Truncation::build(free_presentation(3), 5);
  for (const auto& [nu, elems] : free_basis(3, 5)) EXPECT_EQ(t3.dim(nu), elems.size());
}

TEST(Truncation, RankPlusDimensionIsWitt) {
  for (const auto& rows : {kEx1, kEx3}) {
    const Gim m = validate_gim_rows(rows);
    for (auto kind : {RelationKind::Gim, RelationKind::Im}) {
      auto t = Truncation::build(presentation(m, kind), 4);
      for (const auto& [nu, elems] : free_basis(2 * m.size(), 4))
        EXPECT_EQ(Integer(t.dim(nu) + t.relation_rank(nu)), witt_dimension(nu));
    }
  }
}

TEST(RelationsGim, Families) {
  auto gens = ef_generators(2);
  auto has = [&](const RelationSet& rs, const std::string& s) {
    for (const auto& w : rs.words)
      if (w.str(gens) == s) return true;
    return false;
  };
  auto a2 = relations_gim(finite_cartan(Family::A, 2));
  EXPECT_EQ(a2.words.size(), 8u);
  EXPECT_TRUE(has(a2, "[e1,[e1,e2]]"));
  EXPECT_TRUE(has(a2, "[f2,[f2,f1]]"));
  EXPECT_TRUE(has(a2, "[e1,f2]"));
  gens = ef_generators(3);
  auto ex1 = relations_gim(validate_gim_rows(kEx1));
  EXPECT_TRUE(has(ex1, "[e1,e3]"));
  EXPECT_TRUE(has(ex1, "[e1,[e1,f3]]"));
  EXPECT_TRUE(has(ex1, "[f1,[f1,e3]]"));
  EXPECT_FALSE(has(ex1, "[e1,f3]"));
  gens = ef_generators(4);
  auto ex3 = relations_gim(validate_gim_rows(kEx3));
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t j = 1; j <= 4; ++j)
      if (i != j) {
        EXPECT_TRUE(has(ex3, "[e" + std::to_string(i) + ",e" + std::to_string(j) + "]"));
        auto ei = "e" + std::to_string(i);
        EXPECT_TRUE(has(ex3, "[" + ei + ",[" + ei + ",[" + ei + ",f" + std::to_string(j) + "]]]"));
      }
}

TEST(FiniteTypes, RootMultiplicityOne) {
  const std::vector<std::tuple<Family, std::size_t, std::size_t, std::size_t>> cases{
      {Family::A, 2, 2, 3}, {Family::A, 3, 3, 6}, {Family::B, 2, 3, 4}, {Family::G2, 2, 5, 6}};
  for (auto [f, l, height, total] : cases) {
    const Gim c = finite_cartan(f, l);
    const auto want = positive_roots(c);
    ASSERT_EQ(want.size(), total);
    for (auto kind : {RelationKind::Gim, RelationKind::Pra}) {
      auto t = Truncation::build(presentation(c, kind, {}, height + 1), height + 1);
      EXPECT_TRUE(t.complete());
      EXPECT_EQ(positive_part(t.root_dims()), want) << family_name(f) << l;
      auto by_h = t.positive_dims_by_height();
      EXPECT_EQ(std::accumulate(by_h.begin(), by_h.end(), std::size_t{0}), total);
    }
  }
  auto a2 = Truncation::build(presentation(finite_cartan(Family::A, 2), RelationKind::Gim), 3);
  EXPECT_EQ(a2.positive_dims_by_height(), (std::vector<std::size_t>{2, 1, 0}));
}

TEST(FiniteTypes, PraAgreesWithGim) {
  for (auto [f, l] : {std::pair{Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::G2, 2}}) {
    const Gim c = finite_cartan(f, static_cast<std::size_t>(l));
    auto g = Truncation::build(presentation(c, RelationKind::Gim), 6);
    auto p = Truncation::build(presentation(c, RelationKind::Pra, {}, 6), 6);
    EXPECT_EQ(g.dims(), p.dims()) << family_name(f) << l;
  }
}

TEST(Im, KillsOnlyLongDegrees) {
  const Gim a2 = finite_cartan(Family::A, 2);
  EXPECT_EQ(Truncation::build(presentation(a2, RelationKind::Im), 3).dims(),
            Truncation::build(presentation(a2, RelationKind::Gim), 3).dims());
  auto rs = relations_im(validate_gim_rows(kEx3));
  ASSERT_TRUE(rs.kill);
  RatVector mu{1, 1, 1, -1};
  EXPECT_EQ(bilinear(rs.kill->form, mu, mu), 8);
  EXPECT_GT(bilinear(rs.kill->form, mu, mu), rs.kill->threshold);
  RatVector a1{1, 0, 0, 0};
  EXPECT_EQ(bilinear(rs.kill->form, a1, a1), rs.kill->threshold);
  auto t = Truncation::build(presentation(validate_gim_rows(kEx3), RelationKind::Im), 4);
  EXPECT_EQ(t.dim({1, 0, 0, 0, 0, 0, 0, 0}), 1u);
}

TEST(ExampleThree, BracketSurvivesInGimOnly) {
  const Gim m = validate_gim_rows(kEx3);
  const auto w = LieExpr::parse("[e1,[e2,[e3,f4]]]", ef_generators(4));
  EXPECT_FALSE(Truncation::build(presentation(m, RelationKind::Gim), 4).eval(w).is_zero);
  EXPECT_TRUE(Truncation::build(presentation(m, RelationKind::Im), 4).eval(w).is_zero);
  auto pra = Truncation::build(presentation(m, RelationKind::Pra, {4, 2000}, 4), 4);
  EXPECT_FALSE(pra.complete());
  EXPECT_FALSE(pra.eval(w).is_zero);
}

TEST(ExampleOne, PraKillsTripleBracket) {
  const Gim m = validate_gim_rows(kEx1);
  const auto w = LieExpr::parse("[e1,[e2,e3]]", ef_generators(3));
  auto pra = Truncation::build(presentation(m, RelationKind::Pra, {}, 3), 3);
  EXPECT_TRUE(pra.complete());
  EXPECT_TRUE(pra.eval(w).is_zero);
  EXPECT_FALSE(Truncation::build(presentation(m, RelationKind::Gim), 3).eval(w).is_zero);
}

TEST(Pra, RankOneIsSl2) {
  auto rs = relations_pra(validate_gim_rows({{2}}));
  EXPECT_TRUE(rs.complete);
  EXPECT_TRUE(rs.constraints.empty());
  auto t = Truncation::build(presentation(validate_gim_rows({{2}}), RelationKind::Pra), 4);
  EXPECT_EQ(t.dims().size(), 2u);
}

TEST(Pra, AffineA1Multiplicities) {
  const Gim m = validate_gim_rows({{2, -2}, {-2, 2}});
  auto t = Truncation::build(presentation(m, RelationKind::Pra, {}, 4), 4);
  // Positive roots of height <= 4: alpha_i + k delta and k delta.
  std::map<Degree, std::size_t> want{{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{2, 1}, 1}, {{1, 2}, 1}, {{2, 2}, 1}};
  EXPECT_EQ(positive_part(t.root_dims()), want);
}

TEST(KacMoody, RankEightBracketIsNonzero) {
  auto p = kac_moody_positive(validate_gim_rows(kKm8));
  auto t = Truncation::build(p, 4);
  auto ev = t.eval(LieExpr::parse("[x1,[x2,[x3,x8]]]", p.generators));
  EXPECT_FALSE(ev.is_zero);
  EXPECT_GE(t.dim(ev.multidegree), 1u);
  EXPECT_EQ(code_of([] { kac_moody_positive(validate_gim_rows(kEx1)); }), Errc::InvalidArgument);
}

TEST(Eval, AntisymmetryAndJacobi) {
  const Gim m = validate_gim_rows(kEx1);
  auto t = Truncation::build(presentation(m, RelationKind::Gim), 6);
  const std::size_t g = 6;
  std::mt19937_64 rng(8);
  std::function<LieExpr(std::size_t)> random_expr = [&](std::size_t h) -> LieExpr {
    if (h == 1) return LieExpr::gen(rng() % g);
    std::size_t left = 1 + rng() % (h - 1);
    return LieExpr::bracket(random_expr(left), random_expr(h - left));
  };
  auto add = [](RatVector a, const RatVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_expr(1 + rng() % 2), y = random_expr(1 + rng() % 2), z = random_expr(1 + rng() % 2);
    auto xy = t.eval(LieExpr::bracket(x, y)), yx = t.eval(LieExpr::bracket(y, x));
    EXPECT_EQ(add(xy.coords, yx.coords), RatVector(xy.coords.size(), 0));
    auto j1 = t.eval(LieExpr::bracket(x, LieExpr::bracket(y, z)));
    auto j2 = t.eval(LieExpr::bracket(y, LieExpr::bracket(z, x)));
    auto j3 = t.eval(LieExpr::bracket(z, LieExpr::bracket(x, y)));
    EXPECT_EQ(add(add(j1.coords, j2.coords), j3.coords), RatVector(j1.coords.size(), 0));
  }
  EXPECT_TRUE(t.eval(LieExpr::parse("[e1,e1]", ef_generators(3))).is_zero);
  auto deep = LieExpr::parse("[e1,[e2,[e1,[e2,[e1,[e2,e3]]]]]]", ef_generators(3));
  EXPECT_EQ(code_of([&] { t.eval(deep); }), Errc::HeightExceeded);
}

TEST(Coset, Obstruction) {
  const Gim m = validate_gim_rows(kEx3);
  auto w = coset_obstruction(m, {1, 1, 1, -1});
  EXPECT_TRUE(w.obstructed);
  EXPECT_EQ(w.target_parity, (std::vector<int>{1, 1, 1, 1}));
  auto v = coset_obstruction(m, {1, 1, 0, 0});
  EXPECT_FALSE(v.obstructed);
  ASSERT_TRUE(v.pair);
  EXPECT_EQ(*v.pair, (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(code_of([] { coset_obstruction(validate_gim_rows(kEx1), {1, 1, 1}); }), Errc::InvariantNotApplicable);
}

TEST(Coset, ParityIsAdditive) {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    Degree x(5), y(5), s(5);
    for (std::size_t i = 0; i < 5; ++i) {
      x[i] = d(rng);
      y[i] = d(rng);
      s[i] = x[i] + y[i];
    }
    auto px = parity(x), py = parity(y), ps = parity(s);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(ps[i], px[i] ^ py[i]);
  }
}

TEST(PresentationJson, ParsesAndComputes) {
  std::ifstream f(std::string(GIMFORGE_DATA_DIR) + "/km8.json");
  std::stringstream ss;
  ss << f.rdbuf();
  auto p = presentation_from_json(ss.str());
  EXPECT_EQ(p.generators.size(), 8u);
  auto t = Truncation::build(p, 4);
  auto ref = Truncation::build(kac_moody_positive(validate_gim_rows(kKm8)), 4);
  EXPECT_EQ(t.dims(), ref.dims());

  auto q = presentation_from_json(
      R"({"generators": [{"name": "x", "degree": [1, 0]}, {"name": "y", "degree": [0, 1]}],
          "relations": [{"ad": ["x", 2, "y"]}, ["y", ["y", "x"]]]})");
  auto tq = Truncation::build(q, 4);
  EXPECT_EQ(tq.positive_dims_by_height(), (std::vector<std::size_t>{2, 1, 0, 0}));
  EXPECT_EQ(code_of([] { presentation_from_json("{"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { presentation_from_json(R"({"generators": []})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] {
              presentation_from_json(R"({"generators": [{"name": "x", "degree": [1]}], "relations": ["[x,z]"]})");
            }),
            Errc::ParseError);
  EXPECT_EQ(code_of([] {
              presentation_from_json(
                  R"({"generators": [{"name": "x", "degree": [1]}], "relations": [{"ad": ["x", 0, "x"]}]})");
            }),
            Errc::ParseError);
}

TEST(Truncation, WarnsWhenGeneratorDies) {
  GradedPresentation p = free_presentation(2);
  p.relations.words.push_back(LieExpr::gen(0));
  auto t = Truncation::build(p, 3);
  ASSERT_EQ(t.warnings().size(), 1u);
  EXPECT_NE(t.warnings()[0].find("InconsistentRelation"), std::string::npos);
  EXPECT_EQ(t.dim({1, 0}), 0u);
}

TEST(Truncation, ThreadCountDoesNotChangeResults) {
  const Gim m = validate_gim_rows(kEx1);
  auto p = presentation(m, RelationKind::Pra, {}, 5);
  auto a = Truncation::build(p, 5, {1});
  auto b = Truncation::build(p, 5, {4});
  EXPECT_EQ(a.dims(), b.dims());
}

TEST(Truncation, RejectsBadArguments) {
  auto p = free_presentation(2);
  EXPECT_EQ(code_of([&] { Truncation::build(p, 0); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { Truncation::build(p, 13); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { LieExpr::parse("[e1,", ef_generators(2)); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_relation_kind("serre"); }), Errc::InvalidArgument);
}
