#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gimforge/core.hpp"

using namespace gimforge;

namespace {

const std::vector<std::vector<long>> kSlodowy{{2, -1, 0, 1}, {-1, 2, -1, 1}, {0, -2, 2, -2}, {1, 1, -1, 2}};
const std::vector<std::vector<long>> kEx1{{2, -1, 1}, {-1, 2, -1}, {1, -1, 2}};
const std::vector<std::vector<long>> kAffA2{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
const std::vector<std::vector<long>> kEx3{{2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}};

std::vector<long> ints(const Symmetrizer& s) {
  std::vector<long> v;
  for (const auto& x : s.s) v.push_back(x.get_si());
  return v;
}

// Random symmetrizable GIM: symmetric integer form with even diagonal,
// scaled by a random diagonal, entries chosen so that ratios stay integral.
IntMatrix random_symmetrizable(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<long> s(n);
  for (auto& x : s) x = 1 + pick(rng) % 2;  // 1 or 2
  IntMatrix m(n, n);
  std::uniform_int_distribution<int> e(-2, 2);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 2;
    for (std::size_t j = i + 1; j < n; ++j) {
      // (a_i,a_j) = b * lcm(s_i,s_j); m_ij = 2 b lcm / (2 s_i)
      long l = std::lcm(s[i], s[j]);
      long b = e(rng);
      m(i, j) = b * l / s[i];
      m(j, i) = b * l / s[j];
    }
  }
  return m;
}

}  // namespace

TEST(Validate, AcceptsSlodowyAndRankOne) {
  EXPECT_NO_THROW(validate_gim_rows(kSlodowy));
  EXPECT_NO_THROW(validate_gim_rows({{2}}));
}

TEST(Validate, ReportsEveryViolation) {
  try {
    validate_gim_rows({{2, 1}, {-1, 2}});
    FAIL() << "sign mismatch accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidGim);
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].str(), "SignMismatch(1,2)");
  }
  try {
    validate_gim_rows({{3, 0, 1}, {0, 2, 0}, {0, 0, 1}});
    FAIL() << "bad matrix accepted";
  } catch (const Error& e) {
    std::vector<std::string> got;
    for (const auto& v : e.violations()) got.push_back(v.str());
    EXPECT_EQ(got, (std::vector<std::string>{"DiagonalNotTwo(1)", "DiagonalNotTwo(3)", "SignMismatch(1,3)"}));
  }
  EXPECT_THROW(validate_gim_rows({{2, 1}}), Error);
}

TEST(Symmetrizer, KnownCases) {
  EXPECT_EQ(ints(symmetrizer(validate_gim_rows(kSlodowy))), (std::vector<long>{2, 2, 1, 2}));
  EXPECT_EQ(ints(symmetrizer(validate_gim_rows(kEx3))), (std::vector<long>{1, 1, 1, 1}));
  EXPECT_EQ(ints(symmetrizer(validate_gim_rows({{2, -1}, {-3, 2}}))), (std::vector<long>{3, 1}));
}

TEST(Symmetrizer, SlodowyMatchesExhaustiveSearch) {
  const Gim m = validate_gim_rows(kSlodowy);
  std::vector<std::vector<long>> found;
  for (long a = 1; a <= 4; ++a)
    for (long b = 1; b <= 4; ++b)
      for (long c = 1; c <= 4; ++c)
        for (long d = 1; d <= 4; ++d) {
          std::vector<long> s{a, b, c, d};
          if (std::gcd(std::gcd(a, b), std::gcd(c, d)) != 1) continue;
          bool ok = true;
          for (std::size_t i = 0; i < 4 && ok; ++i)
            for (std::size_t j = 0; j < 4 && ok; ++j) ok = s[i] * m(i, j) == s[j] * m(j, i);
          if (ok) found.push_back(s);
        }
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], ints(symmetrizer(m)));
}

TEST(Symmetrizer, RejectsInconsistentCycle) {
  // Ratios around the cycle 1-2-3 multiply to 2, not 1.
  EXPECT_THROW(
      {
        try {
          symmetrizer(validate_gim_rows({{2, -1, -1}, {-2, 2, -1}, {-1, -1, 2}}));
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::NotSymmetrizable);
          throw;
        }
      },
      Error);
}

TEST(Symmetrizer, EquivariantUnderPermutation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Gim m = validate_gim(random_symmetrizable(rng, n));
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    const Gim pm = validate_gim(permute(m.matrix(), p));
    auto s = symmetrizer(m).s;
    auto sp = symmetrizer(pm).s;
    // Components are normalized separately, so compare ratios within blocks.
    for (const auto& comp : components(pm))
      for (auto a : comp)
        for (auto b : comp) EXPECT_EQ(sp[a] * s[p[b]], sp[b] * s[p[a]]);
  }
}

TEST(Gram, DefinitenessAndCorank) {
  auto g1 = gram(validate_gim_rows(kEx1));
  EXPECT_EQ(g1.definiteness, Definiteness::PositiveDefinite);
  EXPECT_EQ(g1.corank, 0u);
  auto g2 = gram(validate_gim_rows(kAffA2));
  EXPECT_EQ(g2.definiteness, Definiteness::PositiveSemidefinite);
  EXPECT_EQ(g2.corank, 1u);
  EXPECT_EQ(gram(validate_gim_rows({{2, -3}, {-3, 2}})).definiteness, Definiteness::Indefinite);
  auto g3 = gram(validate_gim_rows(kEx3));
  EXPECT_EQ(g3.definiteness, Definiteness::PositiveSemidefinite);
  EXPECT_EQ(g3.corank, 3u);
}

TEST(Gram, RecoversMatrixEntries) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Gim m = validate_gim(random_symmetrizable(rng, 1 + trial % 6));
    auto g = gram(m).g;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        EXPECT_EQ(g(i, j), g(j, i));
        EXPECT_EQ(2 * g(i, j) / g(i, i), Rational(m(i, j)));
      }
  }
}

namespace {

// Brute-force oracle: all principal minors >= 0 (PSD), all leading > 0 (PD).
Definiteness minor_oracle(const RatMatrix& g) {
  const std::size_t n = g.rows();
  bool psd = true;
  for (unsigned mask = 1; mask < (1u << n) && psd; ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    psd = determinant(submatrix(g, idx)) >= 0;
  }
  if (!psd) return Definiteness::Indefinite;
  return determinant(g) > 0 ? Definiteness::PositiveDefinite : Definiteness::PositiveSemidefinite;
}

}  // namespace

TEST(Gram, DefinitenessMatchesMinorOracle) {
  // Every symmetric integer matrix with diagonal 2 and entries in [-3, 3]
  // is a symmetric GIM; sweep n <= 3 exhaustively and n = 4 by sampling.
  const std::vector<long> vals{-3, -2, -1, 0, 1, 2, 3};
  std::size_t checked = 0;
  for (long a : vals) {
    auto g = gram(validate_gim_rows({{2, a}, {a, 2}}));
    EXPECT_EQ(g.definiteness, minor_oracle(g.g));
    ++checked;
    for (long b : vals)
      for (long c : vals) {
        auto g3 = gram(validate_gim_rows({{2, a, b}, {a, 2, c}, {b, c, 2}}));
        EXPECT_EQ(g3.definiteness, minor_oracle(g3.g));
        ++checked;
      }
  }
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 2000; ++trial) {
    IntMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      m(i, i) = 2;
      for (std::size_t j = i + 1; j < 4; ++j) m(i, j) = m(j, i) = d(rng);
    }
    auto g = gram(validate_gim(m));
    EXPECT_EQ(g.definiteness, minor_oracle(g.g));
    ++checked;
  }
  EXPECT_GT(checked, 2000u);
}

TEST(Realize, FormIsNondegenerate) {
  auto sp1 = realize(validate_gim_rows(kEx1));
  EXPECT_EQ(sp1.dim(), 3u);
  auto sp2 = realize(validate_gim_rows(kAffA2));
  EXPECT_EQ(sp2.dim(), 4u);
  ASSERT_EQ(sp2.radical.size(), 1u);
  EXPECT_EQ(sp2.radical[0], (RatVector{1, 1, 1}));
  EXPECT_NE(determinant(sp2.form), 0);
  auto sp3 = realize(validate_gim_rows(kEx3));
  EXPECT_EQ(sp3.dim(), 7u);
  EXPECT_EQ(sp3.k, 3u);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const Gim m = validate_gim(random_symmetrizable(rng, 1 + trial % 6));
    auto sp = realize(m);
    EXPECT_NE(determinant(sp.form), 0);
    auto g = gram(m).g;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(sp.form(i, j), g(i, j));
    for (std::size_t a = m.size(); a < sp.dim(); ++a)
      for (std::size_t b = m.size(); b < sp.dim(); ++b) EXPECT_EQ(sp.form(a, b), 0);
  }
}

TEST(CartanDatum, IndependentSimpleFunctionals) {
  for (const auto& rows : {kEx1, kAffA2, kEx3, kSlodowy}) {
    const Gim m = validate_gim_rows(rows);
    auto cd = cartan_datum(m);
    EXPECT_EQ(cd.k, gram(m).corank);
    EXPECT_EQ(rank(to_rational(cd.alpha)), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(cd.alpha(i, j), m(j, i));
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t c = m.size(); c < cd.alpha.cols(); ++c)
        EXPECT_TRUE(cd.alpha(i, c) == 0 || cd.alpha(i, c) == 1);
  }
  EXPECT_EQ(cartan_datum(validate_gim_rows(kEx1)).alpha.cols(), 3u);
  EXPECT_EQ(cartan_datum(validate_gim_rows(kEx3)).alpha.cols(), 7u);
}

TEST(Components, SplitsOrthogonalBlocks) {
  auto c = components(validate_gim_rows({{2, 0, -1}, {0, 2, 0}, {-1, 0, 2}}));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(c[1], (std::vector<std::size_t>{1}));
  EXPECT_TRUE(is_indecomposable(validate_gim_rows(kSlodowy)));
}

TEST(Isomorphism, FindsPermutation) {
  IntMatrix a = int_matrix({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}});
  std::vector<std::size_t> p{2, 0, 1};
  IntMatrix b = permute(a, p);
  auto q = find_isomorphism(b, a);
  ASSERT_TRUE(q);
  EXPECT_EQ(permute(a, *q), b);
  EXPECT_FALSE(find_isomorphism(a, int_matrix({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})));
}
