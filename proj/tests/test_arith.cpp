#include <gtest/gtest.h>

#include <random>

#include "gimforge/arith.hpp"

using namespace gimforge;

namespace {

// Cofactor expansion along the first row.
Rational cofactor_det(const RatMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Rational d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    RatMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = a(i, j);
    d += (c % 2 ? -1 : 1) * a(0, c) * cofactor_det(minor);
  }
  return d;
}

IntMatrix random_int(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST(Arith, DeterminantsAgreeWithCofactorExpansion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    IntMatrix m = random_int(rng, n, -4, 4);
    Rational want = cofactor_det(to_rational(m));
    EXPECT_EQ(Rational(determinant(m)), want);
    EXPECT_EQ(determinant(to_rational(m)), want);
  }
}

TEST(Arith, RankAndKernel) {
  RatMatrix g = to_rational(int_matrix({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
  EXPECT_EQ(rank(g), 2u);
  auto k = kernel_basis(g);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], (RatVector{1, 1, 1}));
  auto all2 = to_rational(int_matrix({{2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}, {2, 2, 2, 2}}));
  EXPECT_EQ(rank(all2), 1u);
  EXPECT_EQ(kernel_basis(all2).size(), 3u);
}

TEST(Arith, KernelVectorsAreAnnihilated) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_int(rng, 4, -1, 1);
    RatMatrix r = to_rational(m);
    auto k = kernel_basis(r);
    EXPECT_EQ(k.size() + rank(r), 4u);
    for (const auto& v : k)
      for (const auto& x : mat_vec(r, v)) EXPECT_EQ(x, 0);
  }
}

TEST(Arith, CharacteristicPolynomial) {
  // det(tI - A2) = t^2 - 4t + 3
  auto c = characteristic_polynomial(to_rational(int_matrix({{2, -1}, {-1, 2}})));
  EXPECT_EQ(c, (RatVector{3, -4, 1}));
}

TEST(Arith, LeadingMinors) {
  auto m = leading_principal_minors(to_rational(int_matrix({{2, -1, 1}, {-1, 2, -1}, {1, -1, 2}})));
  EXPECT_EQ(m, (RatVector{2, 3, 4}));
}

TEST(Arith, SolveRoundTrip) {
  RatMatrix a = to_rational(int_matrix({{2, 1}, {1, 3}}));
  auto x = solve(a, {3, 5});
  ASSERT_TRUE(x);
  EXPECT_EQ(mat_vec(a, *x), (RatVector{3, 5}));
  EXPECT_FALSE(solve(to_rational(int_matrix({{1, 2}, {2, 4}})), {1, 1}));
}

TEST(Arith, RationalText) {
  Rational half(3, 6);
  half.canonicalize();
  EXPECT_EQ(rational_str(half), "1/2");
  EXPECT_EQ(rational_str(Rational(-4)), "-4/1");
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("x"), std::exception);
}
