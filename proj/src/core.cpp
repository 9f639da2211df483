#include "gimforge/core.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace gimforge {

const char* definiteness_name(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::Indefinite: return "Indefinite";
  }
  return "?";
}

bool Gim::is_cartan() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (i != j && m_(i, j) > 0) return false;
  return true;
}

RatVector RootSpace::basis_vector(std::size_t i) const {
  RatVector v(dim(), Rational(0));
  v[i] = 1;
  return v;
}

Gim validate_gim(const IntMatrix& matrix) {
  if (!matrix.square() || matrix.rows() == 0)
    throw Error(Errc::NotSquare, fmt::format("matrix is {}x{}, expected a non-empty square matrix",
                                             matrix.rows(), matrix.cols()));
  const std::size_t n = matrix.rows();
  std::vector<Violation> bad;
  for (std::size_t i = 0; i < n; ++i)
    if (matrix(i, i) != 2) bad.push_back({Violation::Kind::DiagonalNotTwo, i, i});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sgn(matrix(i, j)) != sgn(matrix(j, i))) bad.push_back({Violation::Kind::SignMismatch, i, j});
  if (!bad.empty()) {
    std::string msg = "not a generalized intersection matrix:";
    for (const auto& v : bad) msg += " " + v.str();
    throw Error(Errc::InvalidGim, msg, std::move(bad));
  }
  return Gim(matrix);
}

Gim validate_gim_rows(const std::vector<std::vector<long>>& rows) {
  for (const auto& r : rows)
    if (r.size() != rows.size())
      throw Error(Errc::NotSquare, "matrix rows must all have length n");
  return validate_gim(int_matrix(rows));
}

std::vector<std::vector<std::size_t>> components(const Gim& m) {
  const std::size_t n = m.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> block;
    std::deque<std::size_t> q{s};
    comp[s] = static_cast<int>(out.size());
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      block.push_back(i);
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && m(i, j) != 0) {
          comp[j] = comp[s];
          q.push_back(j);
        }
    }
    std::sort(block.begin(), block.end());
    out.push_back(std::move(block));
  }
  return out;
}

bool is_indecomposable(const Gim& m) { return components(m).size() == 1; }

Symmetrizer symmetrizer(const Gim& m) {
  const std::size_t n = m.size();
  std::vector<Rational> s(n, Rational(0));
  for (const auto& block : components(m)) {
    // Propagate s_j = s_i * m_ij / m_ji outward from the first index.
    std::deque<std::size_t> q{block.front()};
    s[block.front()] = 1;
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || m(i, j) == 0) continue;
        Rational want = s[i] * Rational(m(i, j)) / Rational(m(j, i));
        if (s[j] == 0) {
          s[j] = want;
          q.push_back(j);
        } else if (s[j] != want) {
          throw Error(Errc::NotSymmetrizable,
                      fmt::format("inconsistent ratio around a cycle through {} and {}", i + 1, j + 1));
        }
      }
    }
    // Smallest positive integers on this block.
    Integer l = 1;
    for (auto i : block) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s[i].get_den_mpz_t());
    Integer g = 0;
    for (auto i : block) {
      s[i] *= l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s[i].get_num_mpz_t());
    }
    for (auto i : block) s[i] /= g;
  }
  Symmetrizer out;
  out.s.reserve(n);
  for (auto& x : s) out.s.push_back(x.get_num());
  return out;
}

bool is_symmetrizable(const Gim& m) {
  try {
    symmetrizer(m);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotSymmetrizable) return false;
    throw;
  }
}

Definiteness definiteness(const RatMatrix& g) {
  bool pd = true;
  for (const auto& minor : leading_principal_minors(g))
    if (minor <= 0) {
      pd = false;
      break;
    }
  if (pd) return Definiteness::PositiveDefinite;
  // g is symmetric, so det(tI - g) is real-rooted; its roots are all >= 0
  // exactly when the coefficients alternate in sign (zeros allowed).
  auto c = characteristic_polynomial(g);
  const std::size_t n = g.rows();
  for (std::size_t k = 0; k <= n; ++k) {
    int want = ((n - k) % 2 == 0) ? 1 : -1;
    if (sgn(c[k]) != 0 && sgn(c[k]) != want) return Definiteness::Indefinite;
  }
  return Definiteness::PositiveSemidefinite;
}

GramMatrix gram(const Gim& m, const Symmetrizer& s) {
  const std::size_t n = m.size();
  if (s.s.size() != n) throw Error(Errc::InvalidArgument, "symmetrizer size mismatch");
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Rational(s.s[i] * m(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g(i, j) != g(j, i)) throw Error(Errc::InvalidArgument, "symmetrizer does not symmetrize the matrix");
  GramMatrix out{g, definiteness(g), n - rank(g)};
  return out;
}

GramMatrix gram(const Gim& m) { return gram(m, symmetrizer(m)); }

RootSpace realize(const Gim& m) {
  auto gm = gram(m);
  const std::size_t n = m.size();
  RootSpace sp;
  sp.n = n;
  sp.radical = kernel_basis(gm.g);
  sp.k = sp.radical.size();
  sp.form = RatMatrix(n + sp.k, n + sp.k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sp.form(i, j) = gm.g(i, j);
  for (std::size_t r = 0; r < sp.k; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      sp.form(n + r, i) = sp.radical[r][i];
      sp.form(i, n + r) = sp.radical[r][i];
    }
  return sp;
}

CartanDatum cartan_datum(const Gim& m) {
  const std::size_t n = m.size();
  auto gm = gram(m);
  CartanDatum cd;
  cd.k = gm.corank;
  cd.alpha = IntMatrix(n, n + cd.k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cd.alpha(i, j) = m(j, i);
  std::size_t current = rank(to_rational(cd.alpha));
  for (std::size_t c = 0; c < cd.k; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      cd.alpha(r, n + c) = 1;
      auto next = rank(to_rational(cd.alpha));
      if (next > current) {
        current = next;
        break;
      }
      cd.alpha(r, n + c) = 0;
    }
  }
  return cd;
}

namespace {

struct IsoSearch {
  const IntMatrix& a;
  const IntMatrix& b;
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> p;
  std::vector<bool> used;

  bool extend(std::size_t i) {
    if (i == a.rows()) return true;
    for (auto c : candidates[i]) {
      if (used[c]) continue;
      bool ok = b(c, c) == a(i, i);
      for (std::size_t k = 0; ok && k < i; ++k)
        ok = b(p[k], c) == a(k, i) && b(c, p[k]) == a(i, k);
      if (!ok) continue;
      used[c] = true;
      p[i] = c;
      if (extend(i + 1)) return true;
      used[c] = false;
    }
    return false;
  }
};

std::pair<std::vector<Integer>, std::vector<Integer>> signature(const IntMatrix& m, std::size_t i) {
  std::vector<Integer> r(m.row(i).begin(), m.row(i).end());
  std::vector<Integer> c;
  for (std::size_t k = 0; k < m.rows(); ++k) c.push_back(m(k, i));
  std::sort(r.begin(), r.end());
  std::sort(c.begin(), c.end());
  return {r, c};
}

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const IntMatrix& a, const IntMatrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) return std::nullopt;
  const std::size_t n = a.rows();
  IsoSearch s{a, b, {}, std::vector<std::size_t>(n), std::vector<bool>(n, false)};
  std::vector<decltype(signature(a, 0))> sb;
  for (std::size_t j = 0; j < n; ++j) sb.push_back(signature(b, j));
  s.candidates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto si = signature(a, i);
    for (std::size_t j = 0; j < n; ++j)
      if (sb[j] == si) s.candidates[i].push_back(j);
    if (s.candidates[i].empty()) return std::nullopt;
  }
  if (!s.extend(0)) return std::nullopt;
  return s.p;
}

IntMatrix permute(const IntMatrix& a, const std::vector<std::size_t>& p) {
  IntMatrix out(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) out(i, j) = a(p[i], p[j]);
  return out;
}

std::string matrix_str(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace gimforge
