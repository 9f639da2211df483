#include "gimforge/arith.hpp"

#include <stdexcept>
#include <utility>

namespace gimforge {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t c = n ? rows[0].size() : 0;
  IntMatrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<long>> to_long_rows(const IntMatrix& m) {
  std::vector<std::vector<long>> out(m.rows(), std::vector<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p()) throw std::overflow_error("matrix entry exceeds long");
      out[i][j] = m(i, j).get_si();
    }
  return out;
}

Rational determinant(RatMatrix a) {
  if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& in) {
  if (!in.square()) throw std::invalid_argument("determinant of non-square matrix");
  IntMatrix a = in;
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMatrix a) { return rref(a).size(); }

std::size_t rank(const std::vector<RatVector>& rows) {
  if (rows.empty()) return 0;
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return rank(std::move(m));
}

std::vector<RatVector> kernel_basis(const RatMatrix& in) {
  RatMatrix a = in;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

RatVector characteristic_polynomial(const RatMatrix& a) {
  if (!a.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  RatVector c(n + 1, Rational(0));
  c[n] = 1;
  RatMatrix m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    RatMatrix am = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

RatVector leading_principal_minors(const RatMatrix& a) {
  RatVector out;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < a.rows(); ++k) {
    idx.push_back(k);
    out.push_back(determinant(submatrix(a, idx)));
  }
  return out;
}

Rational bilinear(const RatMatrix& form, const RatVector& x, const RatVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rational t = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) t += form(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

RatVector mat_vec(const RatMatrix& a, const RatVector& x) {
  RatVector y(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (x[j] != 0) y[i] += a(i, j) * x[j];
  return y;
}

std::optional<RatVector> solve(RatMatrix a, RatVector b) {
  const std::size_t n = a.rows();
  if (n == 0) return RatVector{};
  RatMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

std::string rational_str(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace gimforge
