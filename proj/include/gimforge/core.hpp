#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gimforge/arith.hpp"
#include "gimforge/error.hpp"

namespace gimforge {

// A generalized intersection matrix: diagonal 2, off-diagonal entries whose
// signs agree across the diagonal. Only constructible through validate_gim.
class Gim {
 public:
  std::size_t size() const { return m_.rows(); }
  const IntMatrix& matrix() const { return m_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  bool operator==(const Gim& o) const { return m_ == o.m_; }

  // Off-diagonal entries all <= 0.
  bool is_cartan() const;

 private:
  explicit Gim(IntMatrix m) : m_(std::move(m)) {}
  friend Gim validate_gim(const IntMatrix&);
  IntMatrix m_;
};

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };
const char* definiteness_name(Definiteness d);

struct Symmetrizer {
  std::vector<Integer> s;
};

struct GramMatrix {
  RatMatrix g;
  Definiteness definiteness;
  std::size_t corank;
};

// Vector space Q^{n+K}: the first n coordinates are the prime roots v_i,
// the last K the radical-dual vectors u_j.
struct RootSpace {
  std::size_t n = 0;
  std::size_t k = 0;
  RatMatrix form;                 // (n+K) x (n+K)
  std::vector<RatVector> radical; // K rows of W, each of length n

  std::size_t dim() const { return n + k; }
  Rational pair(const RatVector& x, const RatVector& y) const { return bilinear(form, x, y); }
  RatVector basis_vector(std::size_t i) const;
};

struct CartanDatum {
  std::size_t k = 0;
  IntMatrix alpha;  // n x (n+K); row i is alpha_i on (h_1..h_n, d_1..d_K)
};

Gim validate_gim(const IntMatrix& matrix);
Gim validate_gim_rows(const std::vector<std::vector<long>>& rows);

// Connected components of the nonzero-entry graph, each sorted ascending.
std::vector<std::vector<std::size_t>> components(const Gim& m);
bool is_indecomposable(const Gim& m);

Symmetrizer symmetrizer(const Gim& m);
bool is_symmetrizable(const Gim& m);

Definiteness definiteness(const RatMatrix& symmetric);
GramMatrix gram(const Gim& m, const Symmetrizer& s);
GramMatrix gram(const Gim& m);

RootSpace realize(const Gim& m);
CartanDatum cartan_datum(const Gim& m);

// Permutation p with b(p[i], p[j]) == a(i, j) for all i, j, if one exists.
std::optional<std::vector<std::size_t>> find_isomorphism(const IntMatrix& a, const IntMatrix& b);

// a(p[i], p[j]) as a new matrix.
IntMatrix permute(const IntMatrix& a, const std::vector<std::size_t>& p);

std::string matrix_str(const IntMatrix& m);  // "[[2,-1],[-1,2]]"

}  // namespace gimforge
