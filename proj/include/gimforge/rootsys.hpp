#pragma once

// Finite root-system helpers used by the classifier: orbit closures of a set
// of vectors modulo the radical of a positive semidefinite form, and Dynkin
// identification of a Cartan-type simple system.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gimforge/arith.hpp"

namespace gimforge {

enum class Family { A, B, C, D, E6, E7, E8, F4, G2, A1, BC };
const char* family_name(Family f);  // "A", "B", ..., "E6", "BC"

// Q^n with a symmetric positive semidefinite form g; vectors are compared
// modulo the radical of g through their pairing vector g x.
class QuotientForm {
 public:
  explicit QuotientForm(RatMatrix g) : g_(std::move(g)) {}

  const RatMatrix& gram() const { return g_; }
  std::size_t dim() const { return g_.rows(); }
  Rational pair(const RatVector& x, const RatVector& y) const { return bilinear(g_, x, y); }
  RatVector reflect(const RatVector& a, const RatVector& b) const;
  std::string key(const RatVector& x) const;
  bool in_radical(const RatVector& x) const;
  bool congruent(const RatVector& x, const RatVector& y) const { return key(x) == key(y); }

  using RootSet = std::map<std::string, RatVector>;
  // Orbit of gens under the group generated by their own reflections.
  // Throws NonTerminating past `cap` elements (the set is then infinite or
  // the input was not of finite type).
  RootSet closure(const std::vector<RatVector>& gens, std::size_t cap = 20000) const;

 private:
  RatMatrix g_;
};

struct DynkinId {
  Family family;
  std::size_t rank;
  // order[k] is the input index sitting at diagram node k+1, with the node
  // numbering used by the modified-diagram labels: node 1 is always a long
  // root; for B it is the far end from the short node, for C the long end
  // of the double bond, for D the end of the long leg, for E the Bourbaki
  // node 1; for F4 and G2 nodes run long to short.
  std::vector<std::size_t> order;
};

// Input: Gram matrix of a connected simple system of finite type (positive
// definite, nonpositive off-diagonal, crystallographic). Throws
// NotFiniteType otherwise.
DynkinId identify_dynkin(const RatMatrix& gram);

// Simple roots in Euclidean coordinates, in the node order described above.
// For BC the first vector is the extra longest node -2e_1 followed by the
// B_l simple roots; for A1 the two vectors are 2e_1 and -e_1.
std::vector<RatVector> figure_simple_roots(Family f, std::size_t l);

// Dot product on Euclidean coordinates.
Rational dot(const RatVector& x, const RatVector& y);

}  // namespace gimforge
