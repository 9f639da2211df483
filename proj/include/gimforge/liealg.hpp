#pragma once

// Degree-truncated graded Lie algebras given by generators and relations.
//
// Lie elements live in the free associative algebra on the generators
// (words of length <= 12 over <= 32 letters, packed five bits per letter),
// so brackets are commutators and every identity of the free Lie algebra
// holds on the nose. Each fine multidegree (letter counts) is handled
// separately: the relation subspace I is spanned by relation instances plus
// [g, I] from one height below, and the quotient basis by brackets [g, q]
// of generators with lower quotient basis elements, reduced modulo I.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gimforge/arith.hpp"
#include "gimforge/braid.hpp"
#include "gimforge/core.hpp"

namespace gimforge {

using Degree = std::vector<long>;      // coefficients on the simple roots
using Multidegree = std::vector<int>;  // letter counts, one per generator

struct Generator {
  std::string name;
  Degree degree;
};

class LieExpr {
 public:
  static LieExpr gen(std::size_t i);
  static LieExpr bracket(const LieExpr& a, const LieExpr& b);
  static LieExpr ad_power(const LieExpr& x, std::size_t k, const LieExpr& y);  // (ad x)^k y

  bool is_generator() const { return gen_ >= 0; }
  std::size_t generator() const { return static_cast<std::size_t>(gen_); }
  const LieExpr& left() const { return *l_; }
  const LieExpr& right() const { return *r_; }

  std::size_t height() const;
  Multidegree multidegree(std::size_t generators) const;
  std::string str(const std::vector<Generator>& gens) const;
  // "[e1,[e2,f3]]" with generator names; whitespace ignored.
  static LieExpr parse(const std::string& text, const std::vector<Generator>& gens);

 private:
  int gen_ = -1;
  std::shared_ptr<const LieExpr> l_, r_;
};

// (ad u)^k v = 0 for every u of degree a and v of degree b.
struct RootConstraint {
  Degree a;
  Degree b;
  std::size_t k;
  bool operator<(const RootConstraint& o) const {
    return std::tie(a, b, k) < std::tie(o.a, o.b, o.k);
  }
  bool operator==(const RootConstraint&) const = default;
};

struct KillFilter {
  RatMatrix form;      // on Gamma
  Rational threshold;  // components with (mu, mu) > threshold are set to zero
};

struct RelationSet {
  std::vector<LieExpr> words;
  std::vector<RootConstraint> constraints;
  std::optional<KillFilter> kill;
  bool complete = true;  // false when a truncated braid enumeration fed it
};

struct GradedPresentation {
  std::vector<Generator> generators;
  RelationSet relations;
};

// e_1..e_n then f_1..f_n, of degrees +alpha_i and -alpha_i.
std::vector<Generator> ef_generators(std::size_t n);

RelationSet relations_gim(const Gim& m);
RelationSet relations_im(const Gim& m);
// Constraints whose target degree cannot occur below max_height are dropped
// (0 keeps everything).
RelationSet relations_pra(const Gim& m, EnumBounds bounds = {}, std::size_t max_height = 0);

enum class RelationKind { Gim, Im, Pra };
GradedPresentation presentation(const Gim& m, RelationKind kind, EnumBounds bounds = {},
                                std::size_t max_height = 0);
RelationKind parse_relation_kind(const std::string& name);

// Positive part of the Kac-Moody algebra of a generalized Cartan matrix:
// generators x_1..x_n and the Serre relations (ad x_i)^{1-a_ij} x_j = 0.
GradedPresentation kac_moody_positive(const Gim& a);

// {"generators": [{"name": "x", "degree": [1, 0]}, ...],
//  "relations": ["[x,[x,y]]", {"ad": ["x", 2, "y"]}, ...],
//  "constraints": [{"a": [..], "b": [..], "k": 1}, ...]}
GradedPresentation presentation_from_json(const std::string& json);

struct LyndonElement {
  std::vector<int> word;
  std::string bracketing;
};
std::map<Multidegree, std::vector<LyndonElement>> free_basis(std::size_t generators, std::size_t max_height);
Integer witt_dimension(const Multidegree& nu);

// Coset of a lattice vector modulo 2 Gamma.
std::vector<int> parity(const Degree& x);

struct CosetWitness {
  bool obstructed = false;
  std::vector<int> target_parity;
  // When not obstructed: a pair (i0, j0), 0-based, with alpha_i0 + alpha_j0
  // in the target's coset.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};
CosetWitness coset_obstruction(const Gim& m, const Degree& target);

struct TruncationOptions {
  std::size_t threads = 1;
};

class Truncation {
 public:
  static Truncation build(const GradedPresentation& p, std::size_t max_height, TruncationOptions opts = {});

  std::size_t max_height() const;
  bool complete() const;
  const std::vector<std::string>& warnings() const;
  const std::vector<Generator>& generators() const;

  // Quotient dimension per fine multidegree (zeros omitted).
  std::map<Multidegree, std::size_t> dims() const;
  // Aggregated by Gamma-degree over all heights.
  std::map<Degree, std::size_t> root_dims() const;
  // Per height, the total over components of positive Gamma-degree.
  std::vector<std::size_t> positive_dims_by_height() const;

  std::size_t dim(const Multidegree& nu) const;
  std::size_t relation_rank(const Multidegree& nu) const;
  Degree degree_of(const Multidegree& nu) const;

  struct Eval {
    Multidegree multidegree;
    RatVector coords;
    bool is_zero = true;
  };
  Eval eval(const LieExpr& e) const;

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

std::string degree_str(const Degree& d);  // "[1,1,1,-1]"

}  // namespace gimforge
