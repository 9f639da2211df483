#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gimforge/braid.hpp"
#include "gimforge/core.hpp"
#include "gimforge/rootsys.hpp"

namespace gimforge {

// A modified Dynkin label such as "A_3(1)", "B_3(2,1)", "BC_2(1,1,1)".
// Multiplicities: r for every family, s for B, C, F4, G2, A1, BC, t for BC.
// The two-length rank-one family prints as "A_1(r,s)".
struct ModifiedDynkinType {
  Family family = Family::A;
  std::size_t rank = 1;
  std::size_t r = 1;
  std::size_t s = 0;
  std::size_t t = 0;

  bool operator==(const ModifiedDynkinType&) const = default;

  std::string label() const;
  static ModifiedDynkinType parse(const std::string& label);  // IllegalLabel
  void check() const;                                          // IllegalLabel
  std::size_t matrix_size() const;
  std::size_t node_count() const;
  std::vector<std::size_t> multiplicities() const;  // per diagram node
};

struct Template {
  Gim gim;
  GramMatrix gram;
  std::vector<std::size_t> node;  // diagram node (0-based) of each row
};

Template make_template(const ModifiedDynkinType& t);

// Cartan matrix of a finite type in diagram-node order (all multiplicities 1).
Gim finite_cartan(Family f, std::size_t l);

// All legal labels with rank <= max_rank and multiplicities <= max_mult.
std::vector<ModifiedDynkinType> all_labels(std::size_t max_rank, std::size_t max_mult);

struct AntiDominant {
  RatVector root;
  std::vector<std::size_t> word;  // indices into sub, in application order
};

AntiDominant antidominantize(const RootSpace& space, const std::vector<RatVector>& sub, const RatVector& x);

struct Reduction {
  Gim gim;
  MoveSequence certificate;
};

Reduction reduce_positive(const Gim& m);

// For corank one: the basis just before the remaining roots are moved onto
// template nodes, where the extra root is the negative of a highest root
// (modulo the radical) and the whole basis is an affine Cartan matrix.
struct AffineForm {
  std::string type;  // e.g. "A_2^(1)", "D_3^(2)"
  Gim gim;
  MoveSequence certificate;
};

struct ClassificationReport {
  Gim input;
  Definiteness definiteness;
  std::size_t corank;
  ModifiedDynkinType type;
  PrimeBasis reduced_basis;
  MoveSequence certificate;
  Gim reduced_gim;
  std::vector<std::size_t> node_of;  // diagram node (0-based) of each reduced root
  std::optional<AffineForm> affine;
  bool complete = true;
};

ClassificationReport classify(const Gim& m);

Gim gim_from_toroidal(const Gim& c, std::size_t nu);

std::string report_json(const ClassificationReport& rep);
std::string report_text(const ClassificationReport& rep);
std::string diagram_dot(const ModifiedDynkinType& t);

}  // namespace gimforge
