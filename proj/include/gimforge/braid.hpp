#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gimforge/core.hpp"

namespace gimforge {

// Reflect root j by root i. Indices are 0-based in code; the text form below
// writes them 1-based.
struct Move {
  std::size_t i;
  std::size_t j;
  bool operator==(const Move&) const = default;
};

struct MoveSequence {
  std::vector<Move> moves;

  std::size_t size() const { return moves.size(); }
  bool empty() const { return moves.empty(); }
  void push(std::size_t i, std::size_t j) { moves.push_back({i, j}); }
  bool operator==(const MoveSequence&) const = default;

  // One line "k i j" per move, k counting from 1, i and j 1-based.
  std::string to_text() const;
  static MoveSequence from_text(const std::string& text);
};

using SpacePtr = std::shared_ptr<const RootSpace>;
SpacePtr make_space(const Gim& m);

class PrimeBasis {
 public:
  // Checks non-isotropy, independence and integral pairing ratios.
  PrimeBasis(SpacePtr space, std::vector<RatVector> roots);
  static PrimeBasis standard(SpacePtr space);

  const RootSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<RatVector>& roots() const { return roots_; }
  const RatVector& operator[](std::size_t i) const { return roots_[i]; }
  std::size_t size() const { return roots_.size(); }

  RatMatrix gram() const;
  bool operator==(const PrimeBasis& o) const { return roots_ == o.roots_; }

 private:
  struct Unchecked {};
  PrimeBasis(Unchecked, SpacePtr space, std::vector<RatVector> roots)
      : space_(std::move(space)), roots_(std::move(roots)) {}
  friend PrimeBasis braid_move(const PrimeBasis&, std::size_t, std::size_t);

  SpacePtr space_;
  std::vector<RatVector> roots_;
};

RatVector reflect_root(const RootSpace& space, const RatVector& a, const RatVector& b);

// Position j becomes rho_{root i}(root j). Throws NonIntegerPairing if the
// result would not define a GIM.
PrimeBasis braid_move(const PrimeBasis& basis, std::size_t i, std::size_t j);

Gim gim_of(const PrimeBasis& basis);

// 2(v_i,v_j)/(v_i,v_i) for arbitrary vectors; throws NonIntegerPairing when
// some ratio is not an integer.
IntMatrix pairing_ratios(const RootSpace& space, const std::vector<RatVector>& roots);

std::string canonical_form(const PrimeBasis& basis);

// Strict replay: every intermediate basis must define a GIM.
PrimeBasis replay(const PrimeBasis& start, const MoveSequence& seq);
// Replay on raw vectors, without any integrality requirement.
std::vector<RatVector> replay_roots(const RootSpace& space, std::vector<RatVector> roots,
                                    const MoveSequence& seq);

// Up to `count` uniformly chosen non-identity moves, each of which keeps the
// basis a GIM. Returns the moves actually applied.
MoveSequence random_moves(const PrimeBasis& start, std::size_t count, std::mt19937_64& rng);

// Drops every stretch of moves that returns to an earlier basis (roots
// compared in order). Replaying the result reaches the same final basis.
MoveSequence remove_cycles(const PrimeBasis& start, const MoveSequence& seq);

struct EnumBounds {
  std::size_t max_depth = 8;
  std::size_t max_nodes = 100000;
};

struct Enumeration {
  std::vector<PrimeBasis> bases;
  std::vector<MoveSequence> paths;  // paths[k] takes the start basis to bases[k]
  bool complete = false;
};

Enumeration enumerate_equivalents(const PrimeBasis& start, EnumBounds bounds = {});

// Indices into e.bases of one representative per GIM up to simultaneous
// permutation.
std::vector<std::size_t> dedup_by_gim(const Enumeration& e);

std::string basis_to_json(const PrimeBasis& basis);
PrimeBasis basis_from_json(SpacePtr space, const std::string& json);

}  // namespace gimforge
