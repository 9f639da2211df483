#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gimforge {

enum class Errc {
  NotSquare,
  InvalidGim,
  NotSymmetrizable,
  IsotropicReflector,
  NonIntegerPairing,
  NotLinearlyIndependent,
  NotPositiveDefinite,
  Decomposable,
  Indefinite,
  NoTemplateMatch,
  IllegalLabel,
  NotFiniteType,
  FirstRootNotLong,
  InvalidArgument,
  NonTerminating,
  HeightExceeded,
  InvariantNotApplicable,
  ParseError,
};

const char* errc_name(Errc c);

// One offending cell of a matrix that fails the GIM axioms (0-based indices).
struct Violation {
  enum class Kind { DiagonalNotTwo, SignMismatch };
  Kind kind;
  std::size_t i;
  std::size_t j;

  bool operator==(const Violation&) const = default;
  std::string str() const;  // 1-based, e.g. "SignMismatch(1,2)"
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Error(Errc code, const std::string& what, std::vector<Violation> v)
      : std::runtime_error(what), code_(code), violations_(std::move(v)) {}
  Error(Errc code, const std::string& what, std::vector<std::vector<std::size_t>> blocks)
      : std::runtime_error(what), code_(code), blocks_(std::move(blocks)) {}

  Errc code() const { return code_; }
  const std::vector<Violation>& violations() const { return violations_; }
  // Index blocks of a decomposable matrix (0-based).
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

 private:
  Errc code_;
  std::vector<Violation> violations_;
  std::vector<std::vector<std::size_t>> blocks_;
};

}  // namespace gimforge
