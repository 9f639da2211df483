#include "gimforge/error.hpp"

#include <fmt/format.h>

namespace gimforge {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::InvalidGim: return "InvalidGim";
    case Errc::NotSymmetrizable: return "NotSymmetrizable";
    case Errc::IsotropicReflector: return "IsotropicReflector";
    case Errc::NonIntegerPairing: return "NonIntegerPairing";
    case Errc::NotLinearlyIndependent: return "NotLinearlyIndependent";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::Decomposable: return "Decomposable";
    case Errc::Indefinite: return "Indefinite";
    case Errc::NoTemplateMatch: return "NoTemplateMatch";
    case Errc::IllegalLabel: return "IllegalLabel";
    case Errc::NotFiniteType: return "NotFiniteType";
    case Errc::FirstRootNotLong: return "FirstRootNotLong";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonTerminating: return "NonTerminating";
    case Errc::HeightExceeded: return "HeightExceeded";
    case Errc::InvariantNotApplicable: return "InvariantNotApplicable";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string Violation::str() const {
  if (kind == Kind::DiagonalNotTwo) return fmt::format("DiagonalNotTwo({})", i + 1);
  return fmt::format("SignMismatch({},{})", i + 1, j + 1);
}

}  // namespace gimforge
