#include "gimforge/braid.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

namespace gimforge {

namespace {

Integer integral_ratio(const Rational& num2, const Rational& self) {
  Rational q = num2 / self;
  if (q.get_den() != 1) throw Error(Errc::NonIntegerPairing, "pairing ratio " + q.get_str() + " is not an integer");
  return q.get_num();
}

}  // namespace

std::string MoveSequence::to_text() const {
  std::string s;
  for (std::size_t k = 0; k < moves.size(); ++k)
    s += fmt::format("{} {} {}\n", k + 1, moves[k].i + 1, moves[k].j + 1);
  return s;
}

MoveSequence MoveSequence::from_text(const std::string& text) {
  MoveSequence seq;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long k = 0, i = 0, j = 0;
    std::string rest;
    if (!(ls >> k >> i >> j) || (ls >> rest) || i < 1 || j < 1 ||
        k != static_cast<long>(seq.size()) + 1)
      throw Error(Errc::ParseError, "bad move line: '" + line + "'");
    seq.push(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }
  return seq;
}

SpacePtr make_space(const Gim& m) { return std::make_shared<const RootSpace>(realize(m)); }

PrimeBasis::PrimeBasis(SpacePtr space, std::vector<RatVector> roots)
    : space_(std::move(space)), roots_(std::move(roots)) {
  if (!space_) throw Error(Errc::InvalidArgument, "prime basis needs a root space");
  for (const auto& r : roots_) {
    if (r.size() != space_->dim()) throw Error(Errc::InvalidArgument, "root has the wrong dimension");
    if (space_->pair(r, r) == 0) throw Error(Errc::IsotropicReflector, "isotropic root in basis");
  }
  if (rank(roots_) != roots_.size())
    throw Error(Errc::NotLinearlyIndependent, "basis roots are linearly dependent");
  pairing_ratios(*space_, roots_);
}

PrimeBasis PrimeBasis::standard(SpacePtr space) {
  std::vector<RatVector> roots;
  for (std::size_t i = 0; i < space->n; ++i) roots.push_back(space->basis_vector(i));
  return PrimeBasis(Unchecked{}, std::move(space), std::move(roots));
}

RatMatrix PrimeBasis::gram() const {
  const std::size_t n = roots_.size();
  RatMatrix g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      g(a, b) = space_->pair(roots_[a], roots_[b]);
      g(b, a) = g(a, b);
    }
  return g;
}

RatVector reflect_root(const RootSpace& space, const RatVector& a, const RatVector& b) {
  Rational aa = space.pair(a, a);
  if (aa == 0) throw Error(Errc::IsotropicReflector, "reflection in an isotropic vector");
  Rational c = 2 * space.pair(b, a) / aa;
  RatVector out = b;
  if (c != 0)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= c * a[k];
  return out;
}

IntMatrix pairing_ratios(const RootSpace& space, const std::vector<RatVector>& roots) {
  const std::size_t n = roots.size();
  std::vector<Rational> self(n);
  for (std::size_t i = 0; i < n; ++i) {
    self[i] = space.pair(roots[i], roots[i]);
    if (self[i] == 0) throw Error(Errc::IsotropicReflector, "isotropic root");
  }
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational p = 2 * space.pair(roots[i], roots[j]);
      m(i, j) = integral_ratio(p, self[i]);
      m(j, i) = integral_ratio(p, self[j]);
    }
  return m;
}

PrimeBasis braid_move(const PrimeBasis& basis, std::size_t i, std::size_t j) {
  const std::size_t n = basis.size();
  if (i >= n || j >= n) throw Error(Errc::InvalidArgument, fmt::format("move ({}, {}) out of range", i + 1, j + 1));
  const RootSpace& sp = basis.space();
  RatVector nb = reflect_root(sp, basis[i], basis[j]);
  // Only row and column j can change.
  Rational self = sp.pair(nb, nb);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == j) continue;
    Rational p = 2 * sp.pair(nb, basis[k]);
    integral_ratio(p, self);
    integral_ratio(p, sp.pair(basis[k], basis[k]));
  }
  auto roots = basis.roots();
  roots[j] = std::move(nb);
  return PrimeBasis(PrimeBasis::Unchecked{}, basis.space_ptr(), std::move(roots));
}

Gim gim_of(const PrimeBasis& basis) { return validate_gim(pairing_ratios(basis.space(), basis.roots())); }

std::string canonical_form(const PrimeBasis& basis) {
  auto roots = basis.roots();
  std::sort(roots.begin(), roots.end());
  std::string key;
  for (const auto& r : roots) {
    for (const auto& x : r) {
      key += x.get_str();
      key += ',';
    }
    key += ';';
  }
  return key;
}

PrimeBasis replay(const PrimeBasis& start, const MoveSequence& seq) {
  PrimeBasis b = start;
  for (const auto& m : seq.moves) b = braid_move(b, m.i, m.j);
  return b;
}

std::vector<RatVector> replay_roots(const RootSpace& space, std::vector<RatVector> roots, const MoveSequence& seq) {
  for (const auto& m : seq.moves) {
    if (m.i >= roots.size() || m.j >= roots.size()) throw Error(Errc::InvalidArgument, "move out of range");
    roots[m.j] = reflect_root(space, roots[m.i], roots[m.j]);
  }
  return roots;
}

Enumeration enumerate_equivalents(const PrimeBasis& start, EnumBounds bounds) {
  if (bounds.max_depth == 0 || bounds.max_nodes == 0)
    throw Error(Errc::InvalidArgument, "enumeration bounds must be positive");
  Enumeration out;
  out.complete = true;
  std::unordered_set<std::string> seen{canonical_form(start)};
  std::vector<std::size_t> depth{0};
  out.bases.push_back(start);
  out.paths.emplace_back();
  const std::size_t n = start.size();
  for (std::size_t idx = 0; idx < out.bases.size(); ++idx) {
    const bool at_limit = depth[idx] >= bounds.max_depth;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const PrimeBasis& cur = out.bases[idx];
        if (i != j && cur.space().pair(cur[i], cur[j]) == 0) continue;  // identity move
        std::optional<PrimeBasis> child;
        try {
          child = braid_move(cur, i, j);
        } catch (const Error& e) {
          if (e.code() != Errc::NonIntegerPairing) throw;
          continue;
        }
        auto key = canonical_form(*child);
        if (seen.count(key)) continue;
        if (at_limit || out.bases.size() >= bounds.max_nodes) {
          out.complete = false;
          continue;
        }
        seen.insert(std::move(key));
        MoveSequence p = out.paths[idx];
        p.push(i, j);
        out.bases.push_back(std::move(*child));
        out.paths.push_back(std::move(p));
        depth.push_back(depth[idx] + 1);
      }
    if (!out.complete && out.bases.size() >= bounds.max_nodes) break;
  }
  return out;
}

std::vector<std::size_t> dedup_by_gim(const Enumeration& e) {
  std::vector<std::size_t> reps;
  std::vector<IntMatrix> rep_m;
  for (std::size_t k = 0; k < e.bases.size(); ++k) {
    IntMatrix m = gim_of(e.bases[k]).matrix();
    bool found = false;
    for (const auto& r : rep_m)
      if (find_isomorphism(m, r)) {
        found = true;
        break;
      }
    if (!found) {
      reps.push_back(k);
      rep_m.push_back(std::move(m));
    }
  }
  return reps;
}

MoveSequence random_moves(const PrimeBasis& start, std::size_t count, std::mt19937_64& rng) {
  MoveSequence seq;
  PrimeBasis cur = start;
  const std::size_t n = cur.size();
  for (std::size_t step = 0; step < count; ++step) {
    std::vector<Move> legal;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i == j || cur.space().pair(cur[i], cur[j]) != 0) legal.push_back({i, j});
    std::shuffle(legal.begin(), legal.end(), rng);
    bool moved = false;
    for (const auto& mv : legal) {
      try {
        cur = braid_move(cur, mv.i, mv.j);
      } catch (const Error& e) {
        if (e.code() != Errc::NonIntegerPairing) throw;
        continue;
      }
      seq.moves.push_back(mv);
      moved = true;
      break;
    }
    if (!moved) break;
  }
  return seq;
}

MoveSequence remove_cycles(const PrimeBasis& start, const MoveSequence& seq) {
  auto key = [](const PrimeBasis& b) {
    std::string k;
    for (const auto& r : b.roots()) {
      for (const auto& x : r) k += x.get_str() + ",";
      k += ";";
    }
    return k;
  };
  std::vector<std::string> seen{key(start)};
  MoveSequence out;
  PrimeBasis cur = start;
  for (const auto& mv : seq.moves) {
    cur = braid_move(cur, mv.i, mv.j);
    std::string k = key(cur);
    auto it = std::find(seen.begin(), seen.end(), k);
    if (it != seen.end()) {
      const auto keep = static_cast<std::size_t>(it - seen.begin());
      out.moves.resize(keep);
      seen.resize(keep + 1);
    } else {
      out.moves.push_back(mv);
      seen.push_back(std::move(k));
    }
  }
  return out;
}

std::string basis_to_json(const PrimeBasis& basis) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : basis.roots()) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : r) v.push_back(rational_str(x));
    arr.push_back(std::move(v));
  }
  return arr.dump();
}

PrimeBasis basis_from_json(SpacePtr space, const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(Errc::ParseError, "basis must be a JSON array");
  std::vector<RatVector> roots;
  for (const auto& v : doc) {
    if (!v.is_array()) throw Error(Errc::ParseError, "root must be an array");
    RatVector r;
    for (const auto& x : v) {
      if (!x.is_string()) throw Error(Errc::ParseError, "coordinates must be \"p/q\" strings");
      try {
        r.push_back(parse_rational(x.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw Error(Errc::ParseError, e.what());
      }
    }
    roots.push_back(std::move(r));
  }
  return PrimeBasis(std::move(space), std::move(roots));
}

}  // namespace gimforge
