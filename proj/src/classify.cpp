#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "gimforge/classify.hpp"

namespace gimforge {

namespace {

// Working copy of a basis at the level of the Gram form on Q^n: roots keep
// only their v-coordinates, and every reflection is logged as a move.
struct Frame {
  QuotientForm q;
  std::vector<RatVector> roots;
  MoveSequence moves;

  explicit Frame(const RatMatrix& g) : q(g) {
    for (std::size_t i = 0; i < g.rows(); ++i) {
      RatVector e(g.rows(), Rational(0));
      e[i] = 1;
      roots.push_back(std::move(e));
    }
  }
  Rational pair(std::size_t a, std::size_t b) const { return q.pair(roots[a], roots[b]); }
  void move(std::size_t i, std::size_t j) {
    roots[j] = q.reflect(roots[i], roots[j]);
    moves.push(i, j);
  }
  RatMatrix gram_of(const std::vector<std::size_t>& idx) const {
    RatMatrix g(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) g(a, b) = pair(idx[a], idx[b]);
    return g;
  }
  std::vector<RatVector> pick(const std::vector<std::size_t>& idx) const {
    std::vector<RatVector> out;
    for (auto i : idx) out.push_back(roots[i]);
    return out;
  }
};

std::size_t step_cap(std::size_t p) { return 10 * (2 * p * p + 240); }

[[noreturn]] void no_match(const std::string& why) { throw Error(Errc::NoTemplateMatch, why); }

// Generic anti-dominantization: pair(k, x) is the pairing of sub element k
// with the current x, reflect(k) applies rho_{sub k} to x.
template <class Pair, class Reflect>
std::vector<std::size_t> antidominant_loop(std::size_t p, Pair pair, Reflect reflect) {
  std::vector<std::size_t> word;
  while (true) {
    bool moved = false;
    for (std::size_t k = 0; k < p; ++k)
      if (pair(k) > 0) {
        reflect(k);
        word.push_back(k);
        moved = true;
        break;
      }
    if (!moved) return word;
    if (word.size() > step_cap(p))
      throw Error(Errc::NonTerminating, "anti-dominantization did not stop; the sub-basis is not of finite type");
  }
}

void antidominant_in_frame(Frame& f, const std::vector<std::size_t>& sub, std::size_t x) {
  antidominant_loop(
      sub.size(), [&](std::size_t k) { return f.pair(sub[k], x); },
      [&](std::size_t k) { f.move(sub[k], x); });
}

std::vector<std::size_t> antidominant_word(const QuotientForm& q, const std::vector<RatVector>& sub, RatVector& x) {
  return antidominant_loop(
      sub.size(), [&](std::size_t k) { return q.pair(sub[k], x); },
      [&](std::size_t k) { x = q.reflect(sub[k], x); });
}

// Each position after the first pairs nonzero with an earlier one; the
// positions are anti-dominantized in turn against those before them.
void reduce_to_cartan(Frame& f, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> sub;
  for (auto p : order) {
    antidominant_in_frame(f, sub, p);
    sub.push_back(p);
  }
}

bool connected(const Frame& f, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return true;
  std::vector<bool> seen(idx.size(), false);
  std::deque<std::size_t> q{0};
  seen[0] = true;
  std::size_t cnt = 0;
  while (!q.empty()) {
    auto a = q.front();
    q.pop_front();
    ++cnt;
    for (std::size_t b = 0; b < idx.size(); ++b)
      if (!seen[b] && f.pair(idx[a], idx[b]) != 0) {
        seen[b] = true;
        q.push_back(b);
      }
  }
  return cnt == idx.size();
}

using KeySet = std::set<std::string>;

KeySet keys_of(const QuotientForm::RootSet& s) {
  KeySet out;
  for (const auto& [k, v] : s) out.insert(k);
  return out;
}

std::size_t overlap(const KeySet& a, const KeySet& b) {
  std::size_t c = 0;
  for (const auto& k : a) c += b.count(k);
  return c;
}

std::string affine_name(Family f, std::size_t l, bool extra_long) {
  if (f == Family::BC || f == Family::A1) return fmt::format("A_{}^(2)", 2 * l);
  if (extra_long) {
    switch (f) {
      case Family::A: return fmt::format("A_{}^(1)", l);
      case Family::B: return l == 2 ? "C_2^(1)" : fmt::format("B_{}^(1)", l);
      case Family::C: return fmt::format("C_{}^(1)", l);
      case Family::D: return fmt::format("D_{}^(1)", l);
      case Family::E6: return "E_6^(1)";
      case Family::E7: return "E_7^(1)";
      case Family::E8: return "E_8^(1)";
      case Family::F4: return "F_4^(1)";
      case Family::G2: return "G_2^(1)";
      default: break;
    }
  } else {
    switch (f) {
      case Family::B: return fmt::format("D_{}^(2)", l + 1);
      case Family::C: return fmt::format("A_{}^(2)", 2 * l - 1);
      case Family::F4: return "E_6^(2)";
      case Family::G2: return "D_4^(3)";
      default: break;
    }
  }
  no_match("no affine type for this configuration");
}

std::vector<std::size_t> bfs_order(const Gim& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> order{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && m(order[h], j) != 0) {
        seen[j] = true;
        order.push_back(j);
      }
  return order;
}

void require_indecomposable(const Gim& m) {
  auto blocks = components(m);
  if (blocks.size() > 1) {
    std::string msg = "matrix is decomposable into blocks";
    for (const auto& b : blocks) {
      msg += " {";
      for (std::size_t k = 0; k < b.size(); ++k) msg += (k ? "," : "") + std::to_string(b[k] + 1);
      msg += "}";
    }
    throw Error(Errc::Decomposable, msg, blocks);
  }
}

RatVector pad(const RatVector& v, std::size_t dim) {
  RatVector out = v;
  out.resize(dim, Rational(0));
  return out;
}

}  // namespace

AntiDominant antidominantize(const RootSpace& space, const std::vector<RatVector>& sub, const RatVector& x) {
  AntiDominant out{x, {}};
  out.word = antidominant_loop(
      sub.size(), [&](std::size_t k) { return space.pair(sub[k], out.root); },
      [&](std::size_t k) { out.root = reflect_root(space, sub[k], out.root); });
  return out;
}

Reduction reduce_positive(const Gim& m) {
  require_indecomposable(m);
  auto gm = gram(m);
  if (gm.definiteness != Definiteness::PositiveDefinite)
    throw Error(Errc::NotPositiveDefinite, "matrix is not positive definite");
  Frame f(gm.g);
  reduce_to_cartan(f, bfs_order(m));
  RootSpace sp;
  sp.n = m.size();
  sp.form = gm.g;
  Gim out = validate_gim(pairing_ratios(sp, f.roots));
  return {out, f.moves};
}

ClassificationReport classify(const Gim& m) {
  require_indecomposable(m);
  auto sym = symmetrizer(m);
  auto gm = gram(m, sym);
  if (gm.definiteness == Definiteness::Indefinite)
    throw Error(Errc::Indefinite, "the Gram form is indefinite; only semi-positive matrices are classified");
  const std::size_t n = m.size();
  const std::size_t K = gm.corank;
  const std::size_t l = n - K;
  Frame f(gm.g);

  // (a) A connected nondegenerate sub-basis of full rank, reduced to
  // Cartan type.
  std::vector<std::size_t> chosen;
  std::vector<bool> in(n, false);
  while (chosen.size() < l) {
    bool progress = false;
    for (std::size_t p = 0; p < n && chosen.size() < l; ++p) {
      if (in[p]) continue;
      bool adjacent = chosen.empty();
      for (auto c : chosen)
        if (f.pair(c, p) != 0) adjacent = true;
      if (!adjacent) continue;
      auto cand = chosen;
      cand.push_back(p);
      if (determinant(f.gram_of(cand)) == 0) continue;
      chosen = std::move(cand);
      in[p] = true;
      progress = true;
    }
    if (!progress) no_match("no nondegenerate connected sub-basis of full rank");
  }
  reduce_to_cartan(f, chosen);

  // (b) The root system generated by the whole basis modulo the radical,
  // and the part of it a reduced simple system has to generate.
  auto everything = f.q.closure(f.roots);
  bool reduced = true;
  for (const auto& [k, v] : everything) {
    RatVector d = v;
    for (auto& x : d) x *= 2;
    if (everything.count(f.q.key(d))) {
      reduced = false;
      break;
    }
  }
  KeySet target;
  for (const auto& [k, v] : everything) {
    RatVector h = v;
    for (auto& x : h) x /= 2;
    if (reduced || !everything.count(f.q.key(h))) target.insert(k);
  }

  std::vector<std::size_t> P = chosen;
  auto extras_of = [&](const std::vector<std::size_t>& sub) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
      if (std::find(sub.begin(), sub.end(), i) == sub.end()) out.push_back(i);
    return out;
  };
  for (auto e : extras_of(P)) antidominant_in_frame(f, P, e);

  // (c) Swap in extra roots until P generates the target system.
  for (std::size_t round = 0;; ++round) {
    auto clP = keys_of(f.q.closure(f.pick(P)));
    if (clP == target) break;
    if (round > 4 * n + 16) no_match("promotion did not converge");
    auto extras = extras_of(P);
    std::size_t y = n;
    for (auto e : extras) {
      auto k = f.q.key(f.roots[e]);
      if (!clP.count(k) && target.count(k)) {
        y = e;
        break;
      }
    }
    if (y == n)
      for (auto e : extras)
        if (!clP.count(f.q.key(f.roots[e]))) {
          y = e;
          break;
        }
    if (y == n) no_match("extra roots already lie in the subsystem but it is not the target");
    std::vector<std::size_t> C = P;
    C.push_back(y);
    std::sort(C.begin(), C.end());
    auto cur = std::make_pair(overlap(clP, target), clP.size());
    std::optional<std::vector<std::size_t>> best;
    auto best_score = cur;
    for (auto z : C) {
      std::vector<std::size_t> D;
      for (auto c : C)
        if (c != z) D.push_back(c);
      if (determinant(f.gram_of(D)) == 0 || !connected(f, D)) continue;
      auto clD = keys_of(f.q.closure(f.pick(D)));
      auto score = std::make_pair(overlap(clD, target), clD.size());
      if (score > best_score) {
        best_score = score;
        best = D;
      }
    }
    if (!best) no_match("no node of the extended diagram can be dropped to enlarge the subsystem");
    P = *best;
    for (auto e : extras_of(P)) antidominant_in_frame(f, P, e);
  }

  // (d) Name the simple system.
  DynkinId id = identify_dynkin(f.gram_of(P));
  std::vector<std::size_t> fig;  // positions in diagram-node order
  for (auto k : id.order) fig.push_back(P[k]);
  Family family = id.family;
  if (!reduced) {
    if (id.family == Family::B) family = Family::BC;
    else if (id.family == Family::A && id.rank == 1) family = Family::A1;
    else no_match("non-reduced root system whose reduced part is not of type B");
  }
  const std::size_t rank = id.rank;
  const bool bc = family == Family::BC || family == Family::A1;
  const Rational len_first = f.pair(fig.front(), fig.front());
  const Rational len_last = f.pair(fig.back(), fig.back());

  ClassificationReport rep{m, gm.definiteness, K, {}, PrimeBasis::standard(make_space(m)), {}, m, {}, {}, true};
  auto space = rep.reduced_basis.space_ptr();

  auto padded = [&] {
    std::vector<RatVector> v;
    for (const auto& r : f.roots) v.push_back(pad(r, space->dim()));
    return v;
  };
  if (K == 1) {
    auto y = extras_of(P).front();
    bool extra_long = f.pair(y, y) == len_first;
    rep.affine = AffineForm{affine_name(family, rank, extra_long),
                            validate_gim(pairing_ratios(*space, padded())), f.moves};
  }

  // (e) Move every remaining root onto its diagram node.
  std::vector<std::size_t> node_of(n, 0);
  for (std::size_t k = 0; k < fig.size(); ++k) node_of[fig[k]] = bc ? k + 1 : k;
  auto sub = f.pick(P);
  for (auto e : extras_of(P)) {
    const Rational le = f.pair(e, e);
    RatVector target_vec(n, Rational(0));
    std::size_t node = 0;
    if (bc && le == 4 * len_last) {
      for (auto p : fig)
        for (std::size_t c = 0; c < n; ++c) target_vec[c] -= 2 * f.roots[p][c];
      node = 0;
    } else if (le == len_first) {
      target_vec = f.roots[fig.front()];
      node = bc ? 1 : 0;
    } else if (le == len_last) {
      target_vec = f.roots[fig.back()];
      node = bc ? rank : rank - 1;
    } else {
      no_match("extra root has a length not present in the simple system");
    }
    antidominant_in_frame(f, P, e);
    RatVector t = target_vec;
    auto word = antidominant_word(f.q, sub, t);
    if (!f.q.congruent(t, f.roots[e])) no_match("extra root is not in the orbit of its diagram node");
    for (auto it = word.rbegin(); it != word.rend(); ++it) f.move(P[*it], e);
    if (!f.q.congruent(f.roots[e], target_vec)) no_match("moving an extra root onto its node failed");
    node_of[e] = node;
  }

  // (f) Count copies, rebuild the basis by strict replay, compare with the
  // template.
  ModifiedDynkinType type{family, rank, 0, 0, 0};
  std::vector<std::size_t> count(bc ? rank + 1 : rank, 0);
  if (family == Family::A1) count.assign(2, 0);
  for (auto v : node_of) ++count[v];
  type.r = count[0];
  switch (family) {
    case Family::B:
    case Family::C:
    case Family::F4:
    case Family::G2:
      type.s = count[rank - 1];
      break;
    case Family::A1:
      type.s = count[1];
      break;
    case Family::BC:
      type.s = count[1];
      type.t = count[rank];
      break;
    default:
      break;
  }
  type.check();

  const PrimeBasis start = rep.reduced_basis;
  rep.reduced_basis = replay(start, f.moves);
  for (std::size_t i = 0; i < n; ++i)
    if (rep.reduced_basis[i] != pad(f.roots[i], space->dim())) no_match("certificate replay disagrees with the frame");
  rep.certificate = remove_cycles(start, f.moves);
  if (rep.affine) rep.affine->certificate = remove_cycles(start, rep.affine->certificate);
  rep.reduced_gim = gim_of(rep.reduced_basis);
  rep.node_of = node_of;
  rep.type = type;

  Template tmpl = make_template(type);
  std::vector<std::size_t> perm(n);
  std::vector<bool> used(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n && pick == n; ++i)
      if (!used[i] && node_of[i] == tmpl.node[a]) pick = i;
    if (pick == n) no_match("node multiplicities disagree with the template");
    used[pick] = true;
    perm[a] = pick;
  }
  if (!(permute(rep.reduced_gim.matrix(), perm) == tmpl.gim.matrix()))
    no_match("reduced matrix differs from the template " + type.label());
  return rep;
}

}  // namespace gimforge
