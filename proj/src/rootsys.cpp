#include "gimforge/rootsys.hpp"

#include <algorithm>
#include <deque>

#include "gimforge/error.hpp"

namespace gimforge {

const char* family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::G2: return "G2";
    case Family::A1: return "A1";
    case Family::BC: return "BC";
  }
  return "?";
}

RatVector QuotientForm::reflect(const RatVector& a, const RatVector& b) const {
  Rational aa = pair(a, a);
  if (aa == 0) throw Error(Errc::IsotropicReflector, "reflection in an isotropic vector");
  Rational c = 2 * pair(b, a) / aa;
  RatVector out = b;
  if (c != 0)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= c * a[k];
  return out;
}

std::string QuotientForm::key(const RatVector& x) const {
  std::string s;
  for (const auto& v : mat_vec(g_, x)) {
    s += v.get_str();
    s += ',';
  }
  return s;
}

bool QuotientForm::in_radical(const RatVector& x) const {
  for (const auto& v : mat_vec(g_, x))
    if (v != 0) return false;
  return true;
}

QuotientForm::RootSet QuotientForm::closure(const std::vector<RatVector>& gens, std::size_t cap) const {
  RootSet out;
  std::vector<RatVector> reflectors;
  std::deque<RatVector> queue;
  for (const auto& g : gens) {
    if (in_radical(g)) continue;
    reflectors.push_back(g);
    if (out.emplace(key(g), g).second) queue.push_back(g);
  }
  while (!queue.empty()) {
    RatVector x = std::move(queue.front());
    queue.pop_front();
    for (const auto& a : reflectors) {
      RatVector y = reflect(a, x);
      auto k = key(y);
      if (out.count(k)) continue;
      if (out.size() >= cap) throw Error(Errc::NonTerminating, "reflection orbit exceeds the size cap");
      out.emplace(std::move(k), y);
      queue.push_back(std::move(y));
    }
  }
  return out;
}

namespace {

struct Graph {
  std::size_t k;
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::vector<long>> bond;
  std::vector<Rational> len;
};

Graph make_graph(const RatMatrix& g) {
  Graph G{g.rows(), {}, {}, {}};
  G.adj.resize(G.k);
  G.bond.assign(G.k, std::vector<long>(G.k, 0));
  for (std::size_t i = 0; i < G.k; ++i) {
    G.len.push_back(g(i, i));
    if (g(i, i) <= 0) throw Error(Errc::NotFiniteType, "non-positive self-pairing");
  }
  for (std::size_t i = 0; i < G.k; ++i)
    for (std::size_t j = 0; j < G.k; ++j) {
      if (i == j || g(i, j) == 0) continue;
      if (g(i, j) > 0) throw Error(Errc::NotFiniteType, "positive off-diagonal pairing");
      Rational b = 4 * g(i, j) * g(i, j) / (g(i, i) * g(j, j));
      if (b.get_den() != 1 || b > 3) throw Error(Errc::NotFiniteType, "bond is not 1, 2 or 3");
      G.bond[i][j] = b.get_num().get_si();
      G.adj[i].push_back(j);
    }
  return G;
}

[[noreturn]] void not_finite() { throw Error(Errc::NotFiniteType, "not a connected finite-type diagram"); }

}  // namespace

DynkinId identify_dynkin(const RatMatrix& gram) {
  Graph G = make_graph(gram);
  const std::size_t k = G.k;
  if (k == 0) not_finite();
  if (k == 1) return {Family::A, 1, {0}};

  // Connectivity.
  {
    std::vector<bool> seen(k, false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    std::size_t cnt = 0;
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      ++cnt;
      for (auto j : G.adj[i])
        if (!seen[j]) {
          seen[j] = true;
          q.push_back(j);
        }
    }
    if (cnt != k) not_finite();
  }
  std::size_t edges = 0;
  for (std::size_t i = 0; i < k; ++i) edges += G.adj[i].size();
  if (edges / 2 != k - 1) not_finite();  // must be a tree

  std::vector<std::pair<std::size_t, std::size_t>> multi;
  bool triple = false;
  for (std::size_t i = 0; i < k; ++i)
    for (auto j : G.adj[i])
      if (i < j && G.bond[i][j] > 1) {
        multi.push_back({i, j});
        if (G.bond[i][j] == 3) triple = true;
      }
  if (multi.size() > 1) not_finite();

  if (triple) {
    if (k != 2) not_finite();
    auto [u, v] = multi[0];
    if (G.len[u] < G.len[v]) std::swap(u, v);
    return {Family::G2, 2, {u, v}};
  }

  std::vector<std::size_t> branch;
  for (std::size_t i = 0; i < k; ++i) {
    if (G.adj[i].size() > 3) not_finite();
    if (G.adj[i].size() == 3) branch.push_back(i);
  }
  if (branch.size() > 1) not_finite();

  if (branch.size() == 1) {
    if (!multi.empty()) not_finite();
    std::size_t b = branch[0];
    std::vector<std::vector<std::size_t>> legs;  // each from near-branch to end
    for (auto j : G.adj[b]) {
      std::vector<std::size_t> leg{j};
      std::size_t prev = b, cur = j;
      while (G.adj[cur].size() == 2) {
        std::size_t next = G.adj[cur][0] == prev ? G.adj[cur][1] : G.adj[cur][0];
        prev = cur;
        cur = next;
        leg.push_back(cur);
      }
      if (G.adj[cur].size() != 1) not_finite();
      legs.push_back(std::move(leg));
    }
    std::sort(legs.begin(), legs.end(), [](const auto& x, const auto& y) {
      if (x.size() != y.size()) return x.size() < y.size();
      return x.back() < y.back();
    });
    const std::size_t p = legs[0].size(), q = legs[1].size(), r = legs[2].size();
    std::vector<std::size_t> order;
    if (p == 1 && q == 1) {
      // D_k: node 1 at the end of the long leg. For D4 every leg has length
      // one and the smallest index goes first.
      const auto& longest = (r == 1) ? legs[0] : legs[2];
      order.assign(longest.rbegin(), longest.rend());
      order.push_back(b);
      for (const auto& leg : legs)
        if (&leg != &longest) order.push_back(leg[0]);
      return {Family::D, k, order};
    }
    if (p == 1 && q == 2 && r >= 2 && r <= 4) {
      Family f = r == 2 ? Family::E6 : r == 3 ? Family::E7 : Family::E8;
      const auto& two = legs[1];
      const auto& rest = legs[2];
      order = {two[1], legs[0][0], two[0], b};
      order.insert(order.end(), rest.begin(), rest.end());
      return {f, k, order};
    }
    not_finite();
  }

  // A path.
  std::vector<std::size_t> ends;
  for (std::size_t i = 0; i < k; ++i)
    if (G.adj[i].size() == 1) ends.push_back(i);
  if (ends.size() != 2) not_finite();
  auto path_from = [&](std::size_t e) {
    std::vector<std::size_t> path{e};
    std::size_t prev = k, cur = e;
    while (true) {
      std::size_t next = k;
      for (auto j : G.adj[cur])
        if (j != prev) next = j;
      if (next == k) break;
      prev = cur;
      cur = next;
      path.push_back(cur);
    }
    return path;
  };
  if (multi.empty()) return {Family::A, k, path_from(std::min(ends[0], ends[1]))};

  auto [u, v] = multi[0];
  if (k == 2) {
    if (G.len[u] < G.len[v]) std::swap(u, v);
    return {Family::B, 2, {u, v}};
  }
  if (G.adj[u].size() == 2 && G.adj[v].size() == 2) {
    if (k != 4) not_finite();
    for (auto e : ends) {
      auto path = path_from(e);
      if (G.len[path[0]] > G.len[path[3]]) return {Family::F4, 4, path};
    }
    not_finite();
  }
  std::size_t t = G.adj[u].size() == 1 ? u : v;   // the end on the double bond
  std::size_t other = t == u ? v : u;
  std::size_t far = ends[0] == t ? ends[1] : ends[0];
  if (G.len[t] < G.len[other]) return {Family::B, k, path_from(far)};
  return {Family::C, k, path_from(t)};
}

Rational dot(const RatVector& x, const RatVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s += x[i] * y[i];
  return s;
}

namespace {

RatVector unit(std::size_t m, std::initializer_list<std::pair<std::size_t, Rational>> entries) {
  RatVector v(m, Rational(0));
  for (const auto& [i, x] : entries) v[i] = x;
  return v;
}

std::vector<RatVector> b_roots(std::size_t l, std::size_t m) {
  std::vector<RatVector> out;
  for (std::size_t i = 0; i + 1 < l; ++i) out.push_back(unit(m, {{i, 1}, {i + 1, -1}}));
  out.push_back(unit(m, {{l - 1, 1}}));
  return out;
}

}  // namespace

std::vector<RatVector> figure_simple_roots(Family f, std::size_t l) {
  std::vector<RatVector> out;
  const Rational h(1, 2);
  switch (f) {
    case Family::A:
      for (std::size_t i = 0; i < l; ++i) out.push_back(unit(l + 1, {{i, 1}, {i + 1, -1}}));
      break;
    case Family::B:
      out = b_roots(l, l);
      break;
    case Family::C:
      out.push_back(unit(l, {{l - 1, 2}}));
      for (std::size_t k = 2; k <= l; ++k) out.push_back(unit(l, {{l - k, 1}, {l - k + 1, -1}}));
      break;
    case Family::D:
      for (std::size_t i = 0; i + 1 < l; ++i) out.push_back(unit(l, {{i, 1}, {i + 1, -1}}));
      out.push_back(unit(l, {{l - 2, 1}, {l - 1, 1}}));
      break;
    case Family::E6:
    case Family::E7:
    case Family::E8: {
      out.push_back(RatVector{h, -h, -h, -h, -h, -h, -h, h});
      out.push_back(unit(8, {{0, 1}, {1, 1}}));
      out.push_back(unit(8, {{0, -1}, {1, 1}}));
      for (std::size_t i = 1; i <= 5; ++i) out.push_back(unit(8, {{i, -1}, {i + 1, 1}}));
      out.resize(l);
      break;
    }
    case Family::F4:
      out.push_back(unit(4, {{1, 1}, {2, -1}}));
      out.push_back(unit(4, {{2, 1}, {3, -1}}));
      out.push_back(unit(4, {{3, 1}}));
      out.push_back(RatVector{h, -h, -h, -h});
      break;
    case Family::G2:
      out.push_back(unit(3, {{0, -2}, {1, 1}, {2, 1}}));
      out.push_back(unit(3, {{0, 1}, {1, -1}}));
      break;
    case Family::A1:
      out.push_back(unit(1, {{0, 2}}));
      out.push_back(unit(1, {{0, -1}}));
      break;
    case Family::BC:
      out.push_back(unit(l, {{0, -2}}));
      for (auto& r : b_roots(l, l)) out.push_back(std::move(r));
      break;
  }
  return out;
}

}  // namespace gimforge
