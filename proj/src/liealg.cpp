#include "gimforge/liealg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cctype>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include <fmt/format.h>
#include <json.hpp>

#include "gimforge/error.hpp"

namespace gimforge {

// ---------------------------------------------------------------- LieExpr

LieExpr LieExpr::gen(std::size_t i) {
  LieExpr e;
  e.gen_ = static_cast<int>(i);
  return e;
}

LieExpr LieExpr::bracket(const LieExpr& a, const LieExpr& b) {
  LieExpr e;
  e.l_ = std::make_shared<const LieExpr>(a);
  e.r_ = std::make_shared<const LieExpr>(b);
  return e;
}

LieExpr LieExpr::ad_power(const LieExpr& x, std::size_t k, const LieExpr& y) {
  LieExpr e = y;
  for (std::size_t t = 0; t < k; ++t) e = bracket(x, e);
  return e;
}

std::size_t LieExpr::height() const { return is_generator() ? 1 : l_->height() + r_->height(); }

Multidegree LieExpr::multidegree(std::size_t generators) const {
  Multidegree nu(generators, 0);
  std::function<void(const LieExpr&)> walk = [&](const LieExpr& e) {
    if (e.is_generator()) {
      if (e.generator() >= generators) throw Error(Errc::InvalidArgument, "generator index out of range");
      ++nu[e.generator()];
    } else {
      walk(e.left());
      walk(e.right());
    }
  };
  walk(*this);
  return nu;
}

std::string LieExpr::str(const std::vector<Generator>& gens) const {
  if (is_generator()) return generator() < gens.size() ? gens[generator()].name : fmt::format("x{}", generator() + 1);
  return "[" + l_->str(gens) + "," + r_->str(gens) + "]";
}

LieExpr LieExpr::parse(const std::string& text, const std::vector<Generator>& gens) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> LieExpr {
    throw Error(Errc::ParseError, fmt::format("bad bracket expression '{}' at offset {}: {}", text, pos, why));
  };
  std::function<LieExpr()> expr = [&]() -> LieExpr {
    skip();
    if (pos >= text.size()) return fail("unexpected end");
    if (text[pos] == '[') {
      ++pos;
      LieExpr a = expr();
      skip();
      if (pos >= text.size() || text[pos] != ',') return fail("expected ','");
      ++pos;
      LieExpr b = expr();
      skip();
      if (pos >= text.size() || text[pos] != ']') return fail("expected ']'");
      ++pos;
      return bracket(a, b);
    }
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (start == pos) return fail("expected a generator name");
    const std::string name = text.substr(start, pos - start);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == name) return gen(i);
    return fail("unknown generator '" + name + "'");
  };
  LieExpr e = expr();
  skip();
  if (pos != text.size()) fail("trailing characters");
  return e;
}

std::string degree_str(const Degree& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

// ---------------------------------------------------------------- words

namespace {

using Word = std::uint64_t;
constexpr unsigned kBits = 5;
constexpr std::size_t kMaxLetters = 32;
constexpr std::size_t kMaxHeight = 12;

struct Term {
  Word w;
  Integer c;
};
using Poly = std::vector<Term>;  // sorted by word, no zero coefficients

Word concat(Word u, Word v, std::size_t lv) { return (u << (kBits * lv)) | v; }

Poly normalize(std::vector<Term> t) {
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.w < b.w; });
  Poly out;
  out.reserve(t.size());
  for (auto& x : t) {
    if (!out.empty() && out.back().w == x.w) {
      out.back().c += x.c;
      if (out.back().c == 0) out.pop_back();
    } else if (x.c != 0) {
      out.push_back(std::move(x));
    }
  }
  return out;
}

Poly bracket(const Poly& a, std::size_t la, const Poly& b, std::size_t lb) {
  std::vector<Term> t;
  t.reserve(2 * a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      Integer c = x.c * y.c;
      t.push_back({concat(x.w, y.w, lb), c});
      t.push_back({concat(y.w, x.w, la), -c});
    }
  return normalize(std::move(t));
}

Poly letter(std::size_t g) { return {{static_cast<Word>(g), Integer(1)}}; }

// a*p + b*q
Poly lincomb(const Integer& a, const Poly& p, const Integer& b, const Poly& q) {
  Poly out;
  out.reserve(p.size() + q.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && p[i].w < q[j].w)) {
      out.push_back({p[i].w, a * p[i].c});
      ++i;
    } else if (i == p.size() || q[j].w < p[i].w) {
      out.push_back({q[j].w, b * q[j].c});
      ++j;
    } else {
      Integer c = a * p[i].c + b * q[j].c;
      if (c != 0) out.push_back({p[i].w, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

void make_primitive(Poly& p) {
  if (p.empty()) return;
  Integer g = 0;
  for (const auto& t : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  if (p.front().c < 0) g = -g;
  if (g != 1)
    for (auto& t : p) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), g.get_mpz_t());
}

// Rows with pairwise distinct leading (smallest) words.
struct Echelon {
  std::vector<Poly> rows;
  std::unordered_map<Word, std::size_t> pivot;

  Poly reduce(Poly v) const {
    make_primitive(v);
    while (!v.empty()) {
      auto it = pivot.find(v.front().w);
      if (it == pivot.end()) break;
      const Poly& r = rows[it->second];
      Integer g = gcd(r.front().c, v.front().c);
      Integer a = r.front().c / g;
      Integer b = v.front().c / g;
      v = lincomb(a, v, -b, r);
      make_primitive(v);
    }
    return v;
  }

  bool add(Poly v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    pivot.emplace(v.front().w, rows.size());
    rows.push_back(std::move(v));
    return true;
  }
};

Poly expand(const LieExpr& e) {
  if (e.is_generator()) return letter(e.generator());
  return bracket(expand(e.left()), e.left().height(), expand(e.right()), e.right().height());
}

bool leq(const Multidegree& a, const Multidegree& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Integer factorial(long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

int moebius(long n) {
  int m = 1;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  if (n > 1) m = -m;
  return m;
}

std::size_t thread_cap(std::size_t requested) {
  std::size_t t = std::max<std::size_t>(requested, 1);
  if (const char* env = std::getenv("GIMFORGE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) t = std::min<std::size_t>(t, static_cast<std::size_t>(v));
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------- free algebra

Integer witt_dimension(const Multidegree& nu) {
  long h = 0;
  long g = 0;
  for (int x : nu) {
    if (x < 0) throw Error(Errc::InvalidArgument, "negative multidegree");
    h += x;
    g = std::gcd(g, static_cast<long>(x));
  }
  if (h == 0) return 0;
  Integer sum = 0;
  for (long d = 1; d <= g; ++d) {
    if (g % d) continue;
    int mu = moebius(d);
    if (!mu) continue;
    Integer term = factorial(h / d);
    for (int x : nu) term /= factorial(x / d);
    sum += mu * term;
  }
  return sum / h;
}

std::map<Multidegree, std::vector<LyndonElement>> free_basis(std::size_t generators, std::size_t max_height) {
  if (max_height < 1) throw Error(Errc::InvalidArgument, "height cap must be at least 1");
  if (generators < 1) throw Error(Errc::InvalidArgument, "need at least one generator");
  std::map<Multidegree, std::vector<LyndonElement>> out;
  const int m = static_cast<int>(generators);
  std::function<std::string(const std::vector<int>&)> standard = [&](const std::vector<int>& w) -> std::string {
    if (w.size() == 1) return fmt::format("x{}", w[0] + 1);
    // Split off the longest proper suffix that is itself Lyndon.
    for (std::size_t s = 1; s < w.size(); ++s) {
      std::vector<int> v(w.begin() + static_cast<long>(s), w.end());
      bool lyndon = true;
      for (std::size_t r = 1; r < v.size() && lyndon; ++r)
        if (!std::lexicographical_compare(v.begin(), v.end(), v.begin() + static_cast<long>(r), v.end()))
          lyndon = false;
      if (lyndon) {
        std::vector<int> u(w.begin(), w.begin() + static_cast<long>(s));
        return "[" + standard(u) + "," + standard(v) + "]";
      }
    }
    return "?";
  };
  // Duval's generation of Lyndon words in lexicographic order.
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    Multidegree nu(generators, 0);
    for (int x : w) ++nu[static_cast<std::size_t>(x)];
    out[nu].push_back({w, standard(w)});
    const std::size_t len = w.size();
    while (w.size() < max_height) w.push_back(w[w.size() - len]);
    while (!w.empty() && w.back() == m - 1) w.pop_back();
  }
  return out;
}

// ---------------------------------------------------------------- parity

std::vector<int> parity(const Degree& x) {
  std::vector<int> p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = static_cast<int>(((x[i] % 2) + 2) % 2);
  return p;
}

CosetWitness coset_obstruction(const Gim& m, const Degree& target) {
  const std::size_t n = m.size();
  if (target.size() != n) throw Error(Errc::InvalidArgument, "target has the wrong number of coordinates");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && mpz_odd_p(m(i, j).get_mpz_t()))
        throw Error(Errc::InvariantNotApplicable,
                    fmt::format("entry ({},{}) = {} is odd; braid moves need not preserve cosets mod 2", i + 1,
                                j + 1, m(i, j).get_str()));
  CosetWitness w;
  w.target_parity = parity(target);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      std::vector<int> p(n, 0);
      p[i] ^= 1;
      p[j] ^= 1;
      if (p == w.target_parity) {
        w.pair = std::make_pair(i, j);
        return w;
      }
    }
  w.obstructed = true;
  return w;
}

// ---------------------------------------------------------------- truncation

struct Truncation::Impl {
  struct Component {
    Multidegree nu;
    Degree gamma;
    std::size_t height = 0;
    bool killed = false;
    Echelon ech;             // relation rows first, then quotient rows
    std::size_t rank_i = 0;  // number of relation rows

    std::size_t dim() const { return ech.rows.size() - rank_i; }
    const Poly& q(std::size_t k) const { return ech.rows[rank_i + k]; }
  };

  std::vector<Generator> gens;
  RelationSet rel;
  std::size_t max_height = 0;
  std::vector<std::map<Multidegree, Component>> levels;  // levels[h-1]
  std::vector<std::string> warnings;

  // Quotient-carrying components by Gamma-degree.
  std::map<Degree, std::vector<const Component*>> by_degree;
  // Constraints grouped by the Gamma-degree k*a + b they act on.
  std::map<Degree, std::vector<const RootConstraint*>> constraint_at;
  std::map<Multidegree, std::vector<Poly>> relation_polys;

  Degree degree_of(const Multidegree& nu) const {
    Degree d(gens.empty() ? 0 : gens[0].degree.size(), 0);
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (std::size_t c = 0; c < d.size(); ++c) d[c] += nu[g] * gens[g].degree[c];
    return d;
  }

  const Component* find(const Multidegree& nu) const {
    std::size_t h = 0;
    for (int x : nu) h += static_cast<std::size_t>(x);
    if (h == 0 || h > levels.size()) return nullptr;
    auto it = levels[h - 1].find(nu);
    return it == levels[h - 1].end() ? nullptr : &it->second;
  }

  bool is_killed(const Degree& mu) const {
    if (!rel.kill) return false;
    RatVector x(mu.begin(), mu.end());
    return bilinear(rel.kill->form, x, x) > rel.kill->threshold;
  }

  // Relation instances from the root constraints landing on nu.
  void constraint_instances(const Multidegree& nu, const Degree& mu, std::vector<Poly>& out) const {
    auto it = constraint_at.find(mu);
    if (it == constraint_at.end()) return;
    std::size_t h = 0;
    for (int x : nu) h += static_cast<std::size_t>(x);
    for (const RootConstraint* rc : it->second) {
      auto vit = by_degree.find(rc->b);
      auto ait = by_degree.find(rc->a);
      if (vit == by_degree.end() || ait == by_degree.end()) continue;
      for (const Component* vc : vit->second) {
        if (!leq(vc->nu, nu) || vc->height + rc->k > h) continue;
        Multidegree rho(nu.size());
        for (std::size_t g = 0; g < nu.size(); ++g) rho[g] = nu[g] - vc->nu[g];
        // Atoms: (component, quotient index) pairs that fit inside rho.
        std::vector<std::pair<const Component*, std::size_t>> atoms;
        for (const Component* ac : ait->second)
          if (leq(ac->nu, rho))
            for (std::size_t k = 0; k < ac->dim(); ++k) atoms.emplace_back(ac, k);
        if (atoms.empty()) continue;
        std::vector<std::size_t> pick;
        Multidegree used(nu.size(), 0);
        std::function<void(std::size_t)> choose = [&](std::size_t from) {
          if (pick.size() == rc->k) {
            if (used != rho) return;
            for (std::size_t vk = 0; vk < vc->dim(); ++vk) {
              Poly sum;
              std::vector<std::size_t> perm = pick;
              do {
                Poly x = vc->q(vk);
                std::size_t lx = vc->height;
                for (std::size_t t = perm.size(); t-- > 0;) {
                  const auto& [ac, ak] = atoms[perm[t]];
                  x = bracket(ac->q(ak), ac->height, x, lx);
                  lx += ac->height;
                }
                sum = lincomb(1, sum, 1, x);
              } while (std::next_permutation(perm.begin(), perm.end()));
              if (!sum.empty()) out.push_back(std::move(sum));
            }
            return;
          }
          for (std::size_t a = from; a < atoms.size(); ++a) {
            const Component* ac = atoms[a].first;
            bool fits = true;
            for (std::size_t g = 0; g < nu.size() && fits; ++g) fits = used[g] + ac->nu[g] <= rho[g];
            if (!fits) continue;
            for (std::size_t g = 0; g < nu.size(); ++g) used[g] += ac->nu[g];
            pick.push_back(a);
            choose(a);
            pick.pop_back();
            for (std::size_t g = 0; g < nu.size(); ++g) used[g] -= ac->nu[g];
          }
        };
        choose(0);
      }
    }
  }

  Component build_component(const Multidegree& nu, std::size_t h) const {
    Component c;
    c.nu = nu;
    c.gamma = degree_of(nu);
    c.height = h;
    c.killed = is_killed(c.gamma);
    const std::size_t m = gens.size();
    if (auto it = relation_polys.find(nu); it != relation_polys.end())
      for (const auto& p : it->second) c.ech.add(p);
    std::vector<Poly> extra;
    constraint_instances(nu, c.gamma, extra);
    for (auto& p : extra) c.ech.add(std::move(p));
    std::vector<Poly> candidates;
    if (h == 1) {
      for (std::size_t g = 0; g < m; ++g)
        if (nu[g] == 1) candidates.push_back(letter(g));
    } else {
      for (std::size_t g = 0; g < m; ++g) {
        if (nu[g] == 0) continue;
        Multidegree lower = nu;
        --lower[g];
        auto it = levels[h - 2].find(lower);
        if (it == levels[h - 2].end()) continue;
        const Component& lc = it->second;
        for (std::size_t r = 0; r < lc.rank_i; ++r) c.ech.add(bracket(letter(g), 1, lc.ech.rows[r], h - 1));
        for (std::size_t k = 0; k < lc.dim(); ++k) candidates.push_back(bracket(letter(g), 1, lc.q(k), h - 1));
      }
    }
    if (c.killed)
      for (auto& p : candidates) c.ech.add(std::move(p));
    c.rank_i = c.ech.rows.size();
    if (!c.killed)
      for (auto& p : candidates) c.ech.add(std::move(p));
    return c;
  }
};

Truncation Truncation::build(const GradedPresentation& p, std::size_t max_height, TruncationOptions opts) {
  if (max_height < 1) throw Error(Errc::InvalidArgument, "height cap must be at least 1");
  if (max_height > kMaxHeight)
    throw Error(Errc::InvalidArgument, fmt::format("height cap {} exceeds the supported {}", max_height, kMaxHeight));
  if (p.generators.empty()) throw Error(Errc::InvalidArgument, "presentation has no generators");
  if (p.generators.size() > kMaxLetters)
    throw Error(Errc::InvalidArgument, fmt::format("at most {} generators are supported", kMaxLetters));
  const std::size_t rank = p.generators[0].degree.size();
  for (const auto& g : p.generators)
    if (g.degree.size() != rank) throw Error(Errc::InvalidArgument, "generator degrees have different lengths");

  auto impl = std::make_shared<Impl>();
  impl->gens = p.generators;
  impl->rel = p.relations;
  impl->max_height = max_height;
  const std::size_t m = p.generators.size();

  for (const auto& w : impl->rel.words) {
    if (w.height() > max_height) continue;
    Multidegree nu = w.multidegree(m);
    Poly poly = expand(w);
    if (!poly.empty()) impl->relation_polys[nu].push_back(std::move(poly));
  }
  for (const auto& rc : impl->rel.constraints) {
    if (rc.a.size() != rank || rc.b.size() != rank)
      throw Error(Errc::InvalidArgument, "constraint degree has the wrong length");
    if (rc.k < 1) throw Error(Errc::InvalidArgument, "adjoint exponent must be positive");
    Degree target(rank);
    for (std::size_t c = 0; c < rank; ++c) target[c] = static_cast<long>(rc.k) * rc.a[c] + rc.b[c];
    impl->constraint_at[target].push_back(&rc);
  }
  if (impl->rel.kill && impl->rel.kill->form.rows() != rank)
    throw Error(Errc::InvalidArgument, "kill form has the wrong size");

  const std::size_t threads = thread_cap(opts.threads);
  for (std::size_t h = 1; h <= max_height; ++h) {
    std::vector<Multidegree> todo;
    if (h == 1) {
      for (std::size_t g = 0; g < m; ++g) {
        Multidegree nu(m, 0);
        nu[g] = 1;
        todo.push_back(nu);
      }
    } else {
      std::set<Multidegree> next;
      for (const auto& [nu, comp] : impl->levels[h - 2])
        for (std::size_t g = 0; g < m; ++g) {
          Multidegree up = nu;
          ++up[g];
          next.insert(up);
        }
      todo.assign(next.begin(), next.end());
    }
    std::vector<Impl::Component> built(todo.size());
    const Impl& view = *impl;
    auto work = [&](std::size_t idx) { built[idx] = view.build_component(todo[idx], h); };
    if (threads <= 1 || todo.size() < 2) {
      for (std::size_t i = 0; i < todo.size(); ++i) work(i);
    } else {
      std::atomic<std::size_t> next_idx{0};
      std::vector<std::thread> pool;
      std::exception_ptr failure;
      std::mutex fail_mu;
      for (std::size_t t = 0; t < std::min(threads, todo.size()); ++t)
        pool.emplace_back([&] {
          for (std::size_t i; (i = next_idx.fetch_add(1)) < todo.size();) {
            try {
              work(i);
            } catch (...) {
              std::lock_guard<std::mutex> lk(fail_mu);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      for (auto& th : pool) th.join();
      if (failure) std::rethrow_exception(failure);
    }
    impl->levels.emplace_back();
    auto& level = impl->levels.back();
    for (std::size_t i = 0; i < todo.size(); ++i)
      if (!built[i].ech.rows.empty()) level.emplace(todo[i], std::move(built[i]));
    for (const auto& [nu, comp] : level)
      if (comp.dim() > 0) impl->by_degree[comp.gamma].push_back(&comp);
    if (h == 1)
      for (std::size_t g = 0; g < m; ++g) {
        Multidegree nu(m, 0);
        nu[g] = 1;
        const auto* c = impl->find(nu);
        if (!c || c->dim() == 0)
          impl->warnings.push_back(
              fmt::format("InconsistentRelation: the relations force generator {} to zero", p.generators[g].name));
      }
  }
  Truncation t;
  t.impl_ = std::move(impl);
  return t;
}

std::size_t Truncation::max_height() const { return impl_->max_height; }
bool Truncation::complete() const { return impl_->rel.complete; }
const std::vector<std::string>& Truncation::warnings() const { return impl_->warnings; }
const std::vector<Generator>& Truncation::generators() const { return impl_->gens; }
Degree Truncation::degree_of(const Multidegree& nu) const { return impl_->degree_of(nu); }

std::map<Multidegree, std::size_t> Truncation::dims() const {
  std::map<Multidegree, std::size_t> out;
  for (const auto& level : impl_->levels)
    for (const auto& [nu, c] : level)
      if (c.dim()) out[nu] = c.dim();
  return out;
}

std::map<Degree, std::size_t> Truncation::root_dims() const {
  std::map<Degree, std::size_t> out;
  for (const auto& level : impl_->levels)
    for (const auto& [nu, c] : level)
      if (c.dim()) out[c.gamma] += c.dim();
  return out;
}

std::vector<std::size_t> Truncation::positive_dims_by_height() const {
  std::vector<bool> positive(impl_->gens.size());
  for (std::size_t g = 0; g < positive.size(); ++g) {
    const auto& d = impl_->gens[g].degree;
    positive[g] = std::all_of(d.begin(), d.end(), [](long x) { return x >= 0; }) &&
                  std::any_of(d.begin(), d.end(), [](long x) { return x > 0; });
  }
  std::vector<std::size_t> out(impl_->max_height, 0);
  for (std::size_t h = 0; h < impl_->levels.size(); ++h)
    for (const auto& [nu, c] : impl_->levels[h]) {
      bool ok = true;
      for (std::size_t g = 0; g < nu.size() && ok; ++g) ok = nu[g] == 0 || positive[g];
      if (ok) out[h] += c.dim();
    }
  return out;
}

std::size_t Truncation::dim(const Multidegree& nu) const {
  const auto* c = impl_->find(nu);
  return c ? c->dim() : 0;
}

std::size_t Truncation::relation_rank(const Multidegree& nu) const {
  const auto* c = impl_->find(nu);
  return c ? c->rank_i : 0;
}

Truncation::Eval Truncation::eval(const LieExpr& e) const {
  Eval out;
  out.multidegree = e.multidegree(impl_->gens.size());
  const std::size_t h = e.height();
  if (h > impl_->max_height)
    throw Error(Errc::HeightExceeded,
                fmt::format("expression of height {} exceeds the truncation height {}", h, impl_->max_height));
  const auto* c = impl_->find(out.multidegree);
  out.coords.assign(c ? c->dim() : 0, Rational(0));
  Poly p = expand(e);
  if (p.empty() || !c) return out;
  // Rational reduction tracking the quotient-row multiples.
  std::vector<std::pair<Word, Rational>> v;
  for (auto& t : p) v.emplace_back(t.w, Rational(t.c));
  while (!v.empty()) {
    auto it = c->ech.pivot.find(v.front().first);
    if (it == c->ech.pivot.end()) throw Error(Errc::InvalidArgument, "element outside the truncated component");
    const Poly& row = c->ech.rows[it->second];
    Rational f = v.front().second / Rational(row.front().c);
    if (it->second >= c->rank_i) out.coords[it->second - c->rank_i] += f;
    std::vector<std::pair<Word, Rational>> nv;
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < row.size()) {
      if (j == row.size() || (i < v.size() && v[i].first < row[j].w)) {
        nv.push_back(v[i++]);
      } else if (i == v.size() || row[j].w < v[i].first) {
        nv.emplace_back(row[j].w, -f * row[j].c);
        ++j;
      } else {
        Rational x = v[i].second - f * row[j].c;
        if (x != 0) nv.emplace_back(v[i].first, x);
        ++i;
        ++j;
      }
    }
    v = std::move(nv);
  }
  for (const auto& x : out.coords)
    if (x != 0) out.is_zero = false;
  return out;
}

// ---------------------------------------------------------------- JSON input

GradedPresentation presentation_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("presentation: ") + e.what());
  }
  GradedPresentation p;
  try {
    for (const auto& g : j.at("generators")) p.generators.push_back({g.at("name").get<std::string>(), g.at("degree").get<Degree>()});
    std::function<LieExpr(const json&)> expr = [&](const json& x) -> LieExpr {
      if (x.is_string()) return LieExpr::parse(x.get<std::string>(), p.generators);
      if (x.is_array() && x.size() == 2) return LieExpr::bracket(expr(x[0]), expr(x[1]));
      if (x.is_object() && x.contains("ad")) {
        const auto& a = x.at("ad");
        if (!a.is_array() || a.size() != 3) throw Error(Errc::ParseError, "\"ad\" needs [x, k, y]");
        long k = a[1].get<long>();
        if (k < 1) throw Error(Errc::ParseError, "adjoint exponent must be positive");
        return LieExpr::ad_power(expr(a[0]), static_cast<std::size_t>(k), expr(a[2]));
      }
      throw Error(Errc::ParseError, "unrecognised relation form: " + x.dump());
    };
    if (j.contains("relations"))
      for (const auto& r : j.at("relations")) p.relations.words.push_back(expr(r));
    if (j.contains("constraints"))
      for (const auto& c : j.at("constraints")) {
        long k = c.at("k").get<long>();
        if (k < 1) throw Error(Errc::ParseError, "adjoint exponent must be positive");
        p.relations.constraints.push_back({c.at("a").get<Degree>(), c.at("b").get<Degree>(), static_cast<std::size_t>(k)});
      }
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("presentation: ") + e.what());
  }
  if (p.generators.empty()) throw Error(Errc::ParseError, "presentation has no generators");
  const std::size_t rank = p.generators[0].degree.size();
  for (const auto& g : p.generators)
    if (g.degree.size() != rank) throw Error(Errc::ParseError, "generator degrees have different lengths");
  return p;
}

}  // namespace gimforge
