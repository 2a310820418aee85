#pragma once

// Finite p-groups as validated multiplication tables: cyclic groups and
// their products, dihedral 2-groups, the quaternion group, subgroups and
// quotients.  Orders stay small (<= 64), so every structural invariant is
// checked exhaustively at construction.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stmod/fp.hpp"

namespace stmod {

struct FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct FiniteGroup {
  std::size_t order = 1;
  std::size_t identity = 0;
  std::vector<std::size_t> mul;  // order x order, row-major
  std::vector<std::size_t> inv;
  std::vector<std::pair<std::string, std::size_t>> generators;
  std::vector<std::string> labels;

  // BFS spanning tree over the generators: elem = bfs_parent[elem] * gen,
  // parents listed before children in bfs_order.  Lets callers run
  // v -> v*A_elem sweeps with one vector-matrix product per element.
  std::vector<std::size_t> bfs_order;   // all elements except the identity
  std::vector<std::size_t> bfs_parent;  // per element
  std::vector<std::size_t> bfs_gen;     // generator index per element

  // Factorisation G = <norm_cyclic> * norm_transversal with unique
  // decomposition, used to assemble the norm element sum_g A_g cheaply.
  std::size_t norm_cyclic = 0;
  std::size_t norm_cyclic_order = 1;
  std::vector<std::size_t> norm_transversal;

  // (generator element, order) per factor when built as a product of
  // cyclic groups; empty otherwise.
  std::vector<std::pair<std::size_t, std::size_t>> cyclic_factors;

  std::size_t prime = 1;  // p with order = p^r (1 for the trivial group)

  std::size_t op(std::size_t a, std::size_t b) const { return mul[a * order + b]; }

  std::size_t power(std::size_t a, long long n) const {
    std::size_t r = identity;
    if (n < 0) { a = inv[a]; n = -n; }
    for (; n; --n) r = op(r, a);
    return r;
  }

  std::size_t element_order(std::size_t a) const {
    std::size_t r = a, n = 1;
    while (r != identity) { r = op(r, a); ++n; }
    return n;
  }

  bool commutes(std::size_t a, std::size_t b) const { return op(a, b) == op(b, a); }

  bool is_central(std::size_t a) const {
    for (std::size_t b = 0; b < order; ++b)
      if (!commutes(a, b)) return false;
    return true;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = a + 1; b < order; ++b)
        if (!commutes(a, b)) return false;
    return true;
  }

  std::size_t generator(const std::string& name) const {
    for (const auto& g : generators)
      if (g.first == name) return g.second;
    throw std::invalid_argument("no generator named " + name);
  }

  std::vector<std::size_t> closure(std::vector<std::size_t> gens) const {
    std::set<std::size_t> seen{identity};
    std::vector<std::size_t> queue{identity};
    for (std::size_t g : gens)
      if (seen.insert(g).second) queue.push_back(g);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t g : gens) {
        std::size_t e = op(queue[i], g);
        if (seen.insert(e).second) queue.push_back(e);
      }
    return std::vector<std::size_t>(seen.begin(), seen.end());
  }
};

inline std::vector<std::size_t> center(const FiniteGroup& g) {
  std::vector<std::size_t> z;
  for (std::size_t a = 0; a < g.order; ++a)
    if (g.is_central(a)) z.push_back(a);
  return z;
}

namespace detail {

inline std::size_t prime_of_order(std::size_t n) {
  if (n == 1) return 1;
  for (std::size_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    std::size_t m = n;
    while (m % p == 0) m /= p;
    if (m != 1) throw std::invalid_argument("group order is not a prime power");
    return p;
  }
  throw std::invalid_argument("bad order");
}

inline void finish_group(FiniteGroup& g) {
  const std::size_t n = g.order;
  if (g.mul.size() != n * n) throw std::logic_error("bad multiplication table");
  for (std::size_t a = 0; a < n; ++a) {
    if (g.op(g.identity, a) != a || g.op(a, g.identity) != a)
      throw std::logic_error("identity axiom fails");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
          throw std::logic_error("associativity fails");
  g.inv.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (g.op(a, b) == g.identity && g.op(b, a) == g.identity) { g.inv[a] = b; break; }
    if (g.inv[a] == n) throw std::logic_error("missing inverse");
  }
  g.prime = prime_of_order(n);

  std::vector<std::size_t> gens;
  for (auto& gg : g.generators) gens.push_back(gg.second);
  // generators must generate
  {
    std::set<std::size_t> seen{g.identity};
    std::vector<std::size_t> queue{g.identity};
    g.bfs_order.clear();
    g.bfs_parent.assign(n, n);
    g.bfs_gen.assign(n, n);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        std::size_t e = g.op(queue[i], gens[gi]);
        if (seen.insert(e).second) {
          queue.push_back(e);
          g.bfs_order.push_back(e);
          g.bfs_parent[e] = queue[i];
          g.bfs_gen[e] = gi;
        }
      }
    if (seen.size() != n) throw std::logic_error("generators do not generate");
  }

  // Norm factorisation: pick an element of maximal order, then a right
  // transversal of the cyclic subgroup it generates.
  std::size_t best = g.identity, best_ord = 1;
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t o = g.element_order(a);
    if (o > best_ord) { best = a; best_ord = o; }
  }
  g.norm_cyclic = best;
  g.norm_cyclic_order = best_ord;
  std::set<std::size_t> cyc;
  for (std::size_t r = g.identity;;) {
    cyc.insert(r);
    r = g.op(r, best);
    if (r == g.identity) break;
  }
  std::vector<bool> covered(n, false);
  g.norm_transversal.clear();
  for (std::size_t t = 0; t < n; ++t) {
    if (covered[t]) continue;
    g.norm_transversal.push_back(t);
    for (std::size_t c : cyc) covered[g.op(c, t)] = true;
  }
  if (g.norm_transversal.size() * best_ord != n)
    throw std::logic_error("bad norm transversal");

  if (g.labels.size() != n) {
    g.labels.assign(n, "");
    for (std::size_t a = 0; a < n; ++a) g.labels[a] = "e" + std::to_string(a);
  }
}

}  // namespace detail

inline GroupPtr make_cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic(0)");
  detail::prime_of_order(n);  // reject non-prime-power orders
  FiniteGroup g;
  g.order = n;
  g.identity = 0;
  g.mul.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
  if (n > 1) g.generators = {{"g", 1}};
  g.labels.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    g.labels[a] = a == 0 ? "1" : (a == 1 ? "g" : "g^" + std::to_string(a));
  if (n > 1) g.cyclic_factors = {{1, n}};
  detail::finish_group(g);
  return std::make_shared<FiniteGroup>(std::move(g));
}

inline GroupPtr make_product(const GroupPtr& g1, const GroupPtr& g2) {
  const std::size_t n1 = g1->order, n2 = g2->order, n = n1 * n2;
  FiniteGroup g;
  g.order = n;
  g.identity = g1->identity * n2 + g2->identity;
  g.mul.resize(n * n);
  for (std::size_t a1 = 0; a1 < n1; ++a1)
    for (std::size_t a2 = 0; a2 < n2; ++a2)
      for (std::size_t b1 = 0; b1 < n1; ++b1)
        for (std::size_t b2 = 0; b2 < n2; ++b2)
          g.mul[(a1 * n2 + a2) * n + (b1 * n2 + b2)] =
              g1->op(a1, b1) * n2 + g2->op(a2, b2);
  g.labels.resize(n);
  for (std::size_t a1 = 0; a1 < n1; ++a1)
    for (std::size_t a2 = 0; a2 < n2; ++a2)
      g.labels[a1 * n2 + a2] = "(" + g1->labels[a1] + "," + g2->labels[a2] + ")";
  // generator names: flat numbering across the factors
  for (const auto& gg : g1->generators)
    g.generators.push_back({gg.first, gg.second * n2 + g2->identity});
  for (const auto& gg : g2->generators)
    g.generators.push_back({gg.first, g1->identity * n2 + gg.second});
  // relabel cyclic generators g1, g2, ... when both sides are cyclic products
  bool cyc = !g1->cyclic_factors.empty() && !g2->cyclic_factors.empty();
  if (g1->order == 1 || g2->order == 1) cyc = false;
  if (cyc) {
    for (const auto& f : g1->cyclic_factors)
      g.cyclic_factors.push_back({f.first * n2 + g2->identity, f.second});
    for (const auto& f : g2->cyclic_factors)
      g.cyclic_factors.push_back({g1->identity * n2 + f.first, f.second});
    g.generators.clear();
    for (std::size_t i = 0; i < g.cyclic_factors.size(); ++i)
      g.generators.push_back(
          {"g" + std::to_string(i + 1), g.cyclic_factors[i].first});
  }
  detail::finish_group(g);
  return std::make_shared<FiniteGroup>(std::move(g));
}

// D_4q = <x, y | x^2 = y^2 = 1, (xy)^q = (yx)^q>, q a power of 2.
// Elements are (xy)^a x^b with a < 2q, b < 2, indexed 2a + b.
inline GroupPtr make_dihedral(std::size_t order4q) {
  if (order4q % 4) throw std::invalid_argument("dihedral order must be 4q");
  std::size_t q = order4q / 4;
  if (q == 0 || (q & (q - 1)) != 0)
    throw std::invalid_argument("dihedral(4q) requires q a power of 2");
  const std::size_t m = 2 * q, n = 4 * q;
  auto idx = [m](std::size_t a, std::size_t b) { return 2 * a + b; };
  FiniteGroup g;
  g.order = n;
  g.identity = idx(0, 0);
  g.mul.resize(n * n);
  for (std::size_t a1 = 0; a1 < m; ++a1)
    for (std::size_t b1 = 0; b1 < 2; ++b1)
      for (std::size_t a2 = 0; a2 < m; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
          // (xy)^a1 x^b1 (xy)^a2 x^b2; x (xy)^a = (xy)^{-a} x
          std::size_t a = b1 ? (a1 + m - a2 % m) % m : (a1 + a2) % m;
          std::size_t b = (b1 + b2) % 2;
          g.mul[idx(a1, b1) * n + idx(a2, b2)] = idx(a, b);
        }
  g.generators = {{"x", idx(0, 1)}, {"y", idx(m - 1, 1)}};  // y = x*(xy)
  g.labels.resize(n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      std::string s = a ? "(xy)^" + std::to_string(a) : "";
      if (b) s += "x";
      if (s.empty()) s = "1";
      g.labels[idx(a, b)] = s;
    }
  detail::finish_group(g);
  return std::make_shared<FiniteGroup>(std::move(g));
}

// Q_8 = <eps, i, j | eps^2 = 1, i^2 = j^2 = (ij)^2 = eps>.
// Elements (s, u): sign s < 2, unit u in {1, i, j, k}, indexed 2u + s.
inline GroupPtr make_quaternion8() {
  const std::size_t n = 8;
  auto idx = [](std::size_t u, std::size_t s) { return 2 * u + s; };
  // unit multiplication: (u1*u2 = unit, extra sign)
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  // check: i*i = -1, i*j = k, j*i = -k, j*j = -1, k*k = -1, i*k = -j, k*i = j, j*k = i, k*j = -i
  FiniteGroup g;
  g.order = n;
  g.identity = idx(0, 0);
  g.mul.resize(n * n);
  for (std::size_t u1 = 0; u1 < 4; ++u1)
    for (std::size_t s1 = 0; s1 < 2; ++s1)
      for (std::size_t u2 = 0; u2 < 4; ++u2)
        for (std::size_t s2 = 0; s2 < 2; ++s2) {
          std::size_t u = unit_mul[u1][u2];
          std::size_t s = (s1 + s2 + unit_sgn[u1][u2]) % 2;
          g.mul[idx(u1, s1) * n + idx(u2, s2)] = idx(u, s);
        }
  g.generators = {{"i", idx(1, 0)}, {"j", idx(2, 0)}};
  g.labels = {"1", "eps", "i", "eps*i", "j", "eps*j", "ij", "eps*ij"};
  detail::finish_group(g);
  return std::make_shared<FiniteGroup>(std::move(g));
}

struct SubgroupEmbedding {
  GroupPtr sub;
  GroupPtr ambient;
  std::vector<std::size_t> map;         // sub element -> ambient element
  std::vector<std::size_t> coset_reps;  // right transversal, identity's first
  std::vector<std::size_t> coset_of;    // ambient element -> transversal slot
  std::vector<std::size_t> amb_to_sub;  // ambient element -> sub index, or npos

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t index() const { return coset_reps.size(); }
};

inline SubgroupEmbedding subgroup(const GroupPtr& g,
                                  const std::vector<std::size_t>& gens) {
  std::vector<std::size_t> elems = g->closure(gens);  // sorted, identity = 0 first
  FiniteGroup s;
  s.order = elems.size();
  std::vector<std::size_t> pos(g->order, SubgroupEmbedding::npos);
  for (std::size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  s.identity = pos[g->identity];
  s.mul.resize(s.order * s.order);
  for (std::size_t a = 0; a < s.order; ++a)
    for (std::size_t b = 0; b < s.order; ++b)
      s.mul[a * s.order + b] = pos[g->op(elems[a], elems[b])];
  for (std::size_t gi : gens)
    if (gi != g->identity)
      s.generators.push_back({g->labels[gi], pos[gi]});
  if (s.generators.empty() && s.order > 1)
    s.generators.push_back({g->labels[elems[1]], 1});
  s.labels.resize(s.order);
  for (std::size_t i = 0; i < s.order; ++i) s.labels[i] = g->labels[elems[i]];
  detail::finish_group(s);

  SubgroupEmbedding e;
  e.sub = std::make_shared<FiniteGroup>(std::move(s));
  e.ambient = g;
  e.map = elems;
  e.amb_to_sub = pos;
  // right cosets H*t, smallest ambient index as representative
  std::vector<bool> covered(g->order, false);
  e.coset_of.assign(g->order, 0);
  for (std::size_t t = 0; t < g->order; ++t) {
    if (covered[t]) continue;
    std::size_t slot = e.coset_reps.size();
    e.coset_reps.push_back(t);
    for (std::size_t h : elems) {
      std::size_t ht = g->op(h, t);
      covered[ht] = true;
      e.coset_of[ht] = slot;
    }
  }
  return e;
}

inline bool is_normal(const SubgroupEmbedding& e) {
  const FiniteGroup& g = *e.ambient;
  for (std::size_t h : e.map)
    for (std::size_t a = 0; a < g.order; ++a)
      if (e.amb_to_sub[g.op(g.op(a, h), g.inv[a])] == SubgroupEmbedding::npos)
        return false;
  return true;
}

struct GroupHom {
  GroupPtr dom, cod;
  std::vector<std::size_t> map;
};

// Quotient by a validated normal subgroup; also returns the projection.
inline std::pair<GroupPtr, GroupHom> quotient(const GroupPtr& g,
                                              const SubgroupEmbedding& e) {
  if (e.ambient != g) throw std::invalid_argument("embedding is not into this group");
  if (!is_normal(e)) throw std::invalid_argument("subgroup is not normal");
  const std::size_t q = e.index();
  // coset slot containing the identity must become the identity
  FiniteGroup h;
  h.order = q;
  h.identity = e.coset_of[g->identity];
  h.mul.resize(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      h.mul[a * q + b] = e.coset_of[g->op(e.coset_reps[a], e.coset_reps[b])];
  for (const auto& gg : g->generators) {
    std::size_t im = e.coset_of[gg.second];
    if (im != h.identity) h.generators.push_back({gg.first, im});
  }
  if (h.generators.empty() && q > 1) {
    for (std::size_t a = 0; a < q; ++a)
      if (a != h.identity) { h.generators.push_back({"[" + g->labels[e.coset_reps[a]] + "]", a}); break; }
  }
  h.labels.resize(q);
  for (std::size_t a = 0; a < q; ++a) h.labels[a] = "[" + g->labels[e.coset_reps[a]] + "]";
  detail::finish_group(h);
  GroupHom proj;
  proj.dom = g;
  proj.cod = std::make_shared<FiniteGroup>(std::move(h));
  proj.map = e.coset_of;
  return {proj.cod, proj};
}

}  // namespace stmod
