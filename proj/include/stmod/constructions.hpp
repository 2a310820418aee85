#pragma once

// The explicit ghosts used as lower-bound witnesses: central multiplications,
// right multiplications on modules induced from a cyclic normal subgroup,
// the abelian composite theta, and the induction detection composite.
//
// In the row-vector encoding the module structure of kG is index-right
// multiplication, so the bimodule partner maps ("right multiplication" in
// the usual left-module reading) act by index-left multiplication here.

#include "stmod/ghosts.hpp"

namespace stmod {

// a * b in the group algebra, both given as coefficient rows over the group
inline std::vector<u8> algebra_product(const FiniteGroup& g, u32 p,
                                       const std::vector<u8>& a, const std::vector<u8>& b) {
  std::vector<u8> out(g.order, 0);
  for (std::size_t h1 = 0; h1 < g.order; ++h1) {
    if (!a[h1]) continue;
    for (std::size_t h2 = 0; h2 < g.order; ++h2) {
      if (!b[h2]) continue;
      std::size_t h = g.op(h1, h2);
      out[h] = static_cast<u8>((out[h] + a[h1] * b[h2]) % p);
    }
  }
  return out;
}

struct CentralWitness {
  std::size_t element = 0;
  GModule module;
  GMap map;  // act(x) - id
  GhostCertificate cert;
};

// Left multiplication by x - 1 for central x is a ghost on every module.
inline CentralWitness central_mult_ghost(const GModule& m, std::size_t x) {
  if (!m.group()->is_central(x))
    throw std::invalid_argument("central_mult_ghost requires a central element");
  CentralWitness w;
  w.element = x;
  w.module = m;
  w.map = GMap(m, m, m.act(x) - FpMatrix::identity(m.p(), m.dim()), false);
  w.cert = GhostCertificate::by_theorem("central multiplication x-1");
  return w;
}

// M_n induced from a cyclic normal subgroup C of order p^r, realised as the
// sub-bimodule of kG generated by (c-1)^{p^r - n}; right multiplications on
// it are equivariant and are ghosts.
struct CyclicNormalWitness {
  SubgroupEmbedding embedding;
  std::size_t n = 0;
  GModule regular;   // kG
  GModule induced;   // the sub-bimodule, of dimension [G:C] * n
  FpMatrix rows;     // its basis rows inside kG
  GMap incl;         // induced -> kG
  GModule coker;     // M_{p^r - n} induced
  GMap quot;         // kG -> coker
  RrefResult rows_r;
};

inline CyclicNormalWitness right_mult_witness(const GroupPtr& g, u32 p,
                                              const SubgroupEmbedding& e, std::size_t n) {
  if (e.ambient != g) throw std::invalid_argument("embedding is not into this group");
  if (e.sub->norm_cyclic_order != e.sub->order || e.sub->order < 2)
    throw std::invalid_argument("subgroup must be cyclic");
  if (!is_normal(e)) throw std::invalid_argument("subgroup must be normal");
  const std::size_t pr = e.sub->order;
  if (n == 0 || n > pr) throw std::invalid_argument("bad induced dimension");
  CyclicNormalWitness w;
  w.embedding = e;
  w.n = n;
  w.regular = regular_module(g, p);
  // w = (c - 1)^{pr - n} in kG
  std::size_t c = e.map[e.sub->norm_cyclic];
  std::vector<u8> cm1(g->order, 0);
  cm1[c] = 1;
  cm1[g->identity] = static_cast<u8>((cm1[g->identity] + p - 1) % p);
  std::vector<u8> acc(g->order, 0);
  acc[g->identity] = 1;
  for (std::size_t i = 0; i < pr - n; ++i) acc = algebra_product(*g, p, acc, cm1);
  FpMatrix seed(p, 1, g->order);
  seed.set_row(0, acc);
  w.rows = module_closure(w.regular, seed);
  if (w.rows.rows() != e.index() * n)
    throw std::logic_error("induced sub-bimodule has unexpected dimension");
  auto sq = sub_module(w.regular, w.rows, false);
  w.induced = sq.module;
  w.incl = sq.map;
  auto qq = quotient_module(w.regular, w.rows, false);
  w.coker = qq.module;
  w.quot = qq.map;
  w.rows_r = rref_with_transform(w.rows);
  return w;
}

// R_{x-1} on the induced module (index-left multiplication in this encoding)
inline CertifiedGhost right_mult_ghost(const CyclicNormalWitness& w, std::size_t x) {
  const FiniteGroup& g = *w.regular.group();
  const u32 p = w.regular.p();
  // v -> (x-1) * v on kG: e_h -> e_{xh} - e_h
  FpMatrix lx(p, g.order, g.order);
  for (std::size_t h = 0; h < g.order; ++h) {
    lx.at(h, g.op(x, h)) = static_cast<u8>((lx.at(h, g.op(x, h)) + 1) % p);
    lx.at(h, h) = static_cast<u8>((lx.at(h, h) + p - 1) % p);
  }
  auto restr = solve(w.rows_r, w.rows, w.rows * lx);
  if (!restr)
    throw std::logic_error("sub-bimodule is not closed under right multiplication");
  CertifiedGhost out;
  out.map = GMap(w.induced, w.induced, std::move(*restr));
  out.cert = GhostCertificate::by_theorem("right multiplication on a module induced from a cyclic normal subgroup");
  return out;
}

// the composite R_{x_t - 1} o ... o R_{x_1 - 1} as a certified chain
inline std::vector<CertifiedGhost> right_mult_chain(const CyclicNormalWitness& w,
                                                    const std::vector<std::size_t>& xs) {
  std::vector<CertifiedGhost> out;
  for (std::size_t x : xs) out.push_back(right_mult_ghost(w, x));
  return out;
}

// ---------------------------------------------------------------------------
// the abelian composite theta

struct AbelianTheta {
  GModule module;                       // tensor of cyclic indecomposables
  GMap theta;                           // the composite of central multiplications
  GhostCertificate cert;                // Composite of ByTheorem factors
  std::vector<CertifiedGhost> factors;  // the chain, outermost first
  std::size_t fold = 0;                 // number of factors
};

inline AbelianTheta abelian_theta(const GroupPtr& g, u32 p,
                                  const std::vector<std::size_t>& dims) {
  if (!g->is_abelian()) throw std::invalid_argument("abelian_theta needs an abelian group");
  if (g->cyclic_factors.empty() || g->cyclic_factors.size() != dims.size())
    throw std::invalid_argument("one dimension per cyclic factor required");
  AbelianTheta out;
  out.module = cyclic_factor_module(g, p, 1, dims[0]);
  for (std::size_t i = 1; i < dims.size(); ++i)
    out.module = tensor(out.module, cyclic_factor_module(g, p, i + 1, dims[i]));
  FpMatrix comp = FpMatrix::identity(p, out.module.dim());
  std::vector<GhostCertificate> parts;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t t = 0; t + 1 < dims[i]; ++t) {
      auto cw = central_mult_ghost(out.module, g->cyclic_factors[i].first);
      comp = comp * cw.map.mat;
      parts.push_back(cw.cert);
      out.factors.push_back({cw.map, cw.cert});
      ++out.fold;
    }
  }
  out.theta = GMap(out.module, out.module, comp, false);
  out.cert = GhostCertificate::composite(parts);
  return out;
}

// ---------------------------------------------------------------------------
// the induction detection composite

struct InductionWitness {
  GMap composite;   // (x-1)^{l-1} after f induced up, a map over G
  GMap detection;   // r o (x-1)^{l-1} o (f induced, restricted) o i, over H
  int sign = 1;     // (-1)^{l-1}
};

inline InductionWitness induction_witness(const GMap& f, const SubgroupEmbedding& e,
                                          std::size_t x, std::size_t l) {
  const GroupPtr& g = e.ambient;
  const u32 p = f.dom.p();
  if (!g->is_central(x)) throw std::invalid_argument("x must be central");
  if (l == 0) throw std::invalid_argument("l must be positive");
  for (std::size_t i = 1; i < l; ++i)
    if (e.amb_to_sub[g->power(x, static_cast<long long>(i))] != SubgroupEmbedding::npos)
      throw std::invalid_argument("x^i lies in H for some 0 < i < l");
  if (e.amb_to_sub[g->power(x, static_cast<long long>(l))] == SubgroupEmbedding::npos)
    throw std::invalid_argument("x^l does not lie in H");
  InducedData up_m = induce(f.dom, e);
  InducedData up_n = induce(f.cod, e);
  // f induced: block diagonal over the transversal
  FpMatrix find = FpMatrix::kron(FpMatrix::identity(p, e.coset_reps.size()), f.mat);
  FpMatrix mult = FpMatrix::identity(p, up_n.induced.dim());
  FpMatrix xm1 = up_n.induced.act(x) - FpMatrix::identity(p, up_n.induced.dim());
  for (std::size_t i = 0; i + 1 < l; ++i) mult = mult * xm1;
  InductionWitness out;
  out.composite = GMap(up_m.induced, up_n.induced, find * mult);
  out.detection =
      GMap(f.dom, f.cod, up_m.unit.mat * find * mult * up_n.retraction.mat);
  out.sign = (l % 2 == 1) ? 1 : -1;
  return out;
}

}  // namespace stmod
