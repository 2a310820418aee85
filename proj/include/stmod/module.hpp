#pragma once

// kG-modules as exact matrix representations.  A module of dimension d over
// F_p stores one invertible d x d matrix per group generator; the action of
// an arbitrary element is built lazily along the group's BFS tree.  Module
// elements are row vectors and act(g) multiplies on the right, with
// act(gh) = act(g) * act(h).

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stmod/fp.hpp"
#include "stmod/group.hpp"

namespace stmod {

struct ModuleData {
  GroupPtr group;
  u32 p = 2;
  std::size_t dim = 0;
  std::vector<FpMatrix> gen_action;
  mutable std::vector<std::unique_ptr<FpMatrix>> elem_cache;

  const FpMatrix& act(std::size_t e) const {
    if (elem_cache.empty()) elem_cache.resize(group->order);
    auto& slot = elem_cache[e];
    if (slot) return *slot;
    if (e == group->identity) {
      slot = std::make_unique<FpMatrix>(FpMatrix::identity(p, dim));
      return *slot;
    }
    for (std::size_t gi = 0; gi < group->generators.size(); ++gi)
      if (group->generators[gi].second == e) {
        slot = std::make_unique<FpMatrix>(gen_action[gi]);
        return *slot;
      }
    const FpMatrix& par = act(group->bfs_parent[e]);
    slot = std::make_unique<FpMatrix>(par * gen_action[group->bfs_gen[e]]);
    return *slot;
  }
};

class GModule {
 public:
  GModule() = default;
  GModule(GroupPtr group, u32 p, std::size_t dim, std::vector<FpMatrix> gen_action,
          bool validate = true) {
    auto d = std::make_shared<ModuleData>();
    d->group = std::move(group);
    d->p = p;
    d->dim = dim;
    d->gen_action = std::move(gen_action);
    if (d->group->prime != 1 && d->group->prime != p)
      throw std::invalid_argument("field characteristic does not match the group's prime");
    if (d->gen_action.size() != d->group->generators.size())
      throw std::invalid_argument("one action matrix per generator required");
    for (const auto& m : d->gen_action)
      if (m.rows() != dim || m.cols() != dim || m.p() != p)
        throw std::invalid_argument("bad action matrix shape");
    d_ = std::move(d);
    if (validate) validate_representation();
  }

  bool valid() const { return d_ != nullptr; }
  const GroupPtr& group() const { return d_->group; }
  u32 p() const { return d_->p; }
  std::size_t dim() const { return d_->dim; }
  const FpMatrix& act(std::size_t elem) const { return d_->act(elem); }
  const FpMatrix& gen_act(std::size_t gi) const { return d_->gen_action[gi]; }
  std::size_t n_gens() const { return d_->gen_action.size(); }
  const ModuleData* id() const { return d_.get(); }
  bool same_as(const GModule& o) const { return d_ == o.d_; }

  // row h of the result is x * act(h); one vector-matrix product per element.
  FpMatrix orbit_rows(const std::vector<u8>& x) const {
    const FiniteGroup& g = *group();
    FpMatrix out(p(), g.order, dim());
    out.set_row(g.identity, x);
    for (std::size_t e : g.bfs_order) {
      std::vector<u8> w = gen_act(g.bfs_gen[e]).apply(out.row_vec(g.bfs_parent[e]));
      out.set_row(e, w);
    }
    return out;
  }

  // sum of act(g) over the whole group, via the norm factorisation
  FpMatrix norm_matrix() const {
    const FiniteGroup& g = *group();
    FpMatrix s = FpMatrix::identity(p(), dim());
    if (g.norm_cyclic_order > 1) {
      const FpMatrix& a = act(g.norm_cyclic);
      // geometric sum over <c>: repeatedly S <- (I + A^m + ... + A^{(p-1)m}) * S
      std::size_t m = 1;
      FpMatrix apow = a;
      while (m < g.norm_cyclic_order) {
        FpMatrix t = FpMatrix::identity(p(), dim());
        FpMatrix cur = apow;
        for (std::size_t j = 1; j < g.prime; ++j) {
          t = t + cur;
          if (j + 1 < g.prime) cur = cur * apow;
        }
        s = s * t;
        apow = cur * apow;
        m *= g.prime;
      }
    }
    if (g.norm_transversal.size() > 1) {
      FpMatrix t(p(), dim(), dim());
      for (std::size_t e : g.norm_transversal) t = t + act(e);
      s = s * t;
    }
    return s;
  }

  void validate_representation() const {
    const FiniteGroup& g = *group();
    if (g.order * dim() * dim() > (std::size_t(1) << 26)) return;  // too big to check
    for (std::size_t h = 0; h < g.order; ++h)
      for (std::size_t gi = 0; gi < g.generators.size(); ++gi)
        if (!(act(g.op(h, g.generators[gi].second)) == act(h) * gen_act(gi)))
          throw std::invalid_argument("matrices do not define a representation");
    for (std::size_t gi = 0; gi < g.generators.size(); ++gi)
      if (!inverse(gen_act(gi)))
        throw std::invalid_argument("generator action is singular");
  }

 private:
  std::shared_ptr<const ModuleData> d_;
};

// Equivariant map dom -> cod, v -> v * mat.
struct GMap {
  GModule dom, cod;
  FpMatrix mat;

  GMap() = default;
  GMap(GModule d, GModule c, FpMatrix m, bool validate = true)
      : dom(std::move(d)), cod(std::move(c)), mat(std::move(m)) {
    if (mat.rows() != dom.dim() || mat.cols() != cod.dim())
      throw std::invalid_argument("map shape mismatch");
    if (validate && !equivariant())
      throw std::invalid_argument("map is not equivariant");
  }

  bool equivariant() const {
    for (std::size_t gi = 0; gi < dom.n_gens(); ++gi)
      if (!(dom.gen_act(gi) * mat == mat * cod.gen_act(gi))) return false;
    return true;
  }

  bool is_zero() const { return mat.is_zero(); }
};

inline GMap compose(const GMap& f, const GMap& g) {
  if (f.cod.id() != g.dom.id() && f.cod.dim() != g.dom.dim())
    throw std::invalid_argument("composition mismatch");
  return GMap(f.dom, g.cod, f.mat * g.mat, false);
}

inline GMap identity_map(const GModule& m) {
  return GMap(m, m, FpMatrix::identity(m.p(), m.dim()), false);
}

// ---------------------------------------------------------------------------
// basic constructors

inline GModule trivial_module(const GroupPtr& g, u32 p) {
  std::vector<FpMatrix> acts(g->generators.size(), FpMatrix::identity(p, 1));
  return GModule(g, p, 1, std::move(acts), false);
}

inline GModule zero_module(const GroupPtr& g, u32 p) {
  std::vector<FpMatrix> acts(g->generators.size(), FpMatrix(p, 0, 0));
  return GModule(g, p, 0, std::move(acts), false);
}

// kG acting on itself: basis e_h, e_h * act(g) = e_{hg}.
inline GModule regular_module(const GroupPtr& g, u32 p) {
  std::vector<FpMatrix> acts;
  for (const auto& gg : g->generators) {
    FpMatrix a(p, g->order, g->order);
    for (std::size_t h = 0; h < g->order; ++h) a.at(h, g->op(h, gg.second)) = 1;
    acts.push_back(std::move(a));
  }
  return GModule(g, p, g->order, std::move(acts), false);
}

inline GModule free_module(const GroupPtr& g, u32 p, std::size_t rank) {
  std::vector<FpMatrix> acts;
  for (const auto& gg : g->generators) {
    FpMatrix a(p, rank * g->order, rank * g->order);
    for (std::size_t t = 0; t < rank; ++t)
      for (std::size_t h = 0; h < g->order; ++h)
        a.at(t * g->order + h, t * g->order + g->op(h, gg.second)) = 1;
    acts.push_back(std::move(a));
  }
  return GModule(g, p, rank * g->order, std::move(acts), false);
}

struct SumData {
  GModule sum;
  std::vector<GMap> injections;
  std::vector<GMap> projections;
};

inline SumData direct_sum(const std::vector<GModule>& parts, const GroupPtr& g, u32 p) {
  std::size_t dim = 0;
  for (const auto& m : parts) {
    if (m.group() != g || m.p() != p)
      throw std::invalid_argument("direct sum of modules over different group algebras");
    dim += m.dim();
  }
  std::vector<FpMatrix> acts;
  for (std::size_t gi = 0; gi < g->generators.size(); ++gi) {
    FpMatrix a(p, dim, dim);
    std::size_t off = 0;
    for (const auto& m : parts) {
      const FpMatrix& b = m.gen_act(gi);
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) a.at(off + i, off + j) = b.at(i, j);
      off += m.dim();
    }
    acts.push_back(std::move(a));
  }
  SumData out;
  out.sum = GModule(g, p, dim, std::move(acts), false);
  std::size_t off = 0;
  for (const auto& m : parts) {
    FpMatrix in(p, m.dim(), dim), pr(p, dim, m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
      in.at(i, off + i) = 1;
      pr.at(off + i, i) = 1;
    }
    out.injections.emplace_back(m, out.sum, std::move(in), false);
    out.projections.emplace_back(out.sum, m, std::move(pr), false);
    off += m.dim();
  }
  return out;
}

inline SumData direct_sum(const std::vector<GModule>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty sum needs a group; use zero_module");
  return direct_sum(parts, parts.front().group(), parts.front().p());
}

inline GModule tensor(const GModule& m1, const GModule& m2) {
  if (m1.group() != m2.group() || m1.p() != m2.p())
    throw std::invalid_argument("tensor of modules over different group algebras");
  std::vector<FpMatrix> acts;
  for (std::size_t gi = 0; gi < m1.n_gens(); ++gi)
    acts.push_back(FpMatrix::kron(m1.gen_act(gi), m2.gen_act(gi)));
  return GModule(m1.group(), m1.p(), m1.dim() * m2.dim(), std::move(acts), false);
}

// M_n = kC/(g-1)^n over a cyclic group C, on the basis 1, g-1, ..., (g-1)^{n-1}
inline GModule cyclic_quotient_module(const GroupPtr& g, u32 p, std::size_t n) {
  if (g->generators.size() != 1 ||
      g->element_order(g->generators[0].second) != g->order)
    throw std::invalid_argument("cyclic_quotient expects a cyclic group");
  if (n == 0 || n > g->order) throw std::invalid_argument("bad cyclic quotient dimension");
  FpMatrix a(p, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a.at(i, i) = 1;
    if (i + 1 < n) a.at(i, i + 1) = 1;
  }
  return GModule(g, p, n, {a}, false);
}

// M_n on the i-th cyclic factor of a product of cyclic groups (1-based),
// inflated to the whole group: the other factors act trivially.
inline GModule cyclic_factor_module(const GroupPtr& g, u32 p, std::size_t factor,
                                    std::size_t n) {
  if (g->cyclic_factors.empty())
    throw std::invalid_argument("cyclic_factor_module expects a product of cyclic groups");
  if (factor == 0 || factor > g->cyclic_factors.size())
    throw std::invalid_argument("no such cyclic factor");
  if (n == 0 || n > g->cyclic_factors[factor - 1].second)
    throw std::invalid_argument("bad cyclic factor dimension");
  std::vector<FpMatrix> acts;
  for (std::size_t gi = 0; gi < g->generators.size(); ++gi) {
    FpMatrix a = FpMatrix::identity(p, n);
    if (gi == factor - 1)
      for (std::size_t i = 0; i + 1 < n; ++i) a.at(i, i + 1) = 1;
    acts.push_back(std::move(a));
  }
  return GModule(g, p, n, std::move(acts), true);
}

inline GModule dual(const GModule& m) {
  const FiniteGroup& g = *m.group();
  std::vector<FpMatrix> acts;
  for (const auto& gg : g.generators)
    acts.push_back(m.act(g.inv[gg.second]).transpose());
  return GModule(m.group(), m.p(), m.dim(), std::move(acts), false);
}

inline GMap dual_map(const GMap& f) {
  return GMap(dual(f.cod), dual(f.dom), f.mat.transpose(), false);
}

inline GModule restrict_to(const GModule& m, const SubgroupEmbedding& e) {
  if (e.ambient != m.group()) throw std::invalid_argument("restriction along wrong embedding");
  std::vector<FpMatrix> acts;
  for (const auto& gg : e.sub->generators) acts.push_back(m.act(e.map[gg.second]));
  return GModule(e.sub, m.p(), m.dim(), std::move(acts), false);
}

// restriction along a surjective homomorphism (inflation)
inline GModule inflate(const GModule& m, const GroupHom& hom) {
  if (hom.cod != m.group()) throw std::invalid_argument("inflation along wrong hom");
  std::vector<FpMatrix> acts;
  for (const auto& gg : hom.dom->generators) acts.push_back(m.act(hom.map[gg.second]));
  return GModule(hom.dom, m.p(), m.dim(), std::move(acts), false);
}

struct InducedData {
  GModule induced;                    // basis (coset slot, module basis vector)
  GMap unit;                          // m -> induced restricted to the subgroup
  GMap retraction;                    // induced restricted -> m, r o i = id
  GModule induced_restricted;         // induced viewed over the subgroup
};

// M^G = M tensor_{kH} kG along a right transversal.
inline InducedData induce(const GModule& m, const SubgroupEmbedding& e) {
  if (e.sub != m.group()) throw std::invalid_argument("induction from wrong subgroup");
  const FiniteGroup& g = *e.ambient;
  const std::size_t reps = e.coset_reps.size(), dm = m.dim(), dim = reps * dm;
  // t_r * g = h * t_{r'}
  std::vector<FpMatrix> acts;
  for (const auto& gg : g.generators) {
    FpMatrix a(m.p(), dim, dim);
    for (std::size_t r = 0; r < reps; ++r) {
      std::size_t tg = g.op(e.coset_reps[r], gg.second);
      std::size_t r2 = e.coset_of[tg];
      std::size_t h = g.op(tg, g.inv[e.coset_reps[r2]]);
      std::size_t hs = e.amb_to_sub[h];
      if (hs == SubgroupEmbedding::npos) throw std::logic_error("transversal arithmetic failed");
      const FpMatrix& b = m.act(hs);
      for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t j = 0; j < dm; ++j) a.at(r * dm + i, r2 * dm + j) = b.at(i, j);
    }
    acts.push_back(std::move(a));
  }
  InducedData out;
  out.induced = GModule(e.ambient, m.p(), dim, std::move(acts), false);
  out.induced_restricted = restrict_to(out.induced, e);
  // identity coset slot
  std::size_t slot0 = e.coset_of[g.identity];
  FpMatrix in(m.p(), dm, dim), ret(m.p(), dim, dm);
  for (std::size_t i = 0; i < dm; ++i) {
    in.at(i, slot0 * dm + i) = 1;
    ret.at(slot0 * dm + i, i) = 1;
  }
  out.unit = GMap(m, out.induced_restricted, std::move(in));
  out.retraction = GMap(out.induced_restricted, m, std::move(ret));
  return out;
}

// ---------------------------------------------------------------------------
// submodules, quotients, radical and socle machinery

// closure of a row space under the group action
inline FpMatrix module_closure(const GModule& m, const FpMatrix& seed) {
  RowSpace rs(m.p(), m.dim());
  rs.insert_rows(seed);
  bool grew = true;
  while (grew) {
    grew = false;
    FpMatrix b = rs.basis();
    for (std::size_t gi = 0; gi < m.n_gens(); ++gi)
      grew |= rs.insert_rows(b * m.gen_act(gi));
  }
  return rs.basis();
}

inline bool is_invariant(const GModule& m, const FpMatrix& basis) {
  RowSpace rs(m.p(), m.dim());
  rs.insert_rows(basis);
  for (std::size_t gi = 0; gi < m.n_gens(); ++gi)
    if (!rs.contains_rows(basis * m.gen_act(gi))) return false;
  return true;
}

// rad(S) = S * J(kG) for an invariant row space S (defaults to all of M)
inline FpMatrix radical_of(const GModule& m, const FpMatrix& basis) {
  RowSpace rs(m.p(), m.dim());
  FpMatrix id = FpMatrix::identity(m.p(), m.dim());
  for (std::size_t gi = 0; gi < m.n_gens(); ++gi)
    rs.insert_rows(basis * (m.gen_act(gi) - id));
  bool grew = true;
  while (grew) {
    grew = false;
    FpMatrix b = rs.basis();
    for (std::size_t gi = 0; gi < m.n_gens(); ++gi)
      grew |= rs.insert_rows(b * m.gen_act(gi));
  }
  return rs.basis();
}

inline FpMatrix radical(const GModule& m) {
  return radical_of(m, FpMatrix::identity(m.p(), m.dim()));
}

// soc(M) = { v : v*(g-1) = 0 for all generators g }
inline FpMatrix socle(const GModule& m) {
  if (m.n_gens() == 0 || m.dim() == 0) return FpMatrix::identity(m.p(), m.dim());
  FpMatrix id = FpMatrix::identity(m.p(), m.dim());
  FpMatrix stacked(m.p(), m.dim(), 0);
  for (std::size_t gi = 0; gi < m.n_gens(); ++gi)
    stacked = FpMatrix::hstack(stacked, m.gen_act(gi) - id);
  return kernel_basis(stacked);
}

struct SubQuotient {
  GModule module;
  GMap map;  // inclusion (sub) or projection (quotient)
};

inline SubQuotient sub_module(const GModule& m, const FpMatrix& rows, bool validate = true) {
  FpMatrix b = rref(rows);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    bool nz = false;
    for (std::size_t j = 0; j < b.cols(); ++j) nz |= b.at(i, j) != 0;
    if (nz) keep.push_back(i);
  }
  b = b.sub_rows(keep);
  if (validate && !is_invariant(m, b))
    throw std::invalid_argument("row span is not action-invariant");
  RrefResult rb = rref_with_transform(b);
  std::vector<FpMatrix> acts;
  for (std::size_t gi = 0; gi < m.n_gens(); ++gi) {
    auto x = solve(rb, b, b * m.gen_act(gi));
    if (!x) throw std::invalid_argument("row span is not action-invariant");
    acts.push_back(std::move(*x));
  }
  SubQuotient out;
  out.module = GModule(m.group(), m.p(), b.rows(), std::move(acts), false);
  out.map = GMap(out.module, m, b, false);
  return out;
}

inline SubQuotient quotient_module(const GModule& m, const FpMatrix& rows,
                                   bool validate = true) {
  std::vector<std::size_t> pivots;
  FpMatrix b = rref(rows, &pivots);
  std::vector<std::size_t> firstn(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) firstn[i] = i;
  b = b.sub_rows(firstn);
  if (validate && !is_invariant(m, b))
    throw std::invalid_argument("row span is not action-invariant");
  std::vector<bool> is_piv(m.dim(), false);
  for (std::size_t c : pivots) is_piv[c] = true;
  std::vector<std::size_t> coords;
  for (std::size_t c = 0; c < m.dim(); ++c)
    if (!is_piv[c]) coords.push_back(c);
  const std::size_t dq = coords.size();
  // projection: reduce v against the echelon basis, read off non-pivot coords
  auto project = [&](std::vector<u8> v) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      u32 f = v[pivots[i]];
      if (!f) continue;
      u32 nf = m.p() - f;
      const u8* br = b.row(i);
      for (std::size_t j = 0; j < m.dim(); ++j)
        v[j] = static_cast<u8>((v[j] + nf * br[j]) % m.p());
    }
    std::vector<u8> out(dq);
    for (std::size_t j = 0; j < dq; ++j) out[j] = v[coords[j]];
    return out;
  };
  FpMatrix proj(m.p(), m.dim(), dq);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::vector<u8> e(m.dim(), 0);
    e[i] = 1;
    proj.set_row(i, project(std::move(e)));
  }
  std::vector<FpMatrix> acts;
  for (std::size_t gi = 0; gi < m.n_gens(); ++gi) {
    FpMatrix a(m.p(), dq, dq);
    for (std::size_t i = 0; i < dq; ++i)
      a.set_row(i, proj.apply(m.gen_act(gi).row_vec(coords[i])));
    acts.push_back(std::move(a));
  }
  SubQuotient out;
  out.module = GModule(m.group(), m.p(), dq, std::move(acts), false);
  out.map = GMap(m, out.module, proj, false);
  return out;
}

// ---------------------------------------------------------------------------
// radical and socle series

struct SeriesReport {
  std::vector<FpMatrix> radical_series;  // rad^0 = M, rad^1, ..., down to 0
  std::vector<FpMatrix> socle_series;    // soc^0 = 0, soc^1, ..., up to M
  std::size_t radical_length = 0;
  std::size_t socle_length = 0;
};

inline SeriesReport series(const GModule& m) {
  SeriesReport r;
  FpMatrix cur = FpMatrix::identity(m.p(), m.dim());
  r.radical_series.push_back(cur);
  while (cur.rows() > 0) {
    cur = radical_of(m, cur);
    r.radical_series.push_back(cur);
  }
  r.radical_length = r.radical_series.size() - 1;

  r.socle_series.push_back(FpMatrix(m.p(), 0, m.dim()));
  FpMatrix id = FpMatrix::identity(m.p(), m.dim());
  while (r.socle_series.back().rows() < m.dim()) {
    const FpMatrix& prev = r.socle_series.back();
    // soc^{j+1} = preimage of soc(M / soc^j)
    FpMatrix stacked(m.p(), m.dim(), 0);
    if (m.n_gens() == 0) {
      r.socle_series.push_back(id);
      break;
    }
    SubQuotient q = quotient_module(m, prev, false);
    for (std::size_t gi = 0; gi < m.n_gens(); ++gi)
      stacked = FpMatrix::hstack(stacked, (m.gen_act(gi) - id) * q.map.mat);
    r.socle_series.push_back(rref(kernel_basis(stacked)));
  }
  r.socle_length = r.socle_series.size() - 1;
  if (r.radical_length != r.socle_length)
    throw std::logic_error("radical and socle lengths disagree");
  return r;
}

inline std::size_t radical_length(const GModule& m) {
  std::size_t n = 0;
  FpMatrix cur = FpMatrix::identity(m.p(), m.dim());
  while (cur.rows() > 0) {
    cur = radical_of(m, cur);
    ++n;
  }
  return n;
}

// generator coordinates: unit vectors lifting a basis of M / rad(M)
inline std::vector<std::size_t> top_coords(const GModule& m) {
  FpMatrix rad = radical_of(m, FpMatrix::identity(m.p(), m.dim()));
  std::vector<std::size_t> pivots;
  rref(rad, &pivots);
  std::vector<bool> is_piv(m.dim(), false);
  for (std::size_t c : pivots) is_piv[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m.dim(); ++c)
    if (!is_piv[c]) out.push_back(c);
  return out;
}

// ---------------------------------------------------------------------------
// free summands: over a p-group algebra the norm element sum_g g spans
// soc(kG), and rank(norm) on M equals the multiplicity of kG in M.

struct StripData {
  GModule core;     // projective-free part
  FpMatrix incl;    // core -> m
  FpMatrix proj;    // m -> core, incl after proj restricts to the identity
  std::size_t free_rank = 0;
};

inline StripData strip_free(const GModule& m) {
  const FiniteGroup& g = *m.group();
  StripData out;
  FpMatrix t = m.norm_matrix();
  // greedily select rows x with x*t independent
  RowSpace img(m.p(), m.dim());
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (img.insert(t.row_vec(i))) sel.push_back(i);
  const std::size_t s = sel.size();
  out.free_rank = s;
  if (s == 0) {
    out.core = m;
    out.incl = FpMatrix::identity(m.p(), m.dim());
    out.proj = out.incl;
    return out;
  }
  // u_i : kG -> M generated by x_i = e_{sel[i]}
  FpMatrix u(m.p(), s * g.order, m.dim());
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<u8> x(m.dim(), 0);
    x[sel[i]] = 1;
    FpMatrix orb = m.orbit_rows(x);
    for (std::size_t h = 0; h < g.order; ++h)
      std::copy(orb.row(h), orb.row(h) + m.dim(), u.row(i * g.order + h));
  }
  // functionals phi_j dual to x_i * t
  FpMatrix xt(m.p(), s, m.dim());
  for (std::size_t i = 0; i < s; ++i) xt.set_row(i, t.row_vec(sel[i]));
  RrefResult rxt = rref_with_transform(xt);
  FpMatrix want = FpMatrix::identity(m.p(), s);
  // c_j solves xt * c_j = e_j; assemble as matrix C (dim x s) with xt * C = I
  auto ct = solve(xt.transpose(), want);
  if (!ct) throw std::logic_error("norm image lost rank");
  FpMatrix c = ct->transpose();  // dim x s, with xt * c = I
  // v : M -> kG^s, entry (r, (j,h)) = phi_j(e_r * act(h^{-1}))
  FpMatrix v(m.p(), m.dim(), s * g.order);
  for (std::size_t h = 0; h < g.order; ++h) {
    FpMatrix block = m.act(g.inv[h]) * c;  // dim x s
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t j = 0; j < s; ++j) v.at(r, j * g.order + h) = block.at(r, j);
  }
  // u then v is an endomorphism of kG^s congruent to the identity mod rad
  FpMatrix uv = u * v;
  auto uvinv = inverse(uv);
  if (!uvinv) throw std::logic_error("free summand pairing is singular");
  FpMatrix pi = v * (*uvinv) * u;  // idempotent with image the free part
  FpMatrix id = FpMatrix::identity(m.p(), m.dim());
  if (!(pi * pi == pi)) throw std::logic_error("free splitting is not idempotent");
  SubQuotient sq = sub_module(m, kernel_basis(pi), false);
  out.core = sq.module;
  out.incl = sq.map.mat;
  auto proj = solve(out.incl, id - pi);
  if (!proj) throw std::logic_error("free splitting projection failed");
  out.proj = std::move(*proj);
  return out;
}

inline bool is_projective_free(const GModule& m) {
  return rank(m.norm_matrix()) == 0;
}

}  // namespace stmod
