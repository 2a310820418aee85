#pragma once

// Equivariant hom spaces, isomorphism testing and direct-sum decomposition.
//
// Hom_G(A, B) is computed from a free presentation of A: a map is pinned by
// the images of A's generators, subject to one linear condition per
// generator of the relation module.  This keeps the unknown count at
// top(A) * dim(B) instead of dim(A) * dim(B).

#include <map>
#include <random>
#include <vector>

#include "stmod/module.hpp"

namespace stmod {

inline FpMatrix vec(const FpMatrix& m) {
  FpMatrix out(m.p(), 1, m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(0, i * m.cols() + j) = m.at(i, j);
  return out;
}

inline FpMatrix unvec(const std::vector<u8>& v, u32 p, std::size_t rows, std::size_t cols) {
  FpMatrix out(p, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = v[i * cols + j];
  return out;
}

// free cover F = kG^t -> A built on lifts of a basis of A/rad(A)
struct FreeCover {
  std::size_t rank = 0;
  GModule cover;                      // kG^t
  FpMatrix pi;                        // t|G| x dim(A), surjective
  FpMatrix pi_rinv;                   // dim(A) x t|G| with pi_rinv * pi = id
  FpMatrix kernel_rows;               // basis of ker(pi), rows in F coordinates
  std::vector<std::size_t> top;       // generator coordinates in A
};

inline FreeCover make_free_cover(const GModule& a) {
  const FiniteGroup& g = *a.group();
  FreeCover fc;
  fc.top = top_coords(a);
  fc.rank = fc.top.size();
  fc.cover = free_module(a.group(), a.p(), fc.rank);
  fc.pi = FpMatrix(a.p(), fc.rank * g.order, a.dim());
  for (std::size_t i = 0; i < fc.rank; ++i) {
    std::vector<u8> x(a.dim(), 0);
    x[fc.top[i]] = 1;
    FpMatrix orb = a.orbit_rows(x);
    for (std::size_t h = 0; h < g.order; ++h)
      std::copy(orb.row(h), orb.row(h) + a.dim(), fc.pi.row(i * g.order + h));
  }
  RrefResult rr = rref_with_transform(fc.pi);
  if (rr.rank != a.dim()) throw std::logic_error("free cover is not surjective");
  auto rinv = solve(rr, fc.pi, FpMatrix::identity(a.p(), a.dim()));
  fc.pi_rinv = std::move(*rinv);
  fc.kernel_rows = FpMatrix(a.p(), fc.rank * g.order - rr.rank, fc.rank * g.order);
  for (std::size_t i = rr.rank; i < fc.pi.rows(); ++i)
    std::copy(rr.transform.row(i), rr.transform.row(i) + fc.pi.rows(),
              fc.kernel_rows.row(i - rr.rank));
  return fc;
}

// module generators of the relation module ker(pi), as rows in F coordinates
inline FpMatrix relation_generators(const FreeCover& fc) {
  if (fc.kernel_rows.rows() == 0) return fc.kernel_rows;
  FpMatrix rad = radical_of(fc.cover, fc.kernel_rows);
  RowSpace rs(fc.pi.p(), fc.kernel_rows.cols());
  rs.insert_rows(rad);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < fc.kernel_rows.rows(); ++i)
    if (rs.insert(fc.kernel_rows.row_vec(i))) keep.push_back(i);
  return fc.kernel_rows.sub_rows(keep);
}

// basis of Hom_G(A, B) as matrices
inline std::vector<FpMatrix> hom_space(const GModule& a, const GModule& b,
                                       const FreeCover* cover = nullptr) {
  if (a.group() != b.group() || a.p() != b.p())
    throw std::invalid_argument("hom between different group algebras");
  if (a.dim() == 0 || b.dim() == 0) return {};
  const FiniteGroup& g = *a.group();
  FreeCover local;
  if (!cover) { local = make_free_cover(a); cover = &local; }
  const std::size_t t = cover->rank, db = b.dim();
  FpMatrix rels = relation_generators(*cover);
  const std::size_t m = rels.rows();
  // unknowns: images (b_1, ..., b_t); equations: sum_i b_i * C_{j,i} = 0
  FpMatrix sys(a.p(), t * db, m * db);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < t; ++i) {
      FpMatrix c(a.p(), db, db);
      bool nz = false;
      for (std::size_t h = 0; h < g.order; ++h) {
        u32 coef = rels.at(j, i * g.order + h);
        if (!coef) continue;
        nz = true;
        c = c + b.act(h).scaled(coef);
      }
      if (!nz) continue;
      for (std::size_t r = 0; r < db; ++r)
        for (std::size_t cc = 0; cc < db; ++cc)
          sys.at(i * db + r, j * db + cc) = c.at(r, cc);
    }
  FpMatrix sols = kernel_basis(sys);
  std::vector<FpMatrix> out;
  for (std::size_t s = 0; s < sols.rows(); ++s) {
    // free-map matrix on the cover, then push down along pi
    FpMatrix phi(a.p(), t * g.order, db);
    for (std::size_t i = 0; i < t; ++i) {
      std::vector<u8> bi(db);
      for (std::size_t j = 0; j < db; ++j) bi[j] = sols.at(s, i * db + j);
      FpMatrix orb = b.orbit_rows(bi);
      for (std::size_t h = 0; h < g.order; ++h)
        std::copy(orb.row(h), orb.row(h) + db, phi.row(i * g.order + h));
    }
    out.push_back(cover->pi_rinv * phi);
  }
  return out;
}

inline std::vector<FpMatrix> end_space(const GModule& a) { return hom_space(a, a); }

namespace detail {

inline FpMatrix combo(const std::vector<FpMatrix>& basis, const std::vector<u8>& c) {
  FpMatrix m(basis[0].p(), basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c[i]) m = m + basis[i].scaled(c[i]);
  return m;
}

inline FpMatrix matrix_power(FpMatrix m, std::size_t e) {
  FpMatrix r = FpMatrix::identity(m.p(), m.rows());
  for (; e; e >>= 1) {
    if (e & 1) r = r * m;
    m = m * m;
  }
  return r;
}

inline bool next_tuple(std::vector<u8>& c, u32 p) {
  std::size_t k = 0;
  while (k < c.size() && c[k] == u8(p - 1)) c[k++] = 0;
  if (k == c.size()) return false;
  ++c[k];
  return true;
}

}  // namespace detail

inline bool is_isomorphic(const GModule& a, const GModule& b, u64 seed = 0) {
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  if (radical_length(a) != radical_length(b)) return false;
  if (socle(a).rows() != socle(b).rows()) return false;
  auto hom = hom_space(a, b);
  if (hom.empty()) return false;
  std::mt19937_64 rng(seed ^ 0x517cc1b727220a95ULL);
  const u32 p = a.p();
  std::vector<u8> c(hom.size());
  for (int trial = 0; trial < 60; ++trial) {
    for (auto& x : c) x = static_cast<u8>(rng() % p);
    FpMatrix f = detail::combo(hom, c);
    if (rank(f) == a.dim()) return true;
  }
  u64 total = 1;
  for (std::size_t i = 0; i < hom.size(); ++i) {
    total *= p;
    if (total > 6561) return false;  // randomized search is the final answer here
  }
  std::fill(c.begin(), c.end(), 0);
  while (detail::next_tuple(c, p))
    if (rank(detail::combo(hom, c)) == a.dim()) return true;
  return false;
}

struct Summand {
  GModule part;
  FpMatrix incl;   // part -> ambient module
  bool certified = false;
};

struct Decomposition {
  std::vector<Summand> pieces;
  bool certified = true;  // all pieces certified indecomposable
};

namespace detail {

inline void decompose_rec(const GModule& m, const FpMatrix& incl, Decomposition& out,
                          std::mt19937_64& rng, int budget) {
  if (m.dim() == 0) return;
  auto ends = end_space(m);
  if (ends.size() == 1) {
    out.pieces.push_back({m, incl, true});
    return;
  }
  const u32 p = m.p();
  std::size_t pw = 1;
  while (pw < m.dim()) pw <<= 1;
  auto try_split = [&](const FpMatrix& e) -> bool {
    FpMatrix en = matrix_power(e, pw);
    FpMatrix ker = kernel_basis(en);
    if (ker.rows() == 0 || ker.rows() == m.dim()) return false;
    FpMatrix img = rref(en);
    std::vector<std::size_t> pivots;
    img = rref(en, &pivots);
    std::vector<std::size_t> firstn(pivots.size());
    for (std::size_t i = 0; i < pivots.size(); ++i) firstn[i] = i;
    img = img.sub_rows(firstn);
    auto s1 = sub_module(m, ker, false);
    auto s2 = sub_module(m, img, false);
    decompose_rec(s1.module, s1.map.mat * incl, out, rng, budget);
    decompose_rec(s2.module, s2.map.mat * incl, out, rng, budget);
    return true;
  };
  std::vector<u8> c(ends.size());
  for (int trial = 0; trial < budget; ++trial) {
    for (auto& x : c) x = static_cast<u8>(rng() % p);
    if (try_split(combo(ends, c))) return;
  }
  // exhaustive sweep when the endomorphism algebra is small enough
  u64 total = 1;
  bool small = true;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    total *= p;
    if (total > 6561) { small = false; break; }
  }
  if (small) {
    std::fill(c.begin(), c.end(), 0);
    while (next_tuple(c, p)) {
      FpMatrix e = combo(ends, c);
      if (rank(e) == m.dim()) continue;                 // invertible
      if (matrix_power(e, pw).is_zero()) continue;      // nilpotent
      if (try_split(e)) return;
      throw std::logic_error("Fitting splitting failed on a splitting endomorphism");
    }
    // every endomorphism is invertible or nilpotent: local ring
    out.pieces.push_back({m, incl, true});
    return;
  }
  out.pieces.push_back({m, incl, false});
}

}  // namespace detail

inline Decomposition decompose(const GModule& m, u64 seed = 0, int budget = 64) {
  Decomposition out;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  detail::decompose_rec(m, FpMatrix::identity(m.p(), m.dim()), out, rng, budget);
  for (const auto& pc : out.pieces) out.certified &= pc.certified;
  return out;
}

// convenience: group the pieces of a decomposition by isomorphism type
inline std::vector<std::pair<GModule, std::size_t>> group_by_iso(
    const Decomposition& d, u64 seed = 0) {
  std::vector<std::pair<GModule, std::size_t>> out;
  for (const auto& pc : d.pieces) {
    bool found = false;
    for (auto& known : out)
      if (is_isomorphic(known.first, pc.part, seed)) {
        ++known.second;
        found = true;
        break;
      }
    if (!found) out.push_back({pc.part, 1});
  }
  return out;
}

}  // namespace stmod
