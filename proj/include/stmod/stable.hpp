#pragma once

// The stable category layer: projective covers, injective hulls, syzygies,
// stable homs, stable triviality and triangles from short exact sequences.
//
// Projectives and injectives coincide here (kG is self-injective), and for
// p-groups the regular module is the only indecomposable projective.

#include "stmod/homs.hpp"
#include "stmod/module.hpp"

namespace stmod {

struct CoverData {
  GModule cover;   // free
  GMap surj;       // cover -> m
  GModule kernel;  // Omega m when m is projective-free
  GMap incl;       // kernel -> cover
};

inline CoverData projective_cover(const GModule& m) {
  FreeCover fc = make_free_cover(m);
  CoverData out;
  out.cover = fc.cover;
  out.surj = GMap(fc.cover, m, fc.pi, false);
  auto sq = sub_module(fc.cover, fc.kernel_rows, false);
  out.kernel = sq.module;
  out.incl = sq.map;
  return out;
}

struct HullData {
  GModule hull;   // free
  GMap incl;      // m -> hull
  GModule coker;  // Omega^{-1} m when m is projective-free
  GMap proj;      // hull -> coker
};

inline HullData injective_hull(const GModule& m) {
  FreeCover fc = make_free_cover(dual(m));
  HullData out;
  out.hull = free_module(m.group(), m.p(), fc.rank);
  out.incl = GMap(m, out.hull, fc.pi.transpose(), false);
  auto sq = quotient_module(out.hull, fc.pi.transpose(), false);
  out.coker = sq.module;
  out.proj = sq.map;
  return out;
}

// n-fold syzygy (n > 0) or cosyzygy (n < 0) of the projective-free part
inline GModule omega(const GModule& m, long n) {
  GModule cur = strip_free(m).core;
  for (long i = 0; i < (n < 0 ? -n : n); ++i)
    cur = n > 0 ? projective_cover(cur).kernel : injective_hull(cur).coker;
  return cur;
}

// ---------------------------------------------------------------------------
// stable triviality: f factors through the injective hull of its domain

inline bool is_stably_trivial(const GMap& f, const HullData* hull = nullptr) {
  if (f.mat.is_zero()) return true;
  if (f.dom.dim() == 0 || f.cod.dim() == 0) return true;
  const GModule& m = f.dom;
  const GModule& n = f.cod;
  const FiniteGroup& g = *m.group();
  // cheap exact rejection: a stably trivial map between projective-free
  // modules kills the socle and lands in the radical
  if (is_projective_free(m) && is_projective_free(n)) {
    if (!(socle(m) * f.mat).is_zero()) return false;
    RowSpace rad(n.p(), n.dim());
    rad.insert_rows(radical(n));
    for (std::size_t i = 0; i < f.mat.rows(); ++i)
      if (!rad.contains(f.mat.row_vec(i))) return false;
  }
  HullData local;
  if (!hull) { local = injective_hull(m); hull = &local; }
  const FpMatrix& iota = hull->incl.mat;  // dm x s|G|
  const std::size_t s = iota.cols() / g.order, dm = m.dim(), dn = n.dim();
  // unknowns: generator images w_t in N; equations: sum_t w_t * D_{r,t} = f_r
  FpMatrix sys(m.p(), s * dn, dm * dn);
  for (std::size_t r = 0; r < dm; ++r)
    for (std::size_t t = 0; t < s; ++t) {
      FpMatrix d(m.p(), dn, dn);
      bool nz = false;
      for (std::size_t h = 0; h < g.order; ++h) {
        u32 coef = iota.at(r, t * g.order + h);
        if (!coef) continue;
        nz = true;
        d = d + n.act(h).scaled(coef);
      }
      if (!nz) continue;
      for (std::size_t c = 0; c < dn; ++c)
        for (std::size_t c2 = 0; c2 < dn; ++c2)
          sys.at(t * dn + c, r * dn + c2) =
              static_cast<u8>((sys.at(t * dn + c, r * dn + c2) + d.at(c, c2)) % m.p());
    }
  return solve(sys, vec(f.mat)).has_value();
}

inline bool stably_equal(const GMap& f, const GMap& g) {
  return is_stably_trivial(GMap(f.dom, f.cod, f.mat - g.mat, false));
}

// ---------------------------------------------------------------------------
// stable hom spaces

struct StableHom {
  std::vector<GMap> hom;           // basis of Hom(M, N)
  std::vector<GMap> phom;          // basis of the stably trivial maps
  std::vector<GMap> stable_basis;  // hom-basis elements spanning Hom/PHom
  std::size_t dim = 0;             // dim Hom - dim PHom
};

inline StableHom stable_hom(const GModule& m, const GModule& n) {
  StableHom out;
  if (m.dim() == 0 || n.dim() == 0) return out;
  const FiniteGroup& g = *m.group();
  auto homs = hom_space(m, n);
  for (auto& h : homs) out.hom.emplace_back(m, n, std::move(h), false);
  HullData hull = injective_hull(m);
  const FpMatrix& iota = hull.incl.mat;
  const std::size_t s = iota.cols() / g.order, dm = m.dim(), dn = n.dim();
  // PHom is spanned by iota-composites of the free maps hull -> N
  RowSpace span(m.p(), dm * dn);
  for (std::size_t t = 0; t < s; ++t) {
    for (std::size_t beta = 0; beta < dn; ++beta) {
      FpMatrix comp(m.p(), dm, dn);
      for (std::size_t r = 0; r < dm; ++r) {
        std::vector<u8> row(dn, 0);
        for (std::size_t h = 0; h < g.order; ++h) {
          u32 coef = iota.at(r, t * g.order + h);
          if (!coef) continue;
          const FpMatrix& ah = n.act(h);
          for (std::size_t c = 0; c < dn; ++c)
            row[c] = static_cast<u8>((row[c] + coef * ah.at(beta, c)) % m.p());
        }
        comp.set_row(r, row);
      }
      if (span.insert(vec(comp).row_vec(0)))
        out.phom.emplace_back(m, n, std::move(comp), false);
    }
  }
  for (const auto& h : out.hom)
    if (span.insert(vec(h.mat).row_vec(0))) out.stable_basis.push_back(h);
  out.dim = out.stable_basis.size();
  return out;
}

// ---------------------------------------------------------------------------
// generic equivariant solver with affine constraints L_i * F = R_i

struct AffineConstraint {
  FpMatrix lhs;  // l x dim(dom)
  FpMatrix rhs;  // l x dim(cod)
};

inline std::optional<FpMatrix> solve_equivariant(
    const GModule& dom, const GModule& cod,
    const std::vector<AffineConstraint>& constraints) {
  const std::size_t da = dom.dim(), db = cod.dim();
  const u32 p = dom.p();
  if (da == 0 || db == 0) return FpMatrix(p, da, db);
  std::size_t ncols = dom.n_gens() * da * db;
  for (const auto& c : constraints) ncols += c.lhs.rows() * db;
  FpMatrix sys(p, da * db, ncols);
  FpMatrix rhs(p, 1, ncols);
  std::size_t col0 = 0;
  for (std::size_t gi = 0; gi < dom.n_gens(); ++gi) {
    const FpMatrix& a = dom.gen_act(gi);
    const FpMatrix& b = cod.gen_act(gi);
    // equation (r,c): sum_i a[r][i] F[i][c] - sum_j b[j][c] F[r][j] = 0
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < db; ++c) {
        std::size_t eq = col0 + r * db + c;
        for (std::size_t i = 0; i < da; ++i)
          if (a.at(r, i))
            sys.at(i * db + c, eq) = static_cast<u8>((sys.at(i * db + c, eq) + a.at(r, i)) % p);
        for (std::size_t j = 0; j < db; ++j)
          if (b.at(j, c))
            sys.at(r * db + j, eq) =
                static_cast<u8>((sys.at(r * db + j, eq) + p - b.at(j, c)) % p);
      }
    col0 += da * db;
  }
  for (const auto& cons : constraints) {
    for (std::size_t r = 0; r < cons.lhs.rows(); ++r)
      for (std::size_t c = 0; c < db; ++c) {
        std::size_t eq = col0 + r * db + c;
        for (std::size_t i = 0; i < da; ++i)
          if (cons.lhs.at(r, i))
            sys.at(i * db + c, eq) =
                static_cast<u8>((sys.at(i * db + c, eq) + cons.lhs.at(r, i)) % p);
        rhs.at(0, eq) = cons.rhs.at(r, c);
      }
    col0 += cons.lhs.rows() * db;
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  return unvec(sol->row_vec(0), p, da, db);
}

// ---------------------------------------------------------------------------
// triangles from short exact sequences

struct Triangle {
  GModule x, y, z;
  GMap alpha;       // x -> y
  GMap beta;        // y -> z
  GMap connecting;  // z -> Omega^{-1} x, a chosen stable representative
  GModule shift_x;  // Omega^{-1} x
};

inline Triangle triangle_from_ses(const GMap& incl, const GMap& proj) {
  if (incl.cod.id() != proj.dom.id())
    throw std::invalid_argument("maps do not share the middle module");
  const GModule& x = incl.dom;
  const GModule& y = incl.cod;
  const GModule& z = proj.cod;
  if (rank(incl.mat) != x.dim() || rank(proj.mat) != z.dim() ||
      x.dim() + z.dim() != y.dim() || !(incl.mat * proj.mat).is_zero())
    throw std::invalid_argument("not a short exact sequence");
  HullData hull = injective_hull(x);
  auto psi = solve_equivariant(y, hull.hull, {{incl.mat, hull.incl.mat}});
  if (!psi) throw std::logic_error("injective extension failed");
  auto ypre = solve(proj.mat, FpMatrix::identity(z.p(), z.dim()));
  if (!ypre) throw std::logic_error("projection section failed");
  Triangle t;
  t.x = x;
  t.y = y;
  t.z = z;
  t.alpha = incl;
  t.beta = proj;
  t.shift_x = hull.coker;
  t.connecting = GMap(z, hull.coker, *ypre * *psi * hull.proj.mat);
  return t;
}

}  // namespace stmod
