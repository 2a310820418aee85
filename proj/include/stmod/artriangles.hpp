#pragma once

// Auslander-Reiten triangles: the radical of the stable endomorphism
// algebra, the almost zero map, the heart, and the right-almost-split test.

#include "stmod/ghosts.hpp"
#include "stmod/homs.hpp"
#include "stmod/stable.hpp"

namespace stmod {

// the stable endomorphism algebra in coordinates: a basis of End/PHom with
// a certified maximal ideal
struct StableEndData {
  std::vector<GMap> stable_basis;       // endomorphism representatives
  std::vector<FpMatrix> radical_basis;  // coordinates rows over stable_basis
  std::size_t dim = 0;                  // dim of the stable algebra
  std::size_t residue_dim = 0;          // dim of the residue division algebra
};

// Certified computation of J(stable End(m)); requires p^dim(End) small
// enough for an exhaustive sweep, and m indecomposable.
inline StableEndData stable_end_radical(const GModule& m, bool assume_indecomposable = false) {
  if (!assume_indecomposable) {
    auto dec = decompose(m);
    if (dec.pieces.size() != 1 || !dec.certified)
      throw std::invalid_argument("stable_end_radical needs a certified indecomposable module");
  }
  const u32 p = m.p();
  StableHom sh = stable_hom(m, m);
  StableEndData out;
  out.stable_basis = sh.stable_basis;
  out.dim = sh.dim;
  const std::size_t d = sh.dim;
  if (d == 0) throw std::invalid_argument("zero module has no stable endomorphisms");
  u64 total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= p;
    if (total > 6561)
      throw std::invalid_argument("stable endomorphism algebra too large to certify");
  }
  // stable coordinates of a class: solve against [basis; phom], keep the
  // basis part
  FpMatrix basis_vec(p, d, m.dim() * m.dim());
  for (std::size_t i = 0; i < d; ++i)
    basis_vec.set_row(i, vec(sh.stable_basis[i].mat).row_vec(0));
  // stable coordinates of a class: solve against [basis; phom] and keep the
  // basis part
  FpMatrix phom_rows(p, sh.phom.size(), m.dim() * m.dim());
  for (std::size_t i = 0; i < sh.phom.size(); ++i)
    phom_rows.set_row(i, vec(sh.phom[i].mat).row_vec(0));
  FpMatrix full = FpMatrix::vstack(basis_vec, phom_rows);
  RrefResult full_r = rref_with_transform(full);
  auto coords = [&](const FpMatrix& e) {
    auto sol = solve(full_r, full, vec(e));
    if (!sol) throw std::logic_error("endomorphism outside the computed span");
    std::vector<u8> c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = sol->at(0, i);
    return c;
  };
  // left multiplication operators in stable coordinates
  std::vector<FpMatrix> left_ops(d, FpMatrix(p, d, d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      std::vector<u8> c = coords(sh.stable_basis[a].mat * sh.stable_basis[b].mat);
      for (std::size_t i = 0; i < d; ++i) left_ops[a].at(b, i) = c[i];  // row b: e_a * e_b
    }
  auto class_invertible = [&](const std::vector<u8>& c) {
    FpMatrix op(p, d, d);
    for (std::size_t a = 0; a < d; ++a)
      if (c[a]) op = op + left_ops[a].scaled(c[a]);
    return rank(op) == d;
  };
  // exhaustive sweep: in a local algebra the non-invertible classes form
  // the unique maximal ideal
  RowSpace rad(p, d);
  std::vector<u8> tuple(d, 0);
  std::size_t invertible = 0, singular = 0;
  while (detail::next_tuple(tuple, p)) {
    if (class_invertible(tuple)) {
      ++invertible;
    } else {
      ++singular;
      rad.insert(tuple);
    }
  }
  // certification: the singular classes must form a subspace and everything
  // outside it must be invertible
  std::size_t expect_singular = 1;
  for (std::size_t i = 0; i < rad.dim(); ++i) expect_singular *= p;
  if (singular + 1 != expect_singular)
    throw std::logic_error("non-invertible classes do not form a subspace; module not local");
  FpMatrix rb = rad.basis();
  for (std::size_t i = 0; i < rb.rows(); ++i) out.radical_basis.push_back(rb.sub_rows({i}));
  out.residue_dim = d - rad.dim();
  return out;
}

struct ARTriangle {
  GModule m;
  GMap gamma;       // m -> Omega m, the almost zero map
  GModule omega_m;  // Omega m, in the chain's coordinates
  GModule omega2_m;
  GModule heart;
  GMap alpha;  // Omega^2 m -> heart
  GMap beta;   // heart -> m
  GModule extension;  // the pullback before stripping
};

// gamma: a nonzero stable class m -> Omega m killed by precomposition with
// every non-invertible stable endomorphism
inline GMap almost_zero_map(const GModule& m, bool assume_indecomposable = false,
                            const GModule* omega_m = nullptr) {
  if (!is_projective_free(m))
    throw std::invalid_argument("almost zero maps exist for non-projective modules only");
  StableEndData end = stable_end_radical(m, assume_indecomposable);
  GModule om = omega_m ? *omega_m : omega(m, 1);
  StableHom sh = stable_hom(m, om);
  if (sh.dim == 0) throw std::logic_error("no stable maps m -> Omega m");
  const u32 p = m.p();
  const std::size_t d = sh.dim;
  // stable coordinates on [m, Omega m]
  FpMatrix basis_vec(p, d, m.dim() * om.dim());
  for (std::size_t i = 0; i < d; ++i)
    basis_vec.set_row(i, vec(sh.stable_basis[i].mat).row_vec(0));
  FpMatrix phom_rows(p, sh.phom.size(), m.dim() * om.dim());
  for (std::size_t i = 0; i < sh.phom.size(); ++i)
    phom_rows.set_row(i, vec(sh.phom[i].mat).row_vec(0));
  FpMatrix full = FpMatrix::vstack(basis_vec, phom_rows);
  RrefResult full_r = rref_with_transform(full);
  // constraints: for each radical generator j, the class of j * gamma vanishes
  std::vector<FpMatrix> jreps;
  for (const auto& row : end.radical_basis) {
    FpMatrix j(p, m.dim(), m.dim());
    for (std::size_t a = 0; a < end.dim; ++a)
      if (row.at(0, a)) j = j + end.stable_basis[a].mat.scaled(row.at(0, a));
    jreps.push_back(std::move(j));
  }
  FpMatrix sys(p, d, jreps.size() * d);
  for (std::size_t jj = 0; jj < jreps.size(); ++jj)
    for (std::size_t a = 0; a < d; ++a) {
      auto sol = solve(full_r, full, vec(jreps[jj] * sh.stable_basis[a].mat));
      if (!sol) throw std::logic_error("composite left the computed span");
      for (std::size_t i = 0; i < d; ++i) sys.at(a, jj * d + i) = sol->at(0, i);
    }
  FpMatrix ker = kernel_basis(sys);
  if (ker.rows() == 0) throw std::logic_error("no almost zero map found");
  FpMatrix gamma(p, m.dim(), om.dim());
  for (std::size_t a = 0; a < d; ++a)
    if (ker.at(0, a)) gamma = gamma + sh.stable_basis[a].mat.scaled(ker.at(0, a));
  return GMap(m, om, std::move(gamma));
}

// realize the A-R triangle Omega^2 m -> H(m) -> m -> Omega m by pulling the
// hull sequence of Omega^2 m back along gamma
inline ARTriangle heart(const GModule& m, bool assume_indecomposable = false) {
  ARTriangle out;
  out.m = m;
  SyzygyChain ch(m);
  out.omega_m = ch.node(1);
  out.omega2_m = ch.node(2);
  out.gamma = almost_zero_map(m, assume_indecomposable, &out.omega_m);
  auto& link = ch.link(1);  // 0 -> Omega^2 m -> F -> Omega m -> 0
  // E = { (x, v) : proj(x) = gamma(v) } inside F + m
  SumData amb = direct_sum({link.free, m}, m.group(), m.p());
  FpMatrix mixed = FpMatrix::vstack(link.proj, out.gamma.mat);
  FpMatrix ker = kernel_basis(mixed);  // rows (x | -v); characteristic-safe below
  // rows of ker give x-part and v-part with x*proj + v*gamma = 0, i.e.
  // proj(x) = gamma(-v); flip the sign of the v block
  FpMatrix rows(m.p(), ker.rows(), amb.sum.dim());
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (std::size_t c = 0; c < amb.sum.dim(); ++c) {
      u8 val = ker.at(r, c);
      if (c >= link.free.dim()) val = static_cast<u8>((m.p() - val) % m.p());
      rows.at(r, c) = val;
    }
  auto esub = sub_module(amb.sum, rows, false);
  out.extension = esub.module;
  if (out.extension.dim() != link.free.dim() + m.dim() - out.omega_m.dim())
    throw std::logic_error("pullback has unexpected dimension");
  // alpha0: Omega^2 m -> E via (incl, 0); beta0: E -> m via the projection
  FpMatrix a0 = FpMatrix::hstack(link.incl, FpMatrix(m.p(), out.omega2_m.dim(), m.dim()));
  auto a0e = solve(esub.map.mat, a0);
  if (!a0e) throw std::logic_error("Omega^2 m does not land in the pullback");
  FpMatrix b0 = esub.map.mat.sub_cols([&] {
    std::vector<std::size_t> idx;
    for (std::size_t c = link.free.dim(); c < amb.sum.dim(); ++c) idx.push_back(c);
    return idx;
  }());
  // exactness before stripping
  if (rank(*a0e) != out.omega2_m.dim() || rank(b0) != m.dim() ||
      !(*a0e * b0).is_zero())
    throw std::logic_error("A-R extension failed to be exact");
  StripData s = strip_free(out.extension);
  out.heart = s.core;
  out.alpha = GMap(out.omega2_m, out.heart, *a0e * s.proj);
  out.beta = GMap(out.heart, m, s.incl * b0);
  return out;
}

// a stable section exists: some s with s then f equal to the identity
inline bool is_split_epi(const GMap& f) {
  const u32 p = f.cod.p();
  RowSpace span(p, f.cod.dim() * f.cod.dim());
  for (const auto& s : hom_space(f.cod, f.dom)) span.insert(vec(s * f.mat).row_vec(0));
  for (const auto& ph : stable_hom(f.cod, f.cod).phom) span.insert(vec(ph.mat).row_vec(0));
  return span.contains(vec(FpMatrix::identity(p, f.cod.dim())).row_vec(0));
}

// beta is stably non-trivial, not split epic, and every stable-basis map
// T -> cod(beta) that is not split epic factors through it
inline bool check_right_almost_split(const GMap& beta, const std::vector<GModule>& testers) {
  const GModule& tgt = beta.cod;
  if (is_stably_trivial(beta)) return false;
  if (is_split_epi(beta)) return false;
  for (const auto& t : testers) {
    StableHom sh = stable_hom(t, tgt);
    for (const auto& u : sh.stable_basis) {
      if (is_split_epi(GMap(t, tgt, u.mat, false))) continue;
      RowSpace span(t.p(), t.dim() * tgt.dim());
      for (const auto& h : hom_space(t, beta.dom)) span.insert(vec(h * beta.mat).row_vec(0));
      for (const auto& ph : sh.phom) span.insert(vec(ph.mat).row_vec(0));
      if (!span.contains(vec(u.mat).row_vec(0))) return false;
    }
  }
  return true;
}

}  // namespace stmod
