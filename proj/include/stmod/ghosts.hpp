#pragma once

// Ghost detection, windowed universal ghosts and certified length bounds.
//
// No finite computation certifies that a map over a non-periodic group is a
// true ghost (kills [Omega^i k, -] in every degree), so the artifact works
// with window ghosts: maps killing the degrees in a finite window.  True
// ghosts are window ghosts for every window, which orients all bounds the
// sound way:
//   * lower bounds come from composites of theorem-certified ghosts,
//     checked to be stably non-trivial at matrix level;
//   * upper bounds come from the socle length, or from an iterated windowed
//     universal ghost: if the n-fold iterate out of M vanishes stably, every
//     composite of n true ghosts out of M vanishes, whatever the per-stage
//     windows were.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "stmod/stable.hpp"

namespace stmod {

// ---------------------------------------------------------------------------
// chains of syzygies with remembered presentations
//
// node(j) = Omega^j of the stripped base module; link(j) stores the short
// exact sequence 0 -> node(j+1) -> free(j) -> node(j) -> 0, which is both
// the projective cover of node(j) and the injective hull of node(j+1).

class SyzygyChain {
 public:
  explicit SyzygyChain(const GModule& base) { nodes_.emplace(0, strip_free(base).core); }

  const GModule& node(long j) {
    ensure(j);
    return nodes_.at(j);
  }

  struct Link {
    GModule free;
    FpMatrix incl;  // node(j+1) -> free(j)
    FpMatrix proj;  // free(j) -> node(j)
    std::unique_ptr<RrefResult> proj_r, incl_r, dual_proj_r, dual_incl_r;
  };

  Link& link(long j) {
    ensure(j);
    ensure(j + 1);
    return *links_.at(j);
  }

  static const RrefResult& proj_rref(Link& l) {
    if (!l.proj_r) l.proj_r = std::make_unique<RrefResult>(rref_with_transform(l.proj));
    return *l.proj_r;
  }
  static const RrefResult& incl_rref(Link& l) {
    if (!l.incl_r) l.incl_r = std::make_unique<RrefResult>(rref_with_transform(l.incl));
    return *l.incl_r;
  }
  static const RrefResult& dual_proj_rref(Link& l) {
    if (!l.dual_proj_r)
      l.dual_proj_r = std::make_unique<RrefResult>(rref_with_transform(l.incl.transpose()));
    return *l.dual_proj_r;
  }
  static const RrefResult& dual_incl_rref(Link& l) {
    if (!l.dual_incl_r)
      l.dual_incl_r = std::make_unique<RrefResult>(rref_with_transform(l.proj.transpose()));
    return *l.dual_incl_r;
  }

 private:
  void ensure(long j) {
    while (nodes_.rbegin()->first < j) {
      long top = nodes_.rbegin()->first;
      CoverData c = projective_cover(nodes_.at(top));
      auto l = std::make_unique<Link>();
      l->free = c.cover;
      l->incl = c.incl.mat;
      l->proj = c.surj.mat;
      nodes_.emplace(top + 1, c.kernel);
      links_[top] = std::move(l);
    }
    while (nodes_.begin()->first > j) {
      long bot = nodes_.begin()->first;
      HullData h = injective_hull(nodes_.at(bot));
      auto l = std::make_unique<Link>();
      l->free = h.hull;
      l->incl = h.incl.mat;
      l->proj = h.proj.mat;
      nodes_.emplace(bot - 1, h.coker);
      links_[bot - 1] = std::move(l);
    }
  }

  std::map<long, GModule> nodes_;
  std::map<long, std::unique_ptr<Link>> links_;
};

namespace detail {

// Omega of a map u : A.node(la) -> B.node(lb); the result is the matrix of
// a representative node(la+1) -> node(lb+1), found by lifting u along the
// remembered covers.
inline FpMatrix suspend_map(SyzygyChain& a, long la, SyzygyChain& b, long lb,
                            const FpMatrix& u) {
  auto& linka = a.link(la);
  auto& linkb = b.link(lb);
  const FiniteGroup& g = *linka.free.group();
  const std::size_t ta = linka.free.dim() / g.order;
  FpMatrix lift(u.p(), linka.free.dim(), linkb.free.dim());
  for (std::size_t t = 0; t < ta; ++t) {
    std::vector<u8> rhs = u.apply(linka.proj.row_vec(t * g.order + g.identity));
    FpMatrix rhsm(u.p(), 1, rhs.size());
    rhsm.set_row(0, rhs);
    auto y = solve(SyzygyChain::proj_rref(linkb), linkb.proj, rhsm);
    if (!y) throw std::logic_error("cover lift failed");
    FpMatrix orb = linkb.free.orbit_rows(y->row_vec(0));
    for (std::size_t h = 0; h < g.order; ++h)
      std::copy(orb.row(h), orb.row(h) + orb.cols(), lift.row(t * g.order + h));
  }
  FpMatrix numer = linka.incl * lift;
  auto res = solve(SyzygyChain::incl_rref(linkb), linkb.incl, numer);
  if (!res) throw std::logic_error("syzygy restriction failed");
  return *res;
}

// Omega^{-1} of u : A.node(la) -> B.node(lb), via the dual covers; the
// result represents node(la-1) -> node(lb-1).
inline FpMatrix desuspend_map(SyzygyChain& a, long la, SyzygyChain& b, long lb,
                              const FpMatrix& u) {
  auto& linka = a.link(la - 1);
  auto& linkb = b.link(lb - 1);
  const FiniteGroup& g = *linka.free.group();
  const std::size_t tb = linkb.free.dim() / g.order;
  FpMatrix ustar = u.transpose();  // dual(node(lb)) -> dual(node(la))
  FpMatrix pi_bd = linkb.incl.transpose();
  FpMatrix lift(u.p(), linkb.free.dim(), linka.free.dim());
  for (std::size_t t = 0; t < tb; ++t) {
    std::vector<u8> rhs = ustar.apply(pi_bd.row_vec(t * g.order + g.identity));
    FpMatrix rhsm(u.p(), 1, rhs.size());
    rhsm.set_row(0, rhs);
    FpMatrix pi_ad = linka.incl.transpose();
    auto y = solve(SyzygyChain::dual_proj_rref(linka), pi_ad, rhsm);
    if (!y) throw std::logic_error("dual cover lift failed");
    FpMatrix orb = linka.free.orbit_rows(y->row_vec(0));
    for (std::size_t h = 0; h < g.order; ++h)
      std::copy(orb.row(h), orb.row(h) + orb.cols(), lift.row(t * g.order + h));
  }
  FpMatrix numer = linkb.proj.transpose() * lift;
  auto res = solve(SyzygyChain::dual_incl_rref(linka), linka.proj.transpose(), numer);
  if (!res) throw std::logic_error("dual syzygy restriction failed");
  return res->transpose();
}

}  // namespace detail

// shared chains of syzygies of k, keyed by group and characteristic
class SyzygyCache {
 public:
  SyzygyChain& k_chain(const GroupPtr& g, u32 p) {
    auto key = std::make_pair(g.get(), p);
    auto it = chains_.find(key);
    if (it == chains_.end()) {
      keepalive_.push_back(g);
      it = chains_.emplace(key, std::make_unique<SyzygyChain>(trivial_module(g, p))).first;
    }
    return *it->second;
  }
  const GModule& omega_k(const GroupPtr& g, u32 p, long i) {
    return k_chain(g, p).node(i);
  }

  // Smallest |j| with Omega^j k isomorphic to Omega^i k, searching j between
  // -|i| and |i|.  Precomposing with an isomorphism is a bijection on stable
  // classes, so degree i contributes nothing beyond its canonical degree.
  long canonical_degree(const GroupPtr& g, u32 p, long i) {
    auto key = std::make_tuple(g.get(), p, i);
    auto it = canon_.find(key);
    if (it != canon_.end()) return it->second;
    SyzygyChain& ch = k_chain(g, p);
    long best = i;
    for (long j = 0; j < (i < 0 ? -i : i) && best == i; ++j)
      for (long sj : {j, -j}) {
        if (ch.node(sj).dim() != ch.node(i).dim()) continue;
        if (is_isomorphic(ch.node(sj), ch.node(i))) {
          best = sj;
          break;
        }
      }
    canon_[key] = best;
    return best;
  }

 private:
  std::map<std::pair<const FiniteGroup*, u32>, std::unique_ptr<SyzygyChain>> chains_;
  std::map<std::tuple<const FiniteGroup*, u32, long>, long> canon_;
  std::vector<GroupPtr> keepalive_;
};

// Maps Omega^i k -> X whose stable classes span [Omega^i k, X], built by
// shifting the socle of Omega^{-i} X through the chains.  X must be
// projective-free and xchain must be a chain on X in X's own coordinates.
inline std::vector<FpMatrix> window_basis_maps(SyzygyCache& cache, SyzygyChain& xchain,
                                               const GroupPtr& g, u32 p, long i) {
  const GModule& tgt = xchain.node(-i);
  if (tgt.dim() == 0) return {};
  SyzygyChain& kch = cache.k_chain(g, p);
  FpMatrix soc = socle(tgt);
  std::vector<FpMatrix> out;
  for (std::size_t s = 0; s < soc.rows(); ++s) {
    FpMatrix u(p, 1, tgt.dim());
    u.set_row(0, soc.row_vec(s));
    if (i > 0)
      for (long step = 0; step < i; ++step)
        u = detail::suspend_map(kch, step, xchain, -i + step, u);
    else if (i < 0)
      for (long step = 0; step < -i; ++step)
        u = detail::desuspend_map(kch, -step, xchain, -i - step, u);
    out.push_back(std::move(u));
  }
  return out;
}

// ---------------------------------------------------------------------------
// certificates

struct GhostCertificate {
  enum class Kind { ByTheorem, ByWindow, Composite };
  Kind kind = Kind::ByWindow;
  std::string label;                     // theorem tag for ByTheorem
  long window = 0;                       // for ByWindow
  std::vector<GhostCertificate> parts;   // for Composite
  std::string notes;

  static GhostCertificate by_theorem(std::string lbl, std::string note = "") {
    GhostCertificate c;
    c.kind = Kind::ByTheorem;
    c.label = std::move(lbl);
    c.notes = std::move(note);
    return c;
  }
  static GhostCertificate by_window(long w) {
    GhostCertificate c;
    c.kind = Kind::ByWindow;
    c.window = w;
    return c;
  }
  static GhostCertificate composite(std::vector<GhostCertificate> ps) {
    GhostCertificate c;
    c.kind = Kind::Composite;
    c.parts = std::move(ps);
    return c;
  }
  bool theorem_backed() const {
    if (kind == Kind::ByTheorem) return true;
    if (kind != Kind::Composite || parts.empty()) return false;
    for (const auto& p : parts)
      if (!p.theorem_backed()) return false;
    return true;
  }
};

struct CertifiedGhost {
  GMap map;
  GhostCertificate cert;
};

// ---------------------------------------------------------------------------
// window ghost checks

inline bool is_window_ghost(SyzygyCache& cache, const GMap& f, long window) {
  StripData s = strip_free(f.dom);
  if (s.core.dim() == 0) return true;
  SyzygyChain xch(s.core);
  FpMatrix into_cod = s.incl * f.mat;  // core -> cod(f)
  for (long i = -window; i <= window; ++i) {
    auto maps = window_basis_maps(cache, xch, f.dom.group(), f.dom.p(), i);
    const GModule& omk = cache.omega_k(f.dom.group(), f.dom.p(), i);
    for (const auto& u : maps)
      if (!is_stably_trivial(GMap(omk, f.cod, u * into_cod, false))) return false;
  }
  return true;
}

// The two inclusions of the socle/radical lemma for a given representative;
// with stable_representative the stable-class statements are tested instead.
inline std::pair<bool, bool> soc_rad_check(const GMap& f, bool stable_representative = false,
                                           SyzygyCache* cache = nullptr) {
  if (!is_projective_free(f.dom) || !is_projective_free(f.cod))
    throw std::invalid_argument("soc_rad_check expects projective-free modules");
  if (!stable_representative) {
    bool kills_socle = (socle(f.dom) * f.mat).is_zero();
    RowSpace rad(f.cod.p(), f.cod.dim());
    rad.insert_rows(radical(f.cod));
    bool lands_in_radical = true;
    for (std::size_t i = 0; i < f.mat.rows() && lands_in_radical; ++i)
      if (!rad.contains(f.mat.row_vec(i))) lands_in_radical = false;
    return {kills_socle, lands_in_radical};
  }
  SyzygyCache local;
  SyzygyCache& C = cache ? *cache : local;
  SyzygyChain xch(f.dom);
  bool k_side = true, om_side = true;
  for (const auto& u : window_basis_maps(C, xch, f.dom.group(), f.dom.p(), 0))
    if (!is_stably_trivial(GMap(C.omega_k(f.dom.group(), f.dom.p(), 0), f.cod, u * f.mat, false))) {
      k_side = false;
      break;
    }
  for (const auto& u : window_basis_maps(C, xch, f.dom.group(), f.dom.p(), -1))
    if (!is_stably_trivial(GMap(C.omega_k(f.dom.group(), f.dom.p(), -1), f.cod, u * f.mat, false))) {
      om_side = false;
      break;
    }
  return {k_side, om_side};
}

// ---------------------------------------------------------------------------
// universal window ghosts

struct WindowStage {
  GModule cofibre;         // stripped
  FpMatrix phi;            // previous module -> cofibre
  std::size_t source_dim;  // dim of the assembled window source
};

// One cofibre stage on a projective-free module: assemble the window basis
// maps into ev : F -> cur and return the cofibre of ev together with the
// map into it.  Every map out of cur that kills the listed degrees factors
// stably through phi.
inline std::optional<WindowStage> window_ghost_stage(SyzygyCache& cache, const GModule& cur,
                                                     const std::vector<long>& degrees,
                                                     std::size_t dim_budget = 6000) {
  const GroupPtr& g = cur.group();
  const u32 p = cur.p();
  SyzygyChain xch(cur);
  SyzygyChain& kch = cache.k_chain(g, p);
  // drop degrees that repeat an earlier syzygy of k up to isomorphism
  std::vector<long> kept;
  for (long i : degrees) {
    long c = cache.canonical_degree(g, p, i);
    bool listed = false;
    for (long j : degrees) listed |= (j == c);
    if (c == i || !listed) kept.push_back(i);
  }
  struct Part {
    long degree;
    FpMatrix map;
  };
  std::vector<Part> parts;
  std::size_t fdim = 0, hulldim = 0;
  for (long i : kept) {
    auto maps = window_basis_maps(cache, xch, g, p, i);
    std::size_t hull_rank = kch.link(i - 1).free.dim();
    for (auto& u : maps) {
      fdim += u.rows();
      hulldim += hull_rank;
      parts.push_back({i, std::move(u)});
    }
  }
  if (fdim + hulldim + cur.dim() > dim_budget) return std::nullopt;
  // big = I(F) + cur, with F -> big given by (hull inclusion, ev)
  const std::size_t bigdim = hulldim + cur.dim();
  FpMatrix map_in(p, fdim, bigdim);
  std::vector<GModule> big_parts;
  std::size_t roff = 0, coff = 0;
  for (const auto& part : parts) {
    auto& link = kch.link(part.degree - 1);
    big_parts.push_back(link.free);
    for (std::size_t r = 0; r < part.map.rows(); ++r) {
      for (std::size_t c = 0; c < link.incl.cols(); ++c)
        map_in.at(roff + r, coff + c) = link.incl.at(r, c);
      for (std::size_t c = 0; c < cur.dim(); ++c)
        map_in.at(roff + r, hulldim + c) = part.map.at(r, c);
    }
    roff += part.map.rows();
    coff += link.incl.cols();
  }
  big_parts.push_back(cur);
  SumData big = direct_sum(big_parts, g, p);
  auto q = quotient_module(big.sum, map_in, false);
  FpMatrix phi0 = big.injections.back().mat * q.map.mat;  // cur -> U
  StripData s = strip_free(q.module);
  WindowStage out;
  out.cofibre = s.core;
  out.phi = phi0 * s.proj;
  out.source_dim = fdim;
  return out;
}

struct UniversalGhost {
  GModule target;
  GMap phi;
  GhostCertificate cert;
  std::size_t source_dim = 0;
};

// The windowed universal ghost out of m at the symmetric window |i| <= W.
inline UniversalGhost universal_window_ghost(SyzygyCache& cache, const GModule& m, long window,
                                             std::size_t dim_budget = 60000) {
  StripData s = strip_free(m);
  UniversalGhost out;
  out.cert = GhostCertificate::by_window(window);
  if (s.core.dim() == 0) {
    out.target = s.core;
    out.phi = GMap(m, s.core, FpMatrix(m.p(), m.dim(), 0), false);
    return out;
  }
  std::vector<long> degrees;
  for (long i = -window; i <= window; ++i) degrees.push_back(i);
  auto stage = window_ghost_stage(cache, s.core, degrees, dim_budget);
  if (!stage) throw std::runtime_error("universal window ghost exceeded the size budget");
  out.target = stage->cofibre;
  out.phi = GMap(m, stage->cofibre, s.proj * stage->phi, false);
  out.source_dim = stage->source_dim;
  return out;
}

// f factors stably through phi (both out of the same module)?
inline bool factors_stably_through(const GMap& f, const GMap& phi) {
  if (f.dom.id() != phi.dom.id()) throw std::invalid_argument("different domains");
  RowSpace span(f.dom.p(), f.dom.dim() * f.cod.dim());
  for (const auto& h : hom_space(phi.cod, f.cod))
    span.insert(vec(phi.mat * h).row_vec(0));
  for (const auto& ph : stable_hom(f.dom, f.cod).phom)
    span.insert(vec(ph.mat).row_vec(0));
  return span.contains(vec(f.mat).row_vec(0));
}

// ---------------------------------------------------------------------------
// certified length bounds

struct LengthBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::string upper_method = "socle_bound";
  std::size_t witness_length = 0;  // ghosts in the longest non-trivial composite
  GhostCertificate lower_cert;
  bool inconclusive = false;
};

struct BoundsOptions {
  bool use_socle = true;
  bool use_iteration = true;
  std::size_t dim_budget = 2500;
  // Per-stage window degrees; stage counts from 1.  The first stage sees a
  // symmetric window so that retracts of suspensions of k are recognised;
  // later stages only need to keep killing the socle and landing in the
  // radical of the suspended cells.  Any schedule yields sound upper bounds.
  std::function<std::vector<long>(std::size_t, long)> schedule =
      [](std::size_t stage, long window) {
        std::vector<long> d;
        if (stage == 1) {
          long w = std::min<long>(window, 2);
          for (long i = -w; i <= w; ++i) d.push_back(i);
        } else {
          for (long i : {-1L, 0L})
            if (-i <= window) d.push_back(i);
        }
        return d;
      };
};

inline std::size_t socle_length_upper(const GModule& m) {
  return radical_length(strip_free(m).core);
}

// smallest n <= nmax with the n-fold iterated windowed universal ghost
// composite out of m stably trivial
inline std::optional<std::size_t> universal_iteration_upper(SyzygyCache& cache,
                                                            const GModule& m, long window,
                                                            std::size_t nmax,
                                                            const BoundsOptions& opt = {}) {
  StripData s = strip_free(m);
  if (s.core.dim() == 0) return 0;
  GModule cur = s.core;
  FpMatrix comp = FpMatrix::identity(m.p(), s.core.dim());
  HullData dom_hull = injective_hull(s.core);
  for (std::size_t stage = 1; stage <= nmax; ++stage) {
    auto st = window_ghost_stage(cache, cur, opt.schedule(stage, window), opt.dim_budget);
    if (!st) return std::nullopt;  // budget: no certificate
    comp = comp * st->phi;
    cur = st->cofibre;
    if (cur.dim() == 0) return stage;
    if (is_stably_trivial(GMap(s.core, cur, comp, false), &dom_hull)) return stage;
  }
  return std::nullopt;
}

inline LengthBounds ghost_length_bounds(SyzygyCache& cache, const GModule& m, long window,
                                        std::size_t nmax,
                                        const std::vector<CertifiedGhost>& witnesses,
                                        const BoundsOptions& opt = {}) {
  LengthBounds out;
  StripData s = strip_free(m);
  if (s.core.dim() == 0) {
    out.upper_method = "zero module";
    return out;
  }
  // lower bound: longest stably non-trivial certified composite, plus one
  out.lower = 1;
  std::vector<GhostCertificate> used;
  if (!witnesses.empty()) {
    if (witnesses.front().map.dom.id() != m.id() &&
        witnesses.front().map.dom.dim() != m.dim())
      throw std::invalid_argument("witness chain must start at the module");
    FpMatrix comp = FpMatrix::identity(m.p(), m.dim());
    for (std::size_t t = 0; t < witnesses.size(); ++t) {
      if (!witnesses[t].cert.theorem_backed())
        throw std::invalid_argument("witness factors must carry theorem certificates");
      if (t > 0 && witnesses[t].map.dom.dim() != witnesses[t - 1].map.cod.dim())
        throw std::invalid_argument("witness chain does not compose");
      comp = comp * witnesses[t].map.mat;
      if (is_stably_trivial(GMap(m, witnesses[t].map.cod, comp, false))) break;
      used.push_back(witnesses[t].cert);
      out.witness_length = t + 1;
      out.lower = t + 2;
    }
  }
  out.lower_cert = GhostCertificate::composite(used);
  // upper bound
  std::size_t socle_up = radical_length(s.core);
  out.upper = socle_up;
  out.upper_method = "socle_bound";
  // the iteration can only matter strictly below the socle bound, and not
  // at all once the bounds already meet
  if (opt.use_iteration && nmax > 0 && out.upper > out.lower && socle_up > 1) {
    auto it = universal_iteration_upper(cache, m, window, std::min(nmax, socle_up - 1), opt);
    if (it && *it < out.upper) {
      out.upper = *it;
      out.upper_method =
          "universal_iteration(W=" + std::to_string(window) + ")";
    }
  }
  out.inconclusive = out.lower > out.upper;
  return out;
}

}  // namespace stmod
