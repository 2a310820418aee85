#pragma once

// String and band modules over Lambda = k<X,Y>/(X^2, Y^2), admissibility for
// the dihedral quotients kD_4q = Lambda/((XY)^q - (YX)^q), conversions to
// group modules, and the peak-splitting sequences.

#include <algorithm>
#include <optional>
#include <string>

#include "stmod/module.hpp"

namespace stmod {

enum class Letter : u8 { A, AInv, B, BInv };

inline bool is_direct(Letter l) { return l == Letter::A || l == Letter::B; }
inline bool family_a(Letter l) { return l == Letter::A || l == Letter::AInv; }
inline Letter invert(Letter l) {
  switch (l) {
    case Letter::A: return Letter::AInv;
    case Letter::AInv: return Letter::A;
    case Letter::B: return Letter::BInv;
    default: return Letter::B;
  }
}

struct Word {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator<(const Word& o) const { return letters < o.letters; }
};

// letters must alternate between the a-family and the b-family
inline bool alternating(const Word& w, bool cyclically = false) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (family_a(w.letters[i]) == family_a(w.letters[i + 1])) return false;
  if (cyclically && w.size() >= 2 &&
      family_a(w.letters.back()) == family_a(w.letters.front()))
    return false;
  return true;
}

// grammar: a, b, optionally followed by ^-1 (or -1); whitespace ignored
inline Word parse_word(const std::string& text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') { ++i; continue; }
    if (c != 'a' && c != 'b')
      throw std::invalid_argument("unexpected character in word: " + std::string(1, c));
    ++i;
    bool inv = false;
    if (i < text.size() && (text[i] == '^' || text[i] == '-')) {
      std::size_t j = (text[i] == '^') ? i + 1 : i;
      if (j + 1 < text.size() && text[j] == '-' && text[j + 1] == '1') {
        inv = true;
        i = j + 2;
      } else {
        throw std::invalid_argument("bad exponent in word");
      }
    }
    w.letters.push_back(c == 'a' ? (inv ? Letter::AInv : Letter::A)
                                 : (inv ? Letter::BInv : Letter::B));
  }
  if (!alternating(w))
    throw std::invalid_argument("letters must alternate between the a and b families");
  return w;
}

inline std::string to_string(const Word& w) {
  std::string s;
  for (Letter l : w.letters) {
    s += family_a(l) ? 'a' : 'b';
    if (!is_direct(l)) s += "^-1";
  }
  return s.empty() ? "1" : s;
}

inline Word inverse_word(const Word& w) {
  Word r;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    r.letters.push_back(invert(*it));
  return r;
}

inline Word rotate_word(const Word& w, std::size_t by) {
  Word r = w;
  std::rotate(r.letters.begin(), r.letters.begin() + by % std::max<std::size_t>(w.size(), 1),
              r.letters.end());
  return r;
}

inline Word word_power(const Word& w, std::size_t n) {
  Word r;
  for (std::size_t i = 0; i < n; ++i)
    r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
  return r;
}

inline bool is_proper_power(const Word& w) {
  for (std::size_t d = 1; d < w.size(); ++d) {
    if (w.size() % d) continue;
    Word base;
    base.letters.assign(w.letters.begin(), w.letters.begin() + d);
    if (word_power(base, w.size() / d) == w) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Lambda-matrices

struct LambdaPair {
  FpMatrix x, y;  // square, with x*x = y*y = 0
  std::size_t dim = 0;
};

// string module M(C): basis z_0 .. z_n, direct letter at position j maps
// z_j to z_{j-1}, inverse letter maps z_{j-1} to z_j
inline LambdaPair string_matrices(const Word& c, u32 p = 2) {
  if (!alternating(c)) throw std::invalid_argument("invalid word");
  const std::size_t n = c.size();
  LambdaPair out{FpMatrix(p, n + 1, n + 1), FpMatrix(p, n + 1, n + 1), n + 1};
  for (std::size_t j = 1; j <= n; ++j) {
    Letter l = c.letters[j - 1];
    FpMatrix& m = family_a(l) ? out.x : out.y;
    if (is_direct(l))
      m.at(j, j - 1) = 1;
    else
      m.at(j - 1, j) = 1;
  }
  if (!(out.x * out.x).is_zero() || !(out.y * out.y).is_zero())
    throw std::logic_error("string matrices violate the relations");
  return out;
}

struct BandDescriptor {
  Word word;      // even non-zero length, cyclically alternating, not a power
  FpMatrix phi;   // invertible
  // set when phi came from the companion constructor and its polynomial is
  // a power of an irreducible; otherwise the automorphism is trusted as is
  bool phi_certified_indecomposable = false;
};

inline BandDescriptor band_identity(const Word& w, u32 p = 2, std::size_t vdim = 1) {
  return {w, FpMatrix::identity(p, vdim), vdim == 1};
}

namespace detail {

// monic polynomials as low-to-high coefficient vectors with an implicit
// leading one; these stay tiny, so schoolbook arithmetic is fine
inline std::vector<u8> poly_mul(const std::vector<u8>& a, const std::vector<u8>& b, u32 p) {
  std::vector<u8> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<u8>((r[i + j] + a[i] * b[j]) % p);
  return r;
}

inline bool poly_is_zero(const std::vector<u8>& a) {
  for (u8 x : a)
    if (x) return false;
  return true;
}

// remainder of a by the monic divisor b (full coefficient vectors)
inline std::vector<u8> poly_rem(std::vector<u8> a, const std::vector<u8>& b, u32 p) {
  while (a.size() >= b.size()) {
    u32 lead = a.back();
    if (lead) {
      std::size_t shift = a.size() - b.size();
      u32 inv = fp_inv(static_cast<u32>(b.back()), p);
      u32 f = lead * inv % p;
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = static_cast<u8>((a[shift + i] + p - f * b[i] % p) % p);
    }
    a.pop_back();
  }
  return a;
}

// the monic polynomial is a power of a single irreducible factor
inline bool poly_is_prime_power(const std::vector<u8>& f, u32 p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  // find the smallest-degree monic divisor
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::vector<u8> q(d + 1, 0);
    q[d] = 1;
    while (true) {
      if (poly_is_zero(poly_rem(f, q, p))) {
        if (deg % d) return false;
        std::vector<u8> power{1};
        for (std::size_t i = 0; i < deg / d; ++i) power = poly_mul(power, q, p);
        return power == f;
      }
      std::size_t k = 0;
      while (k < d && q[k] == u8(p - 1)) q[k++] = 0;
      if (k == d) break;
      ++q[k];
    }
  }
  return true;  // no proper divisor: irreducible
}

}  // namespace detail

// phi as the companion matrix of the monic polynomial with the given
// low-to-high coefficients (implicit leading one); the polynomial must be a
// power of an irreducible with non-zero constant term
inline BandDescriptor band_companion(const Word& w, u32 p, const std::vector<u8>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("companion polynomial needs a degree");
  if (coeffs[0] % p == 0)
    throw std::invalid_argument("companion polynomial has zero constant term");
  std::vector<u8> f(coeffs);
  for (auto& x : f) x = static_cast<u8>(x % p);
  f.push_back(1);
  if (!detail::poly_is_prime_power(f, p))
    throw std::invalid_argument(
        "companion polynomial is not a power of an irreducible polynomial");
  const std::size_t d = coeffs.size();
  FpMatrix c(p, d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) c.at(i, i + 1) = 1;
  for (std::size_t j = 0; j < d; ++j)
    c.at(d - 1, j) = static_cast<u8>((p - coeffs[j] % p) % p);
  return {w, std::move(c), true};
}

// band module M(C, phi): blocks V_0 .. V_{n-1}, edge j between vertices j-1
// and j (mod n), carrying phi for j = 1 and the identity otherwise
inline LambdaPair band_matrices(const BandDescriptor& d) {
  const Word& c = d.word;
  const std::size_t n = c.size(), m = d.phi.rows();
  const u32 p = d.phi.p();
  if (n == 0 || n % 2) throw std::invalid_argument("band words have even non-zero length");
  if (!alternating(c, true)) throw std::invalid_argument("invalid cyclic word");
  if (is_proper_power(c)) throw std::invalid_argument("band words must not be proper powers");
  if (!inverse(d.phi)) throw std::invalid_argument("phi must be invertible");
  LambdaPair out{FpMatrix(p, n * m, n * m), FpMatrix(p, n * m, n * m), n * m};
  for (std::size_t j = 1; j <= n; ++j) {
    Letter l = c.letters[j - 1];
    FpMatrix& mat = family_a(l) ? out.x : out.y;
    std::size_t from = j % n, to = j - 1;  // direct: V_{j mod n} -> V_{j-1}
    if (!is_direct(l)) std::swap(from, to);
    const FpMatrix& block = (j == 1) ? d.phi : FpMatrix::identity(p, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t cc = 0; cc < m; ++cc)
        mat.at(from * m + r, to * m + cc) =
            static_cast<u8>((mat.at(from * m + r, to * m + cc) + block.at(r, cc)) % p);
  }
  if (!(out.x * out.x).is_zero() || !(out.y * out.y).is_zero())
    throw std::logic_error("band matrices violate the relations");
  return out;
}

// ---------------------------------------------------------------------------
// admissibility for kD_4q

namespace detail {

inline bool contains_pattern(const std::vector<Letter>& hay, const std::vector<Letter>& pat) {
  if (pat.size() > hay.size()) return false;
  for (std::size_t i = 0; i + pat.size() <= hay.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < pat.size() && ok; ++j) ok = hay[i + j] == pat[j];
    if (ok) return true;
  }
  return false;
}

inline std::vector<std::vector<Letter>> forbidden_patterns(std::size_t q) {
  std::vector<std::vector<Letter>> pats(4);
  for (std::size_t i = 0; i < q; ++i) {
    pats[0].push_back(Letter::A); pats[0].push_back(Letter::B);
    pats[1].push_back(Letter::B); pats[1].push_back(Letter::A);
    pats[2].push_back(Letter::AInv); pats[2].push_back(Letter::BInv);
    pats[3].push_back(Letter::BInv); pats[3].push_back(Letter::AInv);
  }
  return pats;
}

}  // namespace detail

// condition (a): C contains no (ab)^q, (ba)^q, or their inverses
inline bool string_admissible(const Word& c, std::size_t q) {
  for (const auto& pat : detail::forbidden_patterns(q))
    if (detail::contains_pattern(c.letters, pat)) return false;
  return true;
}

enum class Admissible { yes, no, inconclusive };

// condition (b): no power of C contains the forbidden patterns; decided by
// scanning the tripled cyclic word, which covers patterns of length <= 2|C|
inline Admissible band_admissible(const Word& c, std::size_t q) {
  Word tripled = word_power(c, 3);
  for (const auto& pat : detail::forbidden_patterns(q))
    if (detail::contains_pattern(tripled.letters, pat)) return Admissible::no;
  if (2 * q > 2 * c.size()) return Admissible::inconclusive;
  return Admissible::yes;
}

// the projective special case (c): (ab)^q (ba)^{-q} = (ab)^q (a^{-1}b^{-1})^q
inline Word projective_band_word(std::size_t q) {
  Word w;
  for (std::size_t i = 0; i < q; ++i) {
    w.letters.push_back(Letter::A);
    w.letters.push_back(Letter::B);
  }
  for (std::size_t i = 0; i < q; ++i) {
    w.letters.push_back(Letter::AInv);
    w.letters.push_back(Letter::BInv);
  }
  return w;
}

// ---------------------------------------------------------------------------
// conversion to dihedral group modules (characteristic 2): x = X + 1, y = Y + 1

inline GModule lambda_to_dihedral(const LambdaPair& mats, const GroupPtr& d4q) {
  if (mats.x.p() != 2) throw std::invalid_argument("dihedral conversion needs characteristic 2");
  FpMatrix id = FpMatrix::identity(2, mats.dim);
  // generator order: x, y
  return GModule(d4q, 2, mats.dim, {id + mats.x, id + mats.y}, true);
}

inline GModule string_module(const Word& c, const GroupPtr& d4q) {
  std::size_t q = d4q->order / 4;
  if (!string_admissible(c, q))
    throw std::invalid_argument("word violates condition (a) for this dihedral group");
  return lambda_to_dihedral(string_matrices(c, 2), d4q);
}

inline GModule band_module(const BandDescriptor& d, const GroupPtr& d4q) {
  std::size_t q = d4q->order / 4;
  if (!(d.word == projective_band_word(q))) {
    Admissible a = band_admissible(d.word, q);
    if (a == Admissible::no)
      throw std::invalid_argument("band violates condition (b) for this dihedral group");
    if (a == Admissible::inconclusive)
      throw std::invalid_argument("band admissibility inconclusive for this dihedral group");
  }
  return lambda_to_dihedral(band_matrices(d), d4q);
}

// ---------------------------------------------------------------------------
// canonical forms under the module isomorphisms M(C) = M(C^{-1}) and, for
// bands, cyclic permutation and inversion

inline Word canonical_string(const Word& c) { return std::min(c, inverse_word(c)); }

struct BandCanon {
  Word word;
  bool inverted = false;      // the canonical form uses phi^{-1}
  std::size_t rotation = 0;
};

inline BandCanon canonical_band(const Word& c) {
  BandCanon best{c, false, 0};
  for (std::size_t r = 0; r < c.size(); ++r) {
    Word w = rotate_word(c, r);
    if (w < best.word) best = {w, false, r};
    Word wi = rotate_word(inverse_word(c), r);
    if (wi < best.word) best = {wi, true, r};
  }
  return best;
}

// ---------------------------------------------------------------------------
// peak splitting: the short exact sequence M -> M' -> (sum of trivials)

struct PeakSplit {
  std::vector<Word> pieces;
  GModule total;     // M(C) or the (rotated) band module
  GModule middle;    // direct sum of the string pieces / copies of M(C)
  GModule cokernel;  // trivial action
  GMap first;
  GMap second;
  Word rotated;      // the band word actually used (bands only)
};

// break a string at every direct-then-inverse junction
inline std::vector<Word> peak_factors(const Word& c) {
  std::vector<Word> out;
  Word cur;
  for (std::size_t j = 0; j < c.size(); ++j) {
    cur.letters.push_back(c.letters[j]);
    bool brk = j + 1 < c.size() && is_direct(c.letters[j]) && !is_direct(c.letters[j + 1]);
    if (brk) {
      out.push_back(cur);
      cur = Word{};
    }
  }
  out.push_back(cur);
  return out;
}

inline PeakSplit split_peaks_string(const Word& c, const GroupPtr& d4q) {
  PeakSplit out;
  out.pieces = peak_factors(c);
  out.total = string_module(c, d4q);
  std::vector<GModule> mods;
  for (const auto& piece : out.pieces) mods.push_back(string_module(piece, d4q));
  SumData sum = direct_sum(mods, d4q, 2);
  out.middle = sum.sum;
  const std::size_t breaks = out.pieces.size() - 1;
  out.cokernel = GModule(d4q, 2, breaks,
                         std::vector<FpMatrix>(2, FpMatrix::identity(2, breaks)), false);
  // first: interior vertices copy over; each break vertex z maps to
  // (last of the left piece) - (first of the right piece)
  FpMatrix f(2, out.total.dim(), out.middle.dim());
  std::size_t piece = 0, inpiece = 0;
  std::vector<std::size_t> offs(mods.size(), 0);
  for (std::size_t t = 1; t < mods.size(); ++t) offs[t] = offs[t - 1] + mods[t - 1].dim();
  for (std::size_t v = 0; v <= c.size(); ++v) {
    bool is_break = piece + 1 < out.pieces.size() &&
                    inpiece == out.pieces[piece].size();
    if (is_break) {
      f.at(v, offs[piece] + mods[piece].dim() - 1) = 1;
      f.at(v, offs[piece + 1] + 0) = 1;  // minus sign; characteristic 2
      ++piece;
      inpiece = 1;
    } else {
      f.at(v, offs[piece] + inpiece) = 1;
      ++inpiece;
    }
  }
  // second: both break-vertex copies hit the break's trivial summand
  FpMatrix s(2, out.middle.dim(), breaks);
  for (std::size_t t = 0; t < breaks; ++t) {
    s.at(offs[t] + mods[t].dim() - 1, t) = 1;
    s.at(offs[t + 1] + 0, t) = 1;
  }
  out.first = GMap(out.total, out.middle, std::move(f));
  out.second = GMap(out.middle, out.cokernel, std::move(s));
  return out;
}

// band case: M(C, phi) -> M(C)^{dim V} -> V with trivial action on V;
// the word is rotated so that it starts with an inverse letter and ends
// with a direct letter
inline PeakSplit split_peaks_band(const BandDescriptor& d, const GroupPtr& d4q) {
  const std::size_t n = d.word.size(), m = d.phi.rows();
  std::size_t rot = n;
  for (std::size_t r = 0; r < n; ++r) {
    Word w = rotate_word(d.word, r);
    if (!is_direct(w.letters.front()) && is_direct(w.letters.back())) { rot = r; break; }
  }
  if (rot == n)
    throw std::invalid_argument("band word admits no inverse-first rotation");
  PeakSplit out;
  out.rotated = rotate_word(d.word, rot);
  out.total = band_module({out.rotated, d.phi}, d4q);
  std::vector<GModule> mods(m, string_module(out.rotated, d4q));
  SumData sum = direct_sum(mods, d4q, 2);
  out.middle = sum.sum;
  out.cokernel = GModule(d4q, 2, m, std::vector<FpMatrix>(2, FpMatrix::identity(2, m)), false);
  const std::size_t sdim = n + 1;
  // vertex 0 of the band: v_i -> sum_j phi[i][j] w_j - z_i, where w_j and
  // z_j are the first and last vertices of the j-th string copy
  FpMatrix f(2, out.total.dim(), out.middle.dim());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (d.phi.at(i, j)) f.at(0 * m + i, j * sdim + 0) = d.phi.at(i, j);
    f.at(0 * m + i, i * sdim + n) = 1;  // minus z_i, characteristic 2
    for (std::size_t v = 1; v < n; ++v) f.at(v * m + i, i * sdim + v) = 1;
  }
  FpMatrix s(2, out.middle.dim(), m);
  for (std::size_t j = 0; j < m; ++j) {
    s.at(j * sdim + 0, j) = 1;  // w_j -> v_j
    for (std::size_t i = 0; i < m; ++i)
      if (d.phi.at(j, i)) s.at(j * sdim + n, i) = d.phi.at(j, i);  // z_j -> phi(v_j)
  }
  out.first = GMap(out.total, out.middle, std::move(f));
  out.second = GMap(out.middle, out.cokernel, std::move(s));
  return out;
}

}  // namespace stmod
