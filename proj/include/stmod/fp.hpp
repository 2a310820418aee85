#pragma once

// Dense exact linear algebra over a prime field F_p.
//
// Row-vector convention throughout the library: vectors are rows, matrices
// act on the right (v -> v*M), the kernel of M is { v : v*M = 0 }, and the
// composite "f then g" of two maps has matrix F*G.

#include <cassert>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace stmod {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u32 fp_inv(u32 a, u32 p) {
  u32 r = 1, b = a % p, e = p - 2;
  for (; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

inline bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u32 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class FpMatrix {
 public:
  FpMatrix() : p_(2), rows_(0), cols_(0) {}
  FpMatrix(u32 p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    assert(is_prime(p));
  }
  FpMatrix(u32 p, std::size_t rows, std::size_t cols,
           std::initializer_list<int> vals)
      : FpMatrix(p, rows, cols) {
    assert(vals.size() == rows * cols);
    std::size_t i = 0;
    for (int v : vals) a_[i++] = static_cast<u8>(((v % int(p)) + int(p)) % int(p));
  }

  static FpMatrix identity(u32 p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  u32 p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  u8& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  u8 at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const u8* row(std::size_t i) const { return a_.data() + i * cols_; }
  u8* row(std::size_t i) { return a_.data() + i * cols_; }

  std::vector<u8> row_vec(std::size_t i) const {
    return std::vector<u8>(row(i), row(i) + cols_);
  }
  void set_row(std::size_t i, const std::vector<u8>& v) {
    assert(v.size() == cols_);
    std::copy(v.begin(), v.end(), row(i));
  }

  bool is_zero() const {
    for (u8 x : a_)
      if (x) return false;
    return true;
  }

  bool operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const FpMatrix& o) const { return !(*this == o); }

  FpMatrix operator+(const FpMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
    FpMatrix r(p_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
      r.a_[i] = static_cast<u8>((a_[i] + o.a_[i]) % p_);
    return r;
  }
  FpMatrix operator-(const FpMatrix& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
    FpMatrix r(p_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
      r.a_[i] = static_cast<u8>((a_[i] + p_ - o.a_[i]) % p_);
    return r;
  }
  FpMatrix operator*(const FpMatrix& o) const {
    assert(cols_ == o.rows_ && p_ == o.p_);
    FpMatrix r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        u32 aik = at(i, k);
        if (!aik) continue;
        const u8* orow = o.row(k);
        u8* rrow = r.row(i);
        for (std::size_t j = 0; j < o.cols_; ++j)
          rrow[j] = static_cast<u8>((rrow[j] + aik * orow[j]) % p_);
      }
    }
    return r;
  }
  FpMatrix scaled(u32 c) const {
    FpMatrix r(p_, rows_, cols_);
    c %= p_;
    for (std::size_t i = 0; i < a_.size(); ++i)
      r.a_[i] = static_cast<u8>(a_[i] * c % p_);
    return r;
  }

  FpMatrix transpose() const {
    FpMatrix r(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  // v -> v*M for a single row vector.
  std::vector<u8> apply(const std::vector<u8>& v) const {
    assert(v.size() == rows_);
    std::vector<u8> r(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      u32 vi = v[i];
      if (!vi) continue;
      const u8* mrow = row(i);
      for (std::size_t j = 0; j < cols_; ++j)
        r[j] = static_cast<u8>((r[j] + vi * mrow[j]) % p_);
    }
    return r;
  }

  static FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
    assert(a.cols() == b.cols() && a.p() == b.p());
    FpMatrix r(a.p(), a.rows() + b.rows(), a.cols());
    std::copy(a.a_.begin(), a.a_.end(), r.a_.begin());
    std::copy(b.a_.begin(), b.a_.end(), r.a_.begin() + a.a_.size());
    return r;
  }
  static FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
    assert(a.rows() == b.rows() && a.p() == b.p());
    FpMatrix r(a.p(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::copy(a.row(i), a.row(i) + a.cols(), r.row(i));
      std::copy(b.row(i), b.row(i) + b.cols(), r.row(i) + a.cols());
    }
    return r;
  }

  static FpMatrix kron(const FpMatrix& a, const FpMatrix& b) {
    FpMatrix r(a.p(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
      for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
        u32 c = a.at(i1, j1);
        if (!c) continue;
        for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
          for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
            r.at(i1 * b.rows() + i2, j1 * b.cols() + j2) =
                static_cast<u8>(c * b.at(i2, j2) % a.p());
      }
    return r;
  }

  FpMatrix sub_rows(const std::vector<std::size_t>& idx) const {
    FpMatrix r(p_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      std::copy(row(idx[i]), row(idx[i]) + cols_, r.row(i));
    return r;
  }
  FpMatrix sub_cols(const std::vector<std::size_t>& idx) const {
    FpMatrix r(p_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, j) = at(i, idx[j]);
    return r;
  }

 private:
  u32 p_;
  std::size_t rows_, cols_;
  std::vector<u8> a_;
};

struct RrefResult {
  FpMatrix reduced;              // E * input, in reduced row echelon form
  FpMatrix transform;            // the invertible E
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

inline RrefResult rref_with_transform(const FpMatrix& m) {
  const u32 p = m.p();
  RrefResult res{m, FpMatrix::identity(p, m.rows()), {}, 0};
  FpMatrix& r = res.reduced;
  FpMatrix& e = res.transform;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t piv = lead;
    while (piv < m.rows() && r.at(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != lead) {
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(piv, j), r.at(lead, j));
      for (std::size_t j = 0; j < e.cols(); ++j) std::swap(e.at(piv, j), e.at(lead, j));
    }
    u32 inv = fp_inv(r.at(lead, col), p);
    if (inv != 1) {
      for (std::size_t j = col; j < r.cols(); ++j)
        r.at(lead, j) = static_cast<u8>(r.at(lead, j) * inv % p);
      for (std::size_t j = 0; j < e.cols(); ++j)
        e.at(lead, j) = static_cast<u8>(e.at(lead, j) * inv % p);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead) continue;
      u32 f = r.at(i, col);
      if (!f) continue;
      u32 nf = p - f;
      const u8* rl = r.row(lead);
      u8* ri = r.row(i);
      for (std::size_t j = col; j < r.cols(); ++j)
        ri[j] = static_cast<u8>((ri[j] + nf * rl[j]) % p);
      const u8* el = e.row(lead);
      u8* ei = e.row(i);
      for (std::size_t j = 0; j < e.cols(); ++j)
        ei[j] = static_cast<u8>((ei[j] + nf * el[j]) % p);
    }
    res.pivots.push_back(col);
    ++lead;
  }
  res.rank = res.pivots.size();
  return res;
}

// Plain RREF without the transform bookkeeping (faster inner loop).
inline FpMatrix rref(const FpMatrix& m, std::vector<std::size_t>* pivots = nullptr) {
  const u32 p = m.p();
  FpMatrix r = m;
  std::vector<std::size_t> piv;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
    std::size_t pr = lead;
    while (pr < m.rows() && r.at(pr, col) == 0) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(pr, j), r.at(lead, j));
    u32 inv = fp_inv(r.at(lead, col), p);
    if (inv != 1)
      for (std::size_t j = col; j < r.cols(); ++j)
        r.at(lead, j) = static_cast<u8>(r.at(lead, j) * inv % p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead) continue;
      u32 f = r.at(i, col);
      if (!f) continue;
      u32 nf = p - f;
      const u8* rl = r.row(lead);
      u8* ri = r.row(i);
      for (std::size_t j = col; j < r.cols(); ++j)
        ri[j] = static_cast<u8>((ri[j] + nf * rl[j]) % p);
    }
    piv.push_back(col);
    ++lead;
  }
  if (pivots) *pivots = piv;
  return r;
}

inline std::size_t rank(const FpMatrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

// Basis of { v : v * m = 0 }, one row per basis vector.
inline FpMatrix kernel_basis(const FpMatrix& m) {
  RrefResult r = rref_with_transform(m);
  FpMatrix k(m.p(), m.rows() - r.rank, m.rows());
  for (std::size_t i = r.rank; i < m.rows(); ++i)
    std::copy(r.transform.row(i), r.transform.row(i) + m.rows(), k.row(i - r.rank));
  return k;
}

// Solves x * a = b row by row; returns any solution, or nothing.
inline std::optional<FpMatrix> solve(const RrefResult& ra, const FpMatrix& a,
                                     const FpMatrix& b) {
  assert(a.cols() == b.cols());
  const u32 p = a.p();
  FpMatrix x(p, b.rows(), a.rows());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    std::vector<u8> y(a.rows(), 0);
    for (std::size_t i = 0; i < ra.rank; ++i) y[i] = b.at(r, ra.pivots[i]);
    // check y * reduced == b_row
    std::vector<u8> chk(a.cols(), 0);
    for (std::size_t i = 0; i < ra.rank; ++i) {
      u32 yi = y[i];
      if (!yi) continue;
      const u8* rr = ra.reduced.row(i);
      for (std::size_t j = 0; j < a.cols(); ++j)
        chk[j] = static_cast<u8>((chk[j] + yi * rr[j]) % p);
    }
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (chk[j] != b.at(r, j)) return std::nullopt;
    x.set_row(r, ra.transform.apply(y));  // x = y * E, so x*a = y*E*a = y*R

  }
  return x;
}

inline std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b) {
  return solve(rref_with_transform(a), a, b);
}

inline std::optional<FpMatrix> inverse(const FpMatrix& m) {
  assert(m.rows() == m.cols());
  RrefResult r = rref_with_transform(m);
  if (r.rank != m.rows()) return std::nullopt;
  return r.transform;
}

// Incrementally maintained row space in reduced echelon form.
class RowSpace {
 public:
  RowSpace(u32 p, std::size_t cols) : p_(p), cols_(cols) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  // Returns true if the vector enlarged the span.
  bool insert(std::vector<u8> v) {
    reduce(v);
    std::size_t piv = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j]) { piv = j; break; }
    if (piv == cols_) return false;
    u32 inv = fp_inv(v[piv], p_);
    if (inv != 1)
      for (std::size_t j = piv; j < cols_; ++j) v[j] = static_cast<u8>(v[j] * inv % p_);
    for (auto& row : rows_) {
      u32 f = row.second[piv];
      if (!f) continue;
      u32 nf = p_ - f;
      for (std::size_t j = piv; j < cols_; ++j)
        row.second[j] = static_cast<u8>((row.second[j] + nf * v[j]) % p_);
    }
    auto it = rows_.begin();
    while (it != rows_.end() && it->first < piv) ++it;
    rows_.insert(it, {piv, std::move(v)});
    return true;
  }

  bool insert_rows(const FpMatrix& m) {
    bool grew = false;
    for (std::size_t i = 0; i < m.rows(); ++i)
      grew |= insert(m.row_vec(i));
    return grew;
  }

  bool contains(std::vector<u8> v) const {
    reduce(v);
    for (u8 x : v)
      if (x) return false;
    return true;
  }

  bool contains_rows(const FpMatrix& m) const {
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!contains(m.row_vec(i))) return false;
    return true;
  }

  FpMatrix basis() const {
    FpMatrix b(p_, rows_.size(), cols_);
    std::size_t i = 0;
    for (const auto& row : rows_) b.set_row(i++, row.second);
    return b;
  }

 private:
  void reduce(std::vector<u8>& v) const {
    for (const auto& row : rows_) {
      u32 f = v[row.first];
      if (!f) continue;
      u32 nf = p_ - f;
      for (std::size_t j = row.first; j < cols_; ++j)
        v[j] = static_cast<u8>((v[j] + nf * row.second[j]) % p_);
    }
  }

  u32 p_;
  std::size_t cols_;
  std::vector<std::pair<std::size_t, std::vector<u8>>> rows_;  // (pivot, row)
};

inline std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
  os << m.rows() << "x" << m.cols() << " mod " << m.p() << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << int(m.at(i, j)) << ' ';
    os << '\n';
  }
  return os;
}

}  // namespace stmod
