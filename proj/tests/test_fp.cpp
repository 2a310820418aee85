#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "stmod/fp.hpp"

using namespace stmod;

namespace {

FpMatrix random_matrix(u32 p, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  FpMatrix m(p, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<u8>(rng() % p);
  return m;
}

// enumeration oracle: size of the row span of m is p^rank
std::size_t span_size(const FpMatrix& m) {
  std::set<std::vector<u8>> span;
  std::vector<u8> coeff(m.rows(), 0);
  const u32 p = m.p();
  while (true) {
    std::vector<u8> v(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        v[j] = static_cast<u8>((v[j] + coeff[i] * m.at(i, j)) % p);
    span.insert(v);
    std::size_t k = 0;
    while (k < coeff.size() && coeff[k] == u8(p - 1)) coeff[k++] = 0;
    if (k == coeff.size()) break;
    ++coeff[k];
  }
  return span.size();
}

}  // namespace

TEST_CASE("rref basics") {
  FpMatrix empty(2, 0, 0);
  auto r = rref_with_transform(empty);
  CHECK(r.rank == 0);

  auto id = FpMatrix::identity(2, 3);
  auto r3 = rref_with_transform(id);
  CHECK(r3.rank == 3);
  CHECK(r3.pivots == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("rref rank agrees with the enumeration oracle") {
  // the 2x2 matrix [[1,2],[2,1]] over F_3 has determinant 1*1 - 2*2 = -3 = 0,
  // so the enumeration oracle yields a span of size 3 = 3^1
  FpMatrix m(3, 2, 2, {1, 2, 2, 1});
  std::size_t sz = span_size(m);
  REQUIRE(sz == 3);
  CHECK(rank(m) == 1);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    u32 p = (t % 2) ? 2 : 3;
    auto a = random_matrix(p, 1 + rng() % 4, 1 + rng() % 4, rng);
    std::size_t want = span_size(a), got = 1;
    for (std::size_t i = 0; i < rank(a); ++i) got *= p;
    CHECK(got == want);
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(FpMatrix::identity(2, 4)).rows() == 0);
  CHECK(kernel_basis(FpMatrix(2, 2, 3)).rows() == 2);

  FpMatrix m(2, 2, 2, {1, 1, 1, 1});
  auto k = kernel_basis(m);
  REQUIRE(k.rows() == 1);
  // oracle: of the four vectors over F_2^2, exactly (0,0) and (1,1) annihilate m
  CHECK(k.at(0, 0) == 1);
  CHECK(k.at(0, 1) == 1);
  CHECK((k * m).is_zero());
}

TEST_CASE("solve") {
  FpMatrix b(3, 2, 2, {1, 2, 0, 1});
  auto x = solve(FpMatrix::identity(3, 2), b);
  REQUIRE(x);
  CHECK(*x == b);

  FpMatrix z(2, 1, 1);
  auto xz = solve(z, z);
  REQUIRE(xz);
  CHECK((*xz * z) == z);

  FpMatrix a(2, 1, 2, {1, 0});
  FpMatrix bb(2, 1, 2, {0, 1});
  CHECK(!solve(a, bb));  // oracle: x in {0,1} gives x*a = (x,0) != (0,1)
}

TEST_CASE("rank-nullity and solve consistency on random matrices") {
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 200; ++t) {
    u32 p = (t % 2) ? 2 : 3;
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    auto m = random_matrix(p, r, c, rng);
    auto k = kernel_basis(m);
    CHECK(rank(m) + k.rows() == r);
    CHECK((k.rows() == 0 || (k * m).is_zero()));

    auto b = random_matrix(p, 1 + rng() % 3, c, rng);
    auto x = solve(m, b);
    if (x) CHECK((*x * m) == b);
  }
  // absence is certified by exhaustion at tiny sizes
  std::mt19937_64 rng2(99);
  for (int t = 0; t < 60; ++t) {
    u32 p = (t % 2) ? 2 : 3;
    std::size_t r = 1 + rng2() % 3, c = 1 + rng2() % 3;
    auto a = random_matrix(p, r, c, rng2);
    auto b = random_matrix(p, 1, c, rng2);
    auto x = solve(a, b);
    bool found = false;
    std::vector<u8> coeff(r, 0);
    while (true) {
      std::vector<u8> v(c, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          v[j] = static_cast<u8>((v[j] + coeff[i] * a.at(i, j)) % p);
      if (v == b.row_vec(0)) { found = true; break; }
      std::size_t k = 0;
      while (k < coeff.size() && coeff[k] == u8(p - 1)) coeff[k++] = 0;
      if (k == coeff.size()) break;
      ++coeff[k];
    }
    CHECK(bool(x) == found);
  }
}

TEST_CASE("matrix helpers") {
  FpMatrix a(3, 1, 2, {1, 2});
  FpMatrix b(3, 2, 1, {1, 1});
  CHECK((a * b).at(0, 0) == 0);
  CHECK(FpMatrix::kron(FpMatrix::identity(3, 2), a).rows() == 2);
  auto inv = inverse(FpMatrix(5, 2, 2, {1, 2, 3, 4}));
  REQUIRE(inv);
  CHECK((*inv * FpMatrix(5, 2, 2, {1, 2, 3, 4})) == FpMatrix::identity(5, 2));

  RowSpace rs(2, 3);
  CHECK(rs.insert({1, 1, 0}));
  CHECK(rs.insert({0, 1, 1}));
  CHECK(!rs.insert({1, 0, 1}));
  CHECK(rs.dim() == 2);
  CHECK(rs.contains({1, 0, 1}));
  CHECK(!rs.contains({1, 0, 0}));
}
