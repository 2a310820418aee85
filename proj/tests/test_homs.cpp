#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "stmod/ghosts.hpp"
#include "test_util.hpp"

using namespace stmod;

TEST_CASE("hom space dimensions") {
  auto c4 = make_cyclic(4);
  auto k = trivial_module(c4, 2);
  auto r = regular_module(c4, 2);
  CHECK(hom_space(k, k).size() == 1);
  CHECK(hom_space(k, r).size() == 1);  // soc(kG) is simple
  // a map from the free module of rank one is its generator image
  CHECK(hom_space(r, r).size() == 4);
  // every computed hom is equivariant
  for (const auto& h : hom_space(r, cyclic_quotient_module(c4, 2, 2)))
    CHECK_NOTHROW(GMap(r, cyclic_quotient_module(c4, 2, 2), h));
}

TEST_CASE("isomorphism testing") {
  auto v = make_product(make_cyclic(2), make_cyclic(2));
  auto k = trivial_module(v, 2);
  auto r = regular_module(v, 2);
  CHECK(is_isomorphic(k, k));
  CHECK(is_isomorphic(r, dual(r)));       // kG is symmetric
  CHECK(!is_isomorphic(k, omega(k, 1)));  // dimension mismatch
  auto m = omega(k, 1);
  CHECK(is_isomorphic(tensor(k, m), m));  // tensor unit

  // dual of dual is the identity on the nose, so certainly isomorphic
  CHECK(is_isomorphic(dual(dual(m)), m));
}

TEST_CASE("decompose") {
  auto c3 = make_cyclic(3);
  auto k = trivial_module(c3, 3);
  auto s = direct_sum({k, k});
  auto d = decompose(s.sum);
  CHECK(d.pieces.size() == 2);
  CHECK(d.certified);
  for (const auto& pc : d.pieces) CHECK(is_isomorphic(pc.part, k));

  // restriction of the regular module of C_3 x C_3 to the diagonal C_3:
  // three copies of kC_3
  auto g33 = make_product(make_cyclic(3), make_cyclic(3));
  auto diag = subgroup(g33, {g33->op(g33->generator("g1"), g33->generator("g2"))});
  auto res = restrict_to(regular_module(g33, 3), diag);
  auto dr = decompose(res);
  CHECK(dr.pieces.size() == 3);
  std::size_t total = 0;
  for (const auto& pc : dr.pieces) {
    total += pc.part.dim();
    CHECK(is_isomorphic(pc.part, regular_module(diag.sub, 3)));
  }
  CHECK(total == res.dim());

  // induced-then-restricted modules contain the original as a summand
  auto f1 = subgroup(g33, {g33->generator("g1")});
  auto m1 = cyclic_quotient_module(f1.sub, 3, 1);
  auto updown = induce(m1, f1).induced_restricted;
  auto du = decompose(updown);
  bool contains = false;
  for (const auto& pc : du.pieces) contains |= is_isomorphic(pc.part, m1);
  CHECK(contains);

  // local spot check: sampled endomorphisms of certified pieces are
  // nilpotent or invertible
  std::mt19937_64 rng(31);
  auto c9 = make_cyclic(9);
  for (std::size_t n : {std::size_t(3), std::size_t(5)}) {
    auto mn = cyclic_quotient_module(c9, 3, n);
    auto dm = decompose(mn);
    REQUIRE(dm.pieces.size() == 1);
    CHECK(dm.certified);
    auto ends = end_space(mn);
    for (int t = 0; t < 20; ++t) {
      FpMatrix e = testutil::random_hom(ends, 3, rng);
      bool invertible = rank(e) == mn.dim();
      bool nilpotent = detail::matrix_power(e, 8).is_zero();
      CHECK((invertible || nilpotent));
    }
  }
}

TEST_CASE("stable hom dimensions shift with omega") {
  SyzygyCache cache;
  auto v = make_product(make_cyclic(2), make_cyclic(2));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 3; ++t) {
    auto m = testutil::random_module(v, 2, 6, rng);
    auto om = omega(m, 1);
    for (long i = -1; i <= 1; ++i) {
      std::size_t a = stable_hom(cache.omega_k(v, 2, i), m).dim;
      std::size_t b = stable_hom(cache.omega_k(v, 2, i + 1), om).dim;
      CHECK(a == b);
    }
  }
}
