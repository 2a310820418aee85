#pragma once

// Shared helpers for the test suites: seeded random modules and maps.

#include <random>

#include "stmod/homs.hpp"
#include "stmod/module.hpp"

namespace stmod::testutil {

inline FpMatrix random_rows(u32 p, std::size_t n, std::size_t cols, std::mt19937_64& rng) {
  FpMatrix m(p, n, cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = static_cast<u8>(rng() % p);
  return m;
}

// seeded random module: a quotient of a random submodule of a small free
// module, with free summands stripped
inline GModule random_module(const GroupPtr& g, u32 p, std::size_t maxdim,
                             std::mt19937_64& rng, bool projective_free = true) {
  for (int attempt = 0; attempt < 60; ++attempt) {
    GModule base = free_module(g, p, 1 + rng() % 2);
    FpMatrix seeds = random_rows(p, 1 + rng() % 3, base.dim(), rng);
    GModule sub = sub_module(base, module_closure(base, seeds), false).module;
    if (sub.dim() == 0) continue;
    FpMatrix qseeds = random_rows(p, 1 + rng() % 2, sub.dim(), rng);
    // keep the quotient proper: push the seeds into the radical
    FpMatrix rad = radical(sub);
    if (rad.rows() > 0) {
      FpMatrix combo =
          random_rows(p, std::min<std::size_t>(2, rad.rows()), rad.rows(), rng) * rad;
      GModule q = quotient_module(sub, module_closure(sub, combo), false).module;
      GModule m = projective_free ? strip_free(q).core : q;
      if (m.dim() > 0 && m.dim() <= maxdim) return m;
    } else if (sub.dim() <= maxdim && sub.dim() > 0) {
      return sub;
    }
  }
  return trivial_module(g, p);  // deterministic fallback
}

inline FpMatrix random_hom(const std::vector<FpMatrix>& basis, u32 p,
                           std::mt19937_64& rng) {
  FpMatrix m(p, basis[0].rows(), basis[0].cols());
  for (const auto& b : basis) {
    u32 c = static_cast<u32>(rng() % p);
    if (c) m = m + b.scaled(c);
  }
  return m;
}

}  // namespace stmod::testutil
