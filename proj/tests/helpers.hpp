#pragma once

#include <random>
#include <vector>

#include "hlat/exactmat.hpp"
#include "hlat/hoffman.hpp"

namespace testing {

inline hlat::IntSymMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, long lo, long hi,
                                           long dlo, long dhi) {
  hlat::IntSymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const long a = i == j ? dlo : lo, b = i == j ? dhi : hi;
      m.set(i, j, a + static_cast<long>(rng() % static_cast<unsigned long>(b - a + 1)));
    }
  return m;
}

inline std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < n; ++i)
    if (rng() % 2) s.push_back(i);
  if (s.empty()) s.push_back(rng() % n);
  return s;
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// One slim vertex (id 0) with `fats` private fat neighbours.
inline hlat::HoffmanGraph slim_with_fats(std::size_t fats) {
  std::vector<std::vector<std::size_t>> f(fats, std::vector<std::size_t>{0});
  return hlat::HoffmanGraph::from_slim_and_fat(hlat::Graph(1), f);
}

}  // namespace testing
