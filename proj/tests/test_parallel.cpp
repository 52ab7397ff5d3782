#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "hlat/families.hpp"
#include "hlat/forbidden.hpp"
#include "hlat/lattice.hpp"
#include "hlat/spectra.hpp"

using namespace hlat;

TEST_SUITE("parallel") {

TEST_CASE("submatrix witness: threads agree with the serial search") {
  std::mt19937_64 rng(91);
  for (int it = 0; it < 60; ++it) {
    const IntSymMatrix m = testing::random_symmetric(rng, 4 + rng() % 10, -1, 1, -1, 0);
    const auto ref = reference::small_submatrix_witness(m);
    for (int jobs : {1, 2, 4}) CHECK(small_submatrix_witness(m, 10, jobs) == ref);
  }
  const IntSymMatrix star = claw_graph(12).adjacency();
  CHECK(small_submatrix_witness(star, 10, 4) == reference::small_submatrix_witness(star));
}

TEST_CASE("enumeration: threads agree with the serial enumeration") {
  const auto ref = reference::enumerate_mhat(4);
  for (int jobs : {1, 4}) {
    const auto par = enumerate_mhat(4, jobs);
    CHECK(par.candidates == ref.candidates);
    CHECK(par.frontier_sizes == ref.frontier_sizes);
  }
}

TEST_CASE("decomposition: threads agree with the serial search") {
  std::mt19937_64 rng(92);
  const auto check = [](const IntSymMatrix& b, std::size_t s, DecomposeOptions o) {
    const GramLattice lat(b);
    const auto ref = reference::decompose_generic(lat, s, o);
    o.jobs = 4;
    const auto par = decompose_generic(lat, s, o);
    CHECK(par.status == ref.status);
    CHECK(par.dimension_complete == ref.dimension_complete);
    if (par.decomposition && ref.decomposition) CHECK(par.decomposition->columns() == ref.decomposition->columns());
  };
  DecomposeOptions o;
  o.dimension = 14;
  check(e6_tilde().adjacency().plus_identity(2), 1, o);
  check(e6_tilde().adjacency().plus_identity(2), 2, DecomposeOptions{});
  check(petersen_graph().adjacency().plus_identity(2), 2, DecomposeOptions{});
  for (int it = 0; it < 10; ++it) {
    const Graph g = random_graph(4 + rng() % 4, 0.5, rng());
    const IntSymMatrix b = g.adjacency().plus_identity(2);
    if (!psd_check(b).is_psd) continue;
    check(b, 1, DecomposeOptions{});
  }
}

}  // TEST_SUITE
