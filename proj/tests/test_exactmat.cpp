#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "hlat/errors.hpp"
#include "hlat/exactmat.hpp"
#include "hlat/families.hpp"
#include "oracle.hpp"

using namespace hlat;

TEST_SUITE("exactmat") {

TEST_CASE("construction rejects bad shapes") {
  CHECK_THROWS_AS(IntSymMatrix(0), InvalidArgument);
  CHECK_THROWS_AS(IntSymMatrix::from_rows({{1, 2}, {3, 4}}), InvalidArgument);
  CHECK_THROWS_AS(IntSymMatrix::from_rows({{1, 2}, {2}}), InvalidArgument);
  IntSymMatrix m(3);
  m.set(0, 2, 5);
  CHECK(m(2, 0) == 5);
}

TEST_CASE("identity is PSD with unit pivots") {
  const auto v = psd_check(IntSymMatrix::identity(3));
  CHECK(v.is_psd);
  CHECK_FALSE(v.is_singular);
  REQUIRE(v.pivot_trace.size() == 3);
  for (const auto& p : v.pivot_trace) CHECK(p == 1);
  CHECK_FALSE(v.failure_index.has_value());
}

TEST_CASE("K~24 fails at shift 3") {
  const auto v = psd_check(k2m_tilde(12).adjacency(), 3);
  CHECK_FALSE(v.is_psd);
  CHECK(v.failure_index.has_value());
  CHECK_FALSE(oracle::psd(k2m_tilde(12).adjacency(), 3));
}

TEST_CASE("E6~ at shift 2 is PSD and singular, matching the characteristic polynomial") {
  const IntSymMatrix a = e6_tilde().adjacency();
  const auto v = psd_check(a, 2);
  CHECK(v.is_psd);
  CHECK(v.is_singular);
  CHECK(oracle::is_eigenvalue(a, -2));
  CHECK(oracle::roots_below(oracle::charpoly(a), -2) == 0);
  for (const auto& p : v.pivot_trace) CHECK(p >= 0);
}

TEST_CASE("zero pivot with a nonzero residual row is not PSD") {
  const auto v = psd_check(IntSymMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK_FALSE(v.is_psd);
  REQUIRE(v.failure_index.has_value());
  CHECK(*v.failure_index == 0);
  const auto z = psd_check(IntSymMatrix::from_rows({{0, 0}, {0, 1}}));
  CHECK(z.is_psd);
  CHECK(z.is_singular);
}

TEST_CASE("psd_check agrees with Sturm counting on random matrices and shifts") {
  std::mt19937_64 rng(11);
  int disagreements = 0;
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 1 + rng() % 8;
    const IntSymMatrix m = testing::random_symmetric(rng, n, -3, 3, -3, 3);
    for (int num = -12; num <= 12; num += 3) {
      const Rational t(num, 2);
      disagreements += psd_check(m, t).is_psd != oracle::psd(m, t);
    }
    // integer shifts hit eigenvalues exactly more often
    for (long t = -2; t <= 6; ++t) disagreements += psd_check(m, t).is_psd != oracle::psd(m, t);
  }
  CHECK(disagreements == 0);
}

TEST_CASE("large entries take the arbitrary-precision path") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 20; ++it) {
    IntSymMatrix m = testing::random_symmetric(rng, 6, -5, 5, -5, 5);
    const BigInt big("1000000000000000000000");
    m.set(0, 0, m(0, 0) * big);
    m.set(1, 2, m(1, 2) * big);
    if (m(0, 0) != 0) CHECK_FALSE(m.fits_int64());
    const Rational t = big;
    CHECK(psd_check(m, t).is_psd == oracle::psd(m, t));
  }
}

TEST_CASE("PSD is monotone in the shift") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 60; ++it) {
    const IntSymMatrix m = testing::random_symmetric(rng, 1 + rng() % 7, -2, 2, -2, 1);
    bool seen = false;
    for (int k = -8; k <= 16; ++k) {
      const bool p = psd_check(m, Rational(k, 2)).is_psd;
      if (seen) CHECK(p);
      seen = seen || p;
    }
  }
}

TEST_CASE("principal submatrices inherit PSD") {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 80; ++it) {
    const std::size_t n = 2 + rng() % 7;
    const IntSymMatrix m = testing::random_symmetric(rng, n, -2, 2, -2, 2);
    const long t = static_cast<long>(rng() % 5);
    if (!psd_check(m, t).is_psd) continue;
    const auto idx = testing::random_subset(rng, n);
    CHECK(psd_check_principal(m, idx, t).is_psd);
    CHECK(psd_check(m.principal(idx), t).is_psd);
  }
}

TEST_CASE("lambda_min_bracket examples") {
  SUBCASE("1x1") {
    const auto b = lambda_min_bracket(IntSymMatrix::from_rows({{-3}}), Rational(1, 100));
    CHECK(b.lo <= -3);
    CHECK(b.hi > -3);
    CHECK(b.hi - b.lo <= Rational(1, 100));
  }
  SUBCASE("K~24 lies below -3") {
    const auto b = lambda_min_bracket(k2m_tilde(12).adjacency(), Rational(1, 1000));
    CHECK(b.hi < -3);
  }
  SUBCASE("path on two vertices") {
    const auto b = lambda_min_bracket(path_graph(2).adjacency(), Rational(1, 64));
    CHECK(b.lo <= -1);
    CHECK(b.hi > -1);
  }
}

TEST_CASE("brackets re-check against their defining PSD pair") {
  std::mt19937_64 rng(15);
  for (int it = 0; it < 40; ++it) {
    const IntSymMatrix m = testing::random_symmetric(rng, 1 + rng() % 6, -3, 3, -3, 3);
    const Rational w(1, 1 << (rng() % 10));
    const auto b = lambda_min_bracket(m, w);
    CHECK(b.hi - b.lo <= w);
    CHECK(psd_check(m, -b.lo).is_psd);
    CHECK_FALSE(psd_check(m, -b.hi).is_psd);
    const double l = oracle::lambda_min(m);
    CHECK(b.lo.get_d() <= l + 1e-9);
    CHECK(b.hi.get_d() >= l - 1e-9);
  }
}

TEST_CASE("Gershgorin bounds contain the spectrum") {
  std::mt19937_64 rng(16);
  for (int it = 0; it < 30; ++it) {
    const IntSymMatrix m = testing::random_symmetric(rng, 1 + rng() % 6, -4, 4, -4, 4);
    const auto [lo, hi] = gershgorin_bounds(m);
    CHECK(oracle::psd(m, Rational(-lo)));
    CHECK(oracle::psd(m.scaled(-1), Rational(hi)));
  }
}

TEST_CASE("integer_rowspace_basis examples") {
  using V = std::vector<IntVector>;
  SUBCASE("index-2 sublattice") {
    const V rows{{2, 0}, {0, 2}, {1, 1}};
    const V b = integer_rowspace_basis(rows);
    REQUIRE(b.size() == 2);
    CHECK(abs(determinant(b)) == 2);
    // membership by residues mod 2: (x, y) is in the lattice iff x = y mod 2
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const bool in_span = x == y;
        // solve c * B = (x, y) over the rationals and test integrality
        RatMatrix bt{{b[0][0], b[1][0]}, {b[0][1], b[1][1]}};
        const auto c = solve_rational(bt, {x, y});
        const bool integral = c[0].get_den() == 1 && c[1].get_den() == 1;
        CHECK(integral == in_span);
      }
  }
  SUBCASE("unit basis is already canonical") {
    const V rows{{1, 0}, {0, 1}};
    CHECK(integer_rowspace_basis(rows) == rows);
  }
  SUBCASE("rank one") {
    const V b = integer_rowspace_basis({{2, 2}, {4, 4}});
    REQUIRE(b.size() == 1);
    CHECK(b[0] == IntVector{2, 2});
  }
  SUBCASE("empty input") { CHECK(integer_rowspace_basis({}).empty()); }
}

TEST_CASE("HNF keeps the lattice: every input row is an integer combination") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 30; ++it) {
    const std::size_t k = 1 + rng() % 5, d = 1 + rng() % 4;
    std::vector<IntVector> rows(k, IntVector(d));
    for (auto& r : rows)
      for (auto& x : r) x = static_cast<long>(rng() % 9) - 4;
    const auto b = integer_rowspace_basis(rows);
    // the HNF of rows + basis equals the HNF of the basis alone
    auto both = rows;
    both.insert(both.end(), b.begin(), b.end());
    CHECK(integer_rowspace_basis(both) == b);
    CHECK(integer_rowspace_basis(b) == b);
  }
}

TEST_CASE("determinant and rank match the characteristic polynomial") {
  std::mt19937_64 rng(18);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 1 + rng() % 7;
    const IntSymMatrix m = testing::random_symmetric(rng, n, -3, 3, -3, 3);
    const auto p = oracle::charpoly(m);
    const Rational det = (n % 2 ? -1 : 1) * p[0];
    CHECK(Rational(determinant(m)) == det);
    std::size_t zero_mult = 0;
    while (zero_mult < p.size() && p[zero_mult] == 0) ++zero_mult;
    CHECK(rank(m) == n - zero_mult);  // symmetric: algebraic = geometric multiplicity
  }
}

TEST_CASE("solve_rational") {
  RatMatrix a{{2, 1}, {1, 3}};
  const auto x = solve_rational(a, {3, 5});
  CHECK(x[0] == Rational(4, 5));
  CHECK(x[1] == Rational(7, 5));
  CHECK_THROWS_AS(solve_rational({{1, 2}, {2, 4}}, {1, 1}), InvalidArgument);
}

TEST_CASE("independent generators of a Gram matrix") {
  const IntSymMatrix g = IntSymMatrix::from_rows({{2, -1, 1}, {-1, 2, 1}, {1, 1, 2}});  // third = first + second
  const auto idx = independent_generators(g);
  CHECK(idx == std::vector<std::size_t>{0, 1});
}

}  // TEST_SUITE
