#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "hlat/errors.hpp"
#include "hlat/families.hpp"
#include "hlat/spectra.hpp"
#include "oracle.hpp"

using namespace hlat;

namespace {

Partition split(std::size_t n, std::vector<std::size_t> second) {
  Partition p;
  p.second = second;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(second.begin(), second.end(), i) == second.end()) p.first.push_back(i);
  return p;
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("float spectrum examples") {
  const auto id = float_spectrum(IntSymMatrix::identity(2));
  CHECK(id[0] == doctest::Approx(1.0));
  CHECK(id[1] == doctest::Approx(1.0));
  const auto k2 = float_spectrum(complete_graph(2).adjacency());
  CHECK(k2[0] == doctest::Approx(-1.0));
  CHECK(k2[1] == doctest::Approx(1.0));
  CHECK(std::fabs(float_lambda_min(e6_tilde().adjacency()) + 2.0) <= 1e-9);
}

TEST_CASE("Jacobi agrees with the Sturm bisection") {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    const IntSymMatrix m = testing::random_symmetric(rng, 1 + rng() % 8, -3, 3, -3, 3);
    CHECK(std::fabs(float_lambda_min(m) - oracle::lambda_min(m)) <= 1e-9);
    const auto s = float_spectrum(m);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(float_spectrum(m) == s);  // deterministic
  }
}

TEST_CASE("limit matrix assembly") {
  SUBCASE("1x1 with n = 1") {
    const auto m = build_limit_matrix(IntSymMatrix::from_rows({{-3}}), split(1, {0}), 1);
    CHECK(m == IntSymMatrix::from_rows({{-2, 1}, {1, 0}}));
    CHECK(float_lambda_min(m) == doctest::Approx(-1 - std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("2x2 with n = 2") {
    const auto m = build_limit_matrix(IntSymMatrix::from_rows({{0, 1}, {1, 0}}), split(2, {1}), 2);
    CHECK(m == IntSymMatrix::from_rows({{0, 1, 0, 0}, {1, 1, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}}));
  }
  SUBCASE("bad partitions") {
    const IntSymMatrix m = IntSymMatrix::identity(3);
    CHECK_THROWS_AS(build_limit_matrix(m, Partition{{0, 1}, {1, 2}}, 1), InvalidArgument);
    CHECK_THROWS_AS(build_limit_matrix(m, Partition{{0}, {1}}, 1), InvalidArgument);
    CHECK_THROWS_AS(build_limit_matrix(m, Partition{{0}, {1, 5}}, 1), InvalidArgument);
  }
}

TEST_CASE("limit report on (-3)") {
  const auto r = limit_report(IntSymMatrix::from_rows({{-3}}), split(1, {0}), 40);
  CHECK(r.monotone);
  CHECK(r.above_lambda_min);
  CHECK(r.witness_bound_holds);
  CHECK(r.mu.back() >= -3 - 1e-9);
  CHECK(r.mu.back() < r.mu.front());
  // the displayed "+" bound sits above mu_n >= lambda_min(M), so it cannot hold
  CHECK_FALSE(r.bound_holds);
}

TEST_CASE("empty I2 decouples the blocks") {
  const IntSymMatrix m = IntSymMatrix::from_rows({{-1, 1}, {1, -1}});  // lambda_min = -2
  const auto r = limit_report(m, split(2, {}), 12);
  for (double mu : r.mu) CHECK(mu == doctest::Approx(r.mu.front()).epsilon(1e-12));
  CHECK(r.mu.front() == doctest::Approx(-2.0));
}

TEST_CASE("limit report property checks on random order-5 matrices") {
  std::mt19937_64 rng(22);
  int done = 0;
  while (done < 20) {
    const IntSymMatrix m = testing::random_symmetric(rng, 5, -1, 1, -3, 0);
    if (psd_check(m, 1).is_psd && !psd_check(m, 1).is_singular) continue;
    const auto r = limit_report(m, split(5, {0, 3}), 20);
    CHECK(r.monotone);
    CHECK(r.above_lambda_min);
    CHECK(r.witness_bound_holds);
    ++done;
  }
}

TEST_CASE("limit report precondition") {
  CHECK_THROWS_AS(limit_report(IntSymMatrix::identity(2), split(2, {0}), 5), PreconditionViolated);
  CHECK_THROWS_AS(limit_report(IntSymMatrix::from_rows({{-3}}), split(1, {0}), 1), InvalidArgument);
}

TEST_CASE("limit witness") {
  SUBCASE("(-3), n = 5") {
    const auto w = limit_bound_witness(IntSymMatrix::from_rows({{-3}}), split(1, {0}), 5);
    CHECK(w.residual_max <= 1e-6);
    CHECK(w.pair_matrix.empty());
    CHECK(std::fabs(w.eps2 * w.eps2 - (2 * w.eps1 - w.eps1 * w.eps1)) <= 1e-9);
  }
  SUBCASE("2x2, n = 10") {
    const auto w = limit_bound_witness(IntSymMatrix::from_rows({{-1, 1}, {1, -1}}), split(2, {1}), 10);
    CHECK(w.residual_max <= 1e-6);
  }
  SUBCASE("pair matrix identity is exact") {
    std::mt19937_64 rng(23);
    const IntSymMatrix m = testing::random_symmetric(rng, 6, -1, 1, -3, -1);
    for (std::size_t k = 1; k <= 4; ++k) {
      std::vector<std::size_t> sec(k);
      for (std::size_t i = 0; i < k; ++i) sec[i] = i;
      if (psd_check(m, 1).is_psd && !psd_check(m, 1).is_singular) break;
      const auto w = limit_bound_witness(m, split(6, sec), 6);
      CHECK(w.pair_matrix.size() == k * (k - 1) / 2);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          long s = 0;
          for (const auto& row : w.pair_matrix) s += row[a] * row[b];
          CHECK(s == (a == b ? static_cast<long>(k) - 1 : -1));
        }
    }
  }
  CHECK_THROWS_AS(limit_bound_witness(IntSymMatrix::from_rows({{-3}}), split(1, {0}), 1), InvalidArgument);
}

TEST_CASE("small submatrices of the blow-up carry eigenvalues down to M") {
  std::mt19937_64 rng(24);
  const Rational mus[] = {-1, Rational(-3, 2), -2, Rational(-5, 2), -3};
  int triggered = 0;
  for (int it = 0; it < 200; ++it) {
    const std::size_t k = 2 + rng() % 3;
    const IntSymMatrix m = testing::random_symmetric(rng, k, -2, 1, -3, 0);
    std::vector<std::size_t> sec{0};
    if (k > 2 && rng() % 2) sec.push_back(2);
    const Partition part = split(k, sec);
    const IntSymMatrix big = build_limit_matrix(m, part, 3);
    std::vector<std::size_t> order = part.first;
    order.insert(order.end(), part.second.begin(), part.second.end());
    const auto s = testing::random_subset(rng, big.order());
    std::vector<std::size_t> base;
    for (std::size_t i : s)
      if (i < k) base.push_back(order[i]);
    if (base.empty()) continue;
    std::sort(base.begin(), base.end());
    for (const auto& mu : mus) {
      if (psd_check_principal(big, s, -mu).is_psd) continue;  // need lambda_min(sub) < mu
      ++triggered;
      const auto v = psd_check_principal(m, base, -mu);
      CHECK_FALSE((v.is_psd && !v.is_singular));  // lambda_min(M[base]) <= mu
    }
  }
  CHECK(triggered > 0);
}

TEST_CASE("small submatrix witness examples") {
  SUBCASE("star K_{1,10}") {
    const auto w = small_submatrix_witness(claw_graph(10).adjacency());
    REQUIRE(w.has_value());
    CHECK(w->size() == 6);
    CHECK_FALSE(psd_check_principal(claw_graph(10).adjacency(), *w, 2).is_psd);
  }
  SUBCASE("K3 has none") { CHECK_FALSE(small_submatrix_witness(complete_graph(3).adjacency()).has_value()); }
  SUBCASE("diagonal outside {0,-1}") {
    CHECK_THROWS_AS(small_submatrix_witness(IntSymMatrix::from_rows({{-2}})), PreconditionViolated);
  }
}

TEST_CASE("witness exists iff the matrix fails at shift 2") {
  std::mt19937_64 rng(25);
  for (int it = 0; it < 200; ++it) {
    const IntSymMatrix m = testing::random_symmetric(rng, 3 + rng() % 8, -1, 1, -1, 0);
    const bool fails = !psd_check(m, 2).is_psd;
    const auto w = small_submatrix_witness(m);
    CHECK(w.has_value() == fails);
    if (w) {
      CHECK(w->size() <= 10);
      CHECK_FALSE(psd_check_principal(m, *w, 2).is_psd);
    }
  }
}

}  // TEST_SUITE
