#pragma once

// Candidate special matrices of minimal forbidden fat Hoffman graphs for
// smallest eigenvalue -3: the property checker, orderly enumeration,
// realization as Hoffman graphs and the minimality test.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hlat/exactmat.hpp"
#include "hlat/hoffman.hpp"

namespace hlat {

struct MhatVerdict {
  bool accepted = false;
  /// 1..5 for the first failing property, 0 when accepted.
  int violated = 0;
  std::string reason;
};

/// Checks, in order: (1) irreducible; (2) M_ij <= 1 off the diagonal and
/// M_ii <= 0; (3) M_ij >= max(M_ii, M_jj) - 1; (4) lambda_min(M) < -2;
/// (5) every order-(k-1) principal submatrix has lambda_min >= -2.
MhatVerdict mhat_check(const IntSymMatrix& m);

/// Lexicographically least upper-triangle vectorization over simultaneous
/// permutations that keep rows sorted by (diagonal, sorted row entries).
IntSymMatrix canonical_form(const IntSymMatrix& m);

struct MhatEnumeration {
  std::size_t max_order = 0;
  /// Accepted classes, canonical, ordered by order then vectorization.
  std::vector<IntSymMatrix> candidates;
  /// Number of canonical classes with lambda_min >= -2 kept at each order
  /// (index 0 is order 1); these seed the next order.
  std::vector<std::size_t> frontier_sizes;
};

/// Orderly generation up to max_order (at most 10). `jobs` > 1 extends each
/// frontier over OpenMP threads; the merge is order-independent.
MhatEnumeration enumerate_mhat(std::size_t max_order, int jobs = 1);

namespace reference {
MhatEnumeration enumerate_mhat(std::size_t max_order);
}  // namespace reference

/// A fat Hoffman graph whose special matrix plus I equals M, slims first,
/// or nullopt when no slim adjacency and fat incidence realize it.
/// Requires M_ii <= 0 and M_ij <= 1 (InvalidArgument otherwise).
std::optional<HoffmanGraph> realize_special(const IntSymMatrix& m);

struct ForbiddenVerdict {
  bool is_minimal_forbidden = false;
  /// Vertices (of the input) of a proper fat induced subgraph with
  /// lambda_min < -3, largest first found.
  std::optional<std::vector<std::size_t>> witness_vertices;
  std::optional<HoffmanGraph> witness;
};

/// Throws PreconditionViolated when f is not a fat Hoffman graph and
/// NotForbidden when lambda_min(f) >= -3.
ForbiddenVerdict minimal_forbidden_check(const HoffmanGraph& f);

/// Bracket of the largest smallest eigenvalue among the given graphs.
EigenBracket forbidden_epsilon(const std::vector<HoffmanGraph>& graphs, const Rational& width);

}  // namespace hlat
