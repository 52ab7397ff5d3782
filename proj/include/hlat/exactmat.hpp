#pragma once

// Exact integer/rational kernel: symmetric PSD tests by fraction-free
// elimination, certified eigenvalue brackets, and integer row-space bases.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hlat {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<BigInt>;
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;

/// Symmetric matrix of arbitrary-precision integers, order >= 1.
class IntSymMatrix {
 public:
  /// Zero matrix of the given order.
  explicit IntSymMatrix(std::size_t order);

  /// Throws InvalidArgument when the rows are ragged, empty or not symmetric.
  static IntSymMatrix from_rows(const std::vector<IntVector>& rows);
  static IntSymMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntSymMatrix identity(std::size_t order);
  static IntSymMatrix diagonal(std::span<const long> diag);

  std::size_t order() const noexcept { return n_; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, const BigInt& v);
  void add_to_diagonal(const BigInt& v);

  IntSymMatrix principal(std::span<const std::size_t> idx) const;
  IntSymMatrix plus_identity(const BigInt& t) const;
  IntSymMatrix scaled(const BigInt& c) const;

  /// True when every entry fits in a signed 64-bit integer.
  bool fits_int64() const;
  std::vector<std::int64_t> to_int64() const;
  std::vector<double> to_double() const;

  /// Whitespace-separated rows, used for digests and the matrix file format.
  std::string to_text() const;

  bool operator==(const IntSymMatrix& o) const;

 private:
  IntSymMatrix() = default;
  std::size_t n_ = 0;
  std::vector<BigInt> a_;
};

/// Outcome of an exact PSD test of M + shift*I.
struct PSDVerdict {
  bool is_psd = false;
  /// Rational LDL pivots in elimination order; skipped zero rows record 0.
  std::vector<Rational> pivot_trace;
  /// Row where a negative pivot or an inconsistent zero pivot was met.
  std::optional<std::size_t> failure_index;
  bool is_singular = false;
};

/// Decides M + shift*I >= 0 by symmetric elimination in natural order.
/// A zero pivot is accepted only when its residual row is entirely zero.
/// lambda_min(M) >= -t  <=>  psd_check(M, t).is_psd.
PSDVerdict psd_check(const IntSymMatrix& m, const Rational& shift = 0);

/// Same decision, restricted to the principal submatrix on `idx`.
PSDVerdict psd_check_principal(const IntSymMatrix& m, std::span<const std::size_t> idx,
                               const Rational& shift = 0);

/// Certified bracket: lo <= lambda_min(M) < hi with hi - lo <= width.
/// Both ends are re-checkable: psd_check(M, -lo) holds, psd_check(M, -hi) fails.
struct EigenBracket {
  Rational lo;
  Rational hi;
};
EigenBracket lambda_min_bracket(const IntSymMatrix& m, const Rational& width);

/// Gershgorin interval [lo, hi] containing the spectrum.
std::pair<BigInt, BigInt> gershgorin_bounds(const IntSymMatrix& m);

/// Hermite normal form basis (rows) of the Z-span of `rows`. Pivots are
/// positive, entries above a pivot are reduced into [0, pivot). Zero rows
/// are dropped, so the result has exactly rank-many rows.
std::vector<IntVector> integer_rowspace_basis(const std::vector<IntVector>& rows);

BigInt determinant(const IntSymMatrix& m);
BigInt determinant(const std::vector<IntVector>& square);
Rational determinant(const RatMatrix& square);
std::size_t rank(const IntSymMatrix& m);

/// Indices of a maximal linearly independent subset of the generators whose
/// Gram matrix is `gram` (greedy in index order). `gram` must be PSD.
std::vector<std::size_t> independent_generators(const IntSymMatrix& gram);

/// Solves A x = b for square nonsingular A. Throws InvalidArgument if singular.
RatVector solve_rational(RatMatrix a, RatVector b);

}  // namespace hlat
