#pragma once

// Floating spectra, the bordered limit matrix M-hat(n) with its convergence
// bound and explicit factor witness, and the bounded-order submatrix search.

#include <cstddef>
#include <optional>
#include <vector>

#include "hlat/exactmat.hpp"

namespace hlat {

/// Dense row-major real matrix.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  RealMatrix vectors;          // column k belongs to values[k]
};

/// Cyclic Jacobi sweeps; stops once the off-diagonal Frobenius norm drops
/// below 1e-10 (relative to the matrix norm) or after 100 sweeps.
SymmetricEigen jacobi_eigen(const RealMatrix& a, bool want_vectors = true);

/// Eigenvalues of M, ascending.
std::vector<double> float_spectrum(const IntSymMatrix& m);
double float_lambda_min(const IntSymMatrix& m);
double float_lambda_max(const IntSymMatrix& m);

/// Index partition (I1, I2) of a matrix.
struct Partition {
  std::vector<std::size_t> first;   // I1
  std::vector<std::size_t> second;  // I2
};

/// Assembles the block matrix
///   [ M11  M12     O   ]
///   [ M21  M22+J   J   ]
///   [ O    J       J-I ]
/// with rows ordered I1, I2, then n new indices.
IntSymMatrix build_limit_matrix(const IntSymMatrix& m, const Partition& part, std::size_t n);

struct LimitReport {
  std::vector<std::size_t> n_values;
  std::vector<double> mu;
  double lambda_min_M = 0.0;
  /// lambda_min(M) - (mu_n + (-mu_n - 1)|I2| / (n - mu_n - 1)), for n >= 2.
  std::vector<double> bound_gaps;
  /// lambda_min(M) - (mu_n - (-mu_n - 1)|I2| / (n - mu_n - 1)): the bound the
  /// witness factorization actually certifies.
  std::vector<double> witness_bound_gaps;
  bool monotone = false;
  bool above_lambda_min = false;
  bool bound_holds = false;
  bool witness_bound_holds = false;
};

/// mu_n for n = 1..n_max. Requires lambda_min(M) <= -1, i.e. M + I not
/// positive definite; throws PreconditionViolated otherwise.
LimitReport limit_report(const IntSymMatrix& m, const Partition& part, std::size_t n_max,
                         double tol = 1e-9, double bound_tol = 1e-8);

struct LimitWitness {
  double mu = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  std::vector<double> u;
  /// Rows indexed by pairs {i<j} of I2, columns by I2: e_i - e_j.
  std::vector<std::vector<int>> pair_matrix;
  /// Columns ordered I1 then I2.
  RealMatrix assembled;
  /// max |N^T N - (M + (-mu + eps2^2 |I2|) I)| over the I1,I2 block.
  double residual_max = 0.0;
};

/// Builds the explicit factor N of M + (-mu_n + eps2^2 |I2|) I from a
/// factor of M-hat(n) - mu_n I. Throws VerificationFailed if the residual
/// exceeds `tol`.
LimitWitness limit_bound_witness(const IntSymMatrix& m, const Partition& part, std::size_t n,
                                 double tol = 1e-6);

/// Smallest principal submatrix (by size, then lexicographically) that still
/// has an eigenvalue below -2. Diagonal entries must lie in {0, -1}.
/// Returns nullopt when M + 2I is PSD. `jobs` > 1 shards each size level
/// over OpenMP threads by first index.
std::optional<std::vector<std::size_t>> small_submatrix_witness(const IntSymMatrix& m,
                                                                std::size_t max_order = 10,
                                                                int jobs = 1);

namespace reference {
/// Serial search kept as the reference for the parallel kernel.
std::optional<std::vector<std::size_t>> small_submatrix_witness(const IntSymMatrix& m,
                                                                std::size_t max_order = 10);
}  // namespace reference

}  // namespace hlat
