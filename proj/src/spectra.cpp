#include "hlat/spectra.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hlat/errors.hpp"

namespace hlat {

SymmetricEigen jacobi_eigen(const RealMatrix& input, bool want_vectors) {
  const std::size_t n = input.rows;
  RealMatrix a = input;
  RealMatrix v;
  if (want_vectors) {
    v = RealMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
  }
  double frob = 0.0;
  for (double x : a.data) frob += x * x;
  const double tol = 1e-10 * std::max(1.0, std::sqrt(frob));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) < tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]);
  if (want_vectors) {
    out.vectors = RealMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace {

RealMatrix to_real(const IntSymMatrix& m) {
  RealMatrix r(m.order(), m.order());
  r.data = m.to_double();
  return r;
}

std::vector<std::size_t> check_partition(const IntSymMatrix& m, const Partition& part) {
  std::vector<int> seen(m.order(), 0);
  std::vector<std::size_t> ordered;
  for (const auto* block : {&part.first, &part.second}) {
    for (std::size_t i : *block) {
      if (i >= m.order()) throw InvalidArgument("partition index out of range");
      if (seen[i]++) throw InvalidArgument("partition blocks overlap at index " + std::to_string(i));
      ordered.push_back(i);
    }
  }
  if (ordered.size() != m.order()) throw InvalidArgument("partition does not cover every index");
  return ordered;
}

}  // namespace

std::vector<double> float_spectrum(const IntSymMatrix& m) {
  return jacobi_eigen(to_real(m), false).values;
}

double float_lambda_min(const IntSymMatrix& m) { return float_spectrum(m).front(); }
double float_lambda_max(const IntSymMatrix& m) { return float_spectrum(m).back(); }

IntSymMatrix build_limit_matrix(const IntSymMatrix& m, const Partition& part, std::size_t n) {
  if (n == 0) throw InvalidArgument("n must be positive");
  const auto ordered = check_partition(m, part);
  const std::size_t k1 = part.first.size();
  const std::size_t base = ordered.size();
  IntSymMatrix out(base + n);
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = i; j < base; ++j) {
      BigInt x = m(ordered[i], ordered[j]);
      if (i >= k1 && j >= k1) x += 1;  // M22 + J
      out.set(i, j, x);
    }
  for (std::size_t i = k1; i < base; ++i)
    for (std::size_t j = base; j < base + n; ++j) out.set(i, j, 1);
  for (std::size_t i = base; i < base + n; ++i)
    for (std::size_t j = i; j < base + n; ++j) out.set(i, j, i == j ? 0 : 1);
  return out;
}

LimitReport limit_report(const IntSymMatrix& m, const Partition& part, std::size_t n_max,
                         double tol, double bound_tol) {
  if (n_max < 2) throw InvalidArgument("n_max must be at least 2");
  check_partition(m, part);
  const PSDVerdict shifted = psd_check(m, 1);
  if (shifted.is_psd && !shifted.is_singular)
    throw PreconditionViolated("lambda_min(M) > -1: M + I is positive definite (all " +
                               std::to_string(shifted.pivot_trace.size()) + " pivots positive)");
  LimitReport r;
  r.lambda_min_M = float_lambda_min(m);
  const double k2 = static_cast<double>(part.second.size());
  r.monotone = r.above_lambda_min = r.bound_holds = r.witness_bound_holds = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double mu = float_lambda_min(build_limit_matrix(m, part, n));
    r.n_values.push_back(n);
    if (!r.mu.empty() && mu > r.mu.back() + tol) r.monotone = false;
    if (mu < r.lambda_min_M - tol) r.above_lambda_min = false;
    r.mu.push_back(mu);
    if (n >= 2) {
      const double slack = (-mu - 1.0) * k2 / (static_cast<double>(n) - mu - 1.0);
      const double gap = r.lambda_min_M - (mu + slack);
      r.bound_gaps.push_back(gap);
      if (gap < -bound_tol) r.bound_holds = false;
      // N^T N = M + (-mu + eps2^2 |I2|) I only gives lambda_min(M) >= mu - slack.
      const double wgap = r.lambda_min_M - (mu - slack);
      r.witness_bound_gaps.push_back(wgap);
      if (wgap < -bound_tol) r.witness_bound_holds = false;
    }
  }
  return r;
}

LimitWitness limit_bound_witness(const IntSymMatrix& m, const Partition& part, std::size_t n,
                                 double tol) {
  if (n < 2) throw InvalidArgument("the witness needs n >= 2");
  const auto ordered = check_partition(m, part);
  const std::size_t k1 = part.first.size();
  const std::size_t k2 = part.second.size();
  const std::size_t base = k1 + k2;
  const std::size_t order = base + n;

  const SymmetricEigen eig = jacobi_eigen(to_real(build_limit_matrix(m, part, n)));
  LimitWitness w;
  w.mu = eig.values.front();
  if (w.mu > -1.0 + 1e-9)
    throw PreconditionViolated("mu_n > -1; the J - I block should force mu_n <= -1 for n >= 2");

  // Factor: row k of Nhat is sqrt(lambda_k - mu) * (eigenvector k)^T.
  RealMatrix nhat(order, order);
  for (std::size_t k = 0; k < order; ++k) {
    double lam = eig.values[k] - w.mu;
    if (lam < 1e-12) lam = 0.0;
    const double s = std::sqrt(lam);
    for (std::size_t i = 0; i < order; ++i) nhat(k, i) = s * eig.vectors(i, k);
  }

  const double dn = static_cast<double>(n);
  const double denom = dn - w.mu - 1.0;
  w.eps1 = 1.0 - std::sqrt(dn / denom);
  w.eps2 = std::sqrt((-w.mu - 1.0) / denom);
  w.u.assign(order, 0.0);
  const double unorm = std::sqrt(dn * denom);
  for (std::size_t k = 0; k < order; ++k) {
    double s = 0.0;
    for (std::size_t j = base; j < order; ++j) s += nhat(k, j);
    w.u[k] = s / unorm;
  }

  for (std::size_t i = 0; i < k2; ++i)
    for (std::size_t j = i + 1; j < k2; ++j) {
      std::vector<int> row(k2, 0);
      row[i] = 1;
      row[j] = -1;
      w.pair_matrix.push_back(std::move(row));
    }

  const std::size_t pairs = w.pair_matrix.size();
  w.assembled = RealMatrix(order + k1 + pairs, base);
  RealMatrix& N = w.assembled;
  for (std::size_t k = 0; k < order; ++k) {
    for (std::size_t c = 0; c < k1; ++c) N(k, c) = nhat(k, c);
    for (std::size_t c = k1; c < base; ++c) N(k, c) = nhat(k, c) + (w.eps1 - 1.0) * w.u[k];
  }
  const double diag_scale = w.eps2 * std::sqrt(static_cast<double>(k2));
  for (std::size_t c = 0; c < k1; ++c) N(order + c, c) = diag_scale;
  for (std::size_t p = 0; p < pairs; ++p)
    for (std::size_t c = 0; c < k2; ++c) N(order + k1 + p, k1 + c) = w.eps2 * w.pair_matrix[p][c];

  const double shift = -w.mu + w.eps2 * w.eps2 * static_cast<double>(k2);
  w.residual_max = 0.0;
  for (std::size_t a = 0; a < base; ++a)
    for (std::size_t b = a; b < base; ++b) {
      double s = 0.0;
      for (std::size_t r = 0; r < N.rows; ++r) s += N(r, a) * N(r, b);
      double target = m(ordered[a], ordered[b]).get_d();
      if (a == b) target += shift;
      w.residual_max = std::max(w.residual_max, std::fabs(s - target));
    }
  if (w.residual_max > tol)
    throw VerificationFailed("limit witness residual " + std::to_string(w.residual_max) +
                             " exceeds tolerance");
  return w;
}

namespace {

void check_vi2_hypothesis(const IntSymMatrix& m) {
  for (std::size_t i = 0; i < m.order(); ++i)
    if (m(i, i) != 0 && m(i, i) != -1)
      throw PreconditionViolated("diagonal entry " + m(i, i).get_str() + " at index " +
                                 std::to_string(i) + " is not 0 or -1");
}

// Advances `c` to the next k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// First failing k-subset whose smallest element is `first`, in lex order.
std::optional<std::vector<std::size_t>> scan_shard(const IntSymMatrix& m, std::size_t k,
                                                   std::size_t first) {
  const std::size_t n = m.order();
  if (first + k > n) return std::nullopt;
  std::vector<std::size_t> rest(k - 1);
  for (std::size_t j = 0; j + 1 < k; ++j) rest[j] = first + 1 + j;
  std::vector<std::size_t> idx(k);
  do {
    idx[0] = first;
    for (std::size_t j = 0; j + 1 < k; ++j) idx[j + 1] = rest[j];
    if (!psd_check_principal(m, idx, 2).is_psd) return idx;
    if (k == 1) break;
    // rest ranges over (k-1)-combinations of {first+1..n-1}
    std::vector<std::size_t> shifted(rest.size());
    for (std::size_t j = 0; j < rest.size(); ++j) shifted[j] = rest[j] - first - 1;
    if (!next_combination(shifted, n - first - 1)) break;
    for (std::size_t j = 0; j < rest.size(); ++j) rest[j] = shifted[j] + first + 1;
  } while (true);
  return std::nullopt;
}

[[noreturn]] void no_small_witness(std::size_t max_order) {
  throw Error("no principal submatrix of order <= " + std::to_string(max_order) +
              " has an eigenvalue below -2");
}

}  // namespace

namespace reference {

std::optional<std::vector<std::size_t>> small_submatrix_witness(const IntSymMatrix& m,
                                                                std::size_t max_order) {
  check_vi2_hypothesis(m);
  if (psd_check(m, 2).is_psd) return std::nullopt;
  const std::size_t n = m.order();
  for (std::size_t k = 1; k <= std::min(max_order, n); ++k) {
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), 0);
    do {
      if (!psd_check_principal(m, c, 2).is_psd) return c;
    } while (next_combination(c, n));
  }
  no_small_witness(max_order);
}

}  // namespace reference

std::optional<std::vector<std::size_t>> small_submatrix_witness(const IntSymMatrix& m,
                                                                std::size_t max_order, int jobs) {
  if (jobs <= 1) return reference::small_submatrix_witness(m, max_order);
  check_vi2_hypothesis(m);
  if (psd_check(m, 2).is_psd) return std::nullopt;
  const std::size_t n = m.order();
  for (std::size_t k = 1; k <= std::min(max_order, n); ++k) {
    std::vector<std::optional<std::vector<std::size_t>>> found(n);
    const long shards = static_cast<long>(n - k + 1);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long first = 0; first < shards; ++first)
      found[static_cast<std::size_t>(first)] = scan_shard(m, k, static_cast<std::size_t>(first));
    for (auto& f : found)
      if (f) return f;
  }
  no_small_witness(max_order);
}

}  // namespace hlat
