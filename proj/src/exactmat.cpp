#include "hlat/exactmat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hlat/errors.hpp"

namespace hlat {

IntSymMatrix::IntSymMatrix(std::size_t order) : n_(order), a_(order * order) {
  if (order == 0) throw InvalidArgument("matrix order must be positive");
}

IntSymMatrix IntSymMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) throw InvalidArgument("matrix order must be positive");
  IntSymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw InvalidArgument("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m.a_[i * m.n_ + j] = rows[i][j];
  }
  for (std::size_t i = 0; i < m.n_; ++i)
    for (std::size_t j = i + 1; j < m.n_; ++j)
      if (m(i, j) != m(j, i))
        throw InvalidArgument("matrix is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
  return m;
}

IntSymMatrix IntSymMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> r;
  for (const auto& row : rows) {
    IntVector v;
    for (long x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return from_rows(r);
}

IntSymMatrix IntSymMatrix::identity(std::size_t order) {
  IntSymMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m.a_[i * order + i] = 1;
  return m;
}

IntSymMatrix IntSymMatrix::diagonal(std::span<const long> diag) {
  IntSymMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.a_[i * m.n_ + i] = diag[i];
  return m;
}

void IntSymMatrix::set(std::size_t i, std::size_t j, const BigInt& v) {
  a_[i * n_ + j] = v;
  a_[j * n_ + i] = v;
}

void IntSymMatrix::add_to_diagonal(const BigInt& v) {
  for (std::size_t i = 0; i < n_; ++i) a_[i * n_ + i] += v;
}

IntSymMatrix IntSymMatrix::principal(std::span<const std::size_t> idx) const {
  IntSymMatrix m(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m.a_[i * m.n_ + j] = (*this)(idx[i], idx[j]);
  return m;
}

IntSymMatrix IntSymMatrix::plus_identity(const BigInt& t) const {
  IntSymMatrix m = *this;
  m.add_to_diagonal(t);
  return m;
}

IntSymMatrix IntSymMatrix::scaled(const BigInt& c) const {
  IntSymMatrix m = *this;
  for (auto& x : m.a_) x *= c;
  return m;
}

bool IntSymMatrix::fits_int64() const {
  return std::all_of(a_.begin(), a_.end(), [](const BigInt& x) { return x.fits_slong_p(); });
}

std::vector<std::int64_t> IntSymMatrix::to_int64() const {
  std::vector<std::int64_t> out(a_.size());
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (!a_[k].fits_slong_p()) throw InvalidArgument("matrix entry exceeds 64 bits");
    out[k] = a_[k].get_si();
  }
  return out;
}

std::vector<double> IntSymMatrix::to_double() const {
  std::vector<double> out(a_.size());
  for (std::size_t k = 0; k < a_.size(); ++k) out[k] = a_[k].get_d();
  return out;
}

std::string IntSymMatrix::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) os << ' ';
      os << (*this)(i, j);
    }
    os << '\n';
  }
  return os.str();
}

bool IntSymMatrix::operator==(const IntSymMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

namespace {

using i128 = __int128;

BigInt from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

inline BigInt to_big(const BigInt& v) { return v; }
inline BigInt to_big(i128 v) { return from_i128(v); }

inline void exact_div(i128& x, const i128& d) { x /= d; }
inline void exact_div(BigInt& x, const BigInt& d) {
  mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

inline int sign_of(i128 v) { return (v > 0) - (v < 0); }
inline int sign_of(const BigInt& v) { return sgn(v); }

// Symmetric fraction-free elimination on the n*n working matrix w.
// Pivots of the real matrix are w_kk / prev / q.
template <class T>
PSDVerdict bareiss_psd(std::vector<T> w, std::size_t n, const BigInt& q) {
  PSDVerdict v;
  v.is_psd = true;
  v.pivot_trace.reserve(n);
  T prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const T p = w[k * n + k];
    const int s = sign_of(p);
    if (s < 0) {
      Rational piv(to_big(p), to_big(prev) * q);
      piv.canonicalize();
      v.pivot_trace.push_back(piv);
      v.is_psd = false;
      v.failure_index = k;
      return v;
    }
    if (s == 0) {
      v.pivot_trace.emplace_back(0);
      for (std::size_t j = k + 1; j < n; ++j) {
        if (sign_of(w[k * n + j]) != 0) {
          v.is_psd = false;
          v.failure_index = k;
          return v;
        }
      }
      v.is_singular = true;
      continue;
    }
    Rational piv(to_big(p), to_big(prev) * q);
    piv.canonicalize();
    v.pivot_trace.push_back(std::move(piv));
    for (std::size_t i = k + 1; i < n; ++i) {
      const T wik = w[i * n + k];
      for (std::size_t j = i; j < n; ++j) {
        T x = p * w[i * n + j];
        x -= wik * w[k * n + j];
        exact_div(x, prev);
        w[i * n + j] = x;
        w[j * n + i] = x;
      }
    }
    prev = p;
  }
  return v;
}

// Builds q*M_idx + p*I and dispatches to the 128-bit path when every
// minor is provably below 2^61 (Hadamard bound on row norms).
PSDVerdict psd_dispatch(const IntSymMatrix& m, std::span<const std::size_t> idx,
                        const Rational& shift) {
  const std::size_t n = idx.size();
  const BigInt& p = shift.get_num();
  const BigInt& q = shift.get_den();
  std::vector<BigInt> w(n * n);
  double log_bound = 0.0;
  bool small = true;
  for (std::size_t i = 0; i < n; ++i) {
    double sumsq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      BigInt x = q * m(idx[i], idx[j]);
      if (i == j) x += p;
      if (!x.fits_slong_p()) small = false;
      const double d = x.get_d();
      sumsq += d * d;
      w[i * n + j] = std::move(x);
    }
    log_bound += 0.5 * std::log2(std::max(1.0, sumsq));
  }
  if (small && log_bound < 60.0) {
    std::vector<i128> w128(n * n);
    for (std::size_t k = 0; k < n * n; ++k) w128[k] = w[k].get_si();
    return bareiss_psd<i128>(std::move(w128), n, q);
  }
  return bareiss_psd<BigInt>(std::move(w), n, q);
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

}  // namespace

PSDVerdict psd_check(const IntSymMatrix& m, const Rational& shift) {
  const auto idx = iota_indices(m.order());
  return psd_dispatch(m, idx, shift);
}

PSDVerdict psd_check_principal(const IntSymMatrix& m, std::span<const std::size_t> idx,
                               const Rational& shift) {
  if (idx.empty()) {
    PSDVerdict v;
    v.is_psd = true;
    return v;
  }
  for (std::size_t i : idx)
    if (i >= m.order()) throw InvalidArgument("principal index out of range");
  return psd_dispatch(m, idx, shift);
}

std::pair<BigInt, BigInt> gershgorin_bounds(const IntSymMatrix& m) {
  BigInt lo, hi;
  for (std::size_t i = 0; i < m.order(); ++i) {
    BigInt r = 0;
    for (std::size_t j = 0; j < m.order(); ++j)
      if (j != i) r += abs(m(i, j));
    const BigInt a = m(i, i) - r;
    const BigInt b = m(i, i) + r;
    if (i == 0 || a < lo) lo = a;
    if (i == 0 || b > hi) hi = b;
  }
  return {lo, hi};
}

EigenBracket lambda_min_bracket(const IntSymMatrix& m, const Rational& width) {
  if (width <= 0) throw InvalidArgument("bracket width must be positive");
  Rational lo(gershgorin_bounds(m).first);
  BigInt min_diag = m(0, 0);
  for (std::size_t i = 1; i < m.order(); ++i) min_diag = std::min<BigInt>(min_diag, m(i, i));
  // lambda_min <= min diagonal < hi
  Rational hi(min_diag + 1);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (psd_check(m, -mid).is_psd)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

std::vector<IntVector> integer_rowspace_basis(const std::vector<IntVector>& rows_in) {
  if (rows_in.empty()) return {};
  const std::size_t d = rows_in.front().size();
  for (const auto& r : rows_in)
    if (r.size() != d) throw InvalidArgument("rows have different lengths");
  std::vector<IntVector> rows = rows_in;
  const std::size_t m = rows.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < m; ++c) {
    // Euclid on column c among rows r..m-1 until a single nonzero remains.
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (rows[i][c] != 0 && (best == m || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == m) break;
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (rows[i][c] == 0) continue;
        BigInt f;
        mpz_fdiv_q(f.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t j = c; j < d; ++j) rows[i][j] -= f * rows[r][j];
        if (rows[i][c] != 0) others = true;
      }
      if (!others) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      BigInt f;
      mpz_fdiv_q(f.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (f != 0)
        for (std::size_t j = c; j < d; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

BigInt determinant(const std::vector<IntVector>& square) {
  const std::size_t n = square.size();
  if (n == 0) return 1;
  std::vector<IntVector> a = square;
  for (const auto& row : a)
    if (row.size() != n) throw InvalidArgument("determinant of a non-square matrix");
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt x = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(x);
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BigInt determinant(const IntSymMatrix& m) {
  std::vector<IntVector> a(m.order(), IntVector(m.order()));
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) a[i][j] = m(i, j);
  return determinant(a);
}

Rational determinant(const RatMatrix& square) {
  RatMatrix a = square;
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

std::size_t rank(const IntSymMatrix& m) {
  const std::size_t n = m.order();
  std::vector<IntVector> a(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        BigInt x = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(x);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::vector<std::size_t> independent_generators(const IntSymMatrix& gram) {
  const PSDVerdict v = psd_check(gram);
  if (!v.is_psd) throw InvalidArgument("Gram matrix is not positive semidefinite");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.pivot_trace.size(); ++i)
    if (v.pivot_trace[i] > 0) out.push_back(i);
  return out;
}

RatVector solve_rational(RatMatrix a, RatVector b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidArgument("right-hand side has the wrong length");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) throw InvalidArgument("singular system");
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      b[i] -= f * b[k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

}  // namespace hlat
