#pragma once

// Independent reference computations for the tests: characteristic
// polynomials by Faddeev-LeVerrier over the rationals and Sturm-sequence
// root counting. Nothing here calls into the elimination code.

#include <cstddef>
#include <vector>

#include "hlat/exactmat.hpp"

namespace oracle {

using hlat::BigInt;
using hlat::IntSymMatrix;
using hlat::Rational;
using Poly = std::vector<Rational>;  // low degree first

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// det(xI - M), monic.
inline Poly charpoly(const IntSymMatrix& m) {
  const std::size_t n = m.order();
  using Mat = std::vector<std::vector<Rational>>;
  Mat a(n, std::vector<Rational>(n)), mk(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Poly c(n + 1, 0);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Mat next(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * mk[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    mk = std::move(next);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * mk[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

inline Rational eval(const Poly& p, const Rational& x) {
  Rational r = 0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

inline Poly remainder(Poly a, const Poly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

/// p / (x - r), exact when r is a root.
inline Poly deflate(const Poly& p, const Rational& r) {
  Poly q(p.size() - 1);
  Rational carry = 0;
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = carry * r + p[i];
    q[i - 1] = carry;
  }
  return q;
}

inline int sign_changes(const std::vector<int>& s) {
  int changes = 0, last = 0;
  for (int v : s) {
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

inline int sgn(const Rational& q) { return q > 0 ? 1 : q < 0 ? -1 : 0; }

/// Number of distinct real roots strictly below x.
inline int roots_below(Poly p, const Rational& x) {
  trim(p);
  while (p.size() > 1 && eval(p, x) == 0) p = deflate(p, x);
  if (p.size() <= 1) return 0;
  std::vector<Poly> seq{p, derivative(p)};
  while (seq.back().size() > 1) {
    Poly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  std::vector<int> at_x, at_minus_inf;
  for (const auto& q : seq) {
    at_x.push_back(sgn(eval(q, x)));
    const int lead = sgn(q.back());
    at_minus_inf.push_back((q.size() - 1) % 2 ? -lead : lead);
  }
  return sign_changes(at_minus_inf) - sign_changes(at_x);
}

/// lambda_min(M) >= -t.
inline bool psd(const IntSymMatrix& m, const Rational& t) { return roots_below(charpoly(m), -t) == 0; }

inline bool is_eigenvalue(const IntSymMatrix& m, const Rational& x) { return eval(charpoly(m), x) == 0; }

/// lambda_min by bisection on the root count, to about 1e-12.
inline double lambda_min(const IntSymMatrix& m) {
  const Poly p = charpoly(m);
  Rational bound = 1;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) bound += abs(Rational(m(i, j)));
  Rational lo = -bound, hi = bound;  // roots_below(lo) == 0 < roots_below(hi)
  for (int it = 0; it < 60; ++it) {
    Rational mid = (lo + hi) / 2;
    if (roots_below(p, mid) == 0) lo = mid;
    else hi = mid;
  }
  return lo.get_d();
}

}  // namespace oracle
