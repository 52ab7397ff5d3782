#include "hlat/forbidden.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "hlat/errors.hpp"

namespace hlat {

namespace {

using Key = std::vector<long>;  // order followed by the upper triangle, row-major

Key vectorize(const std::vector<long>& a, std::size_t n, const std::vector<std::size_t>& perm) {
  Key k;
  k.reserve(1 + n * (n + 1) / 2);
  k.push_back(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) k.push_back(a[perm[i] * n + perm[j]]);
  return k;
}

std::vector<long> entries(const IntSymMatrix& m) {
  std::vector<long> a;
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) a.push_back(m(i, j).get_si());
  return a;
}

IntSymMatrix from_key(const Key& k) {
  const auto n = static_cast<std::size_t>(k[0]);
  IntSymMatrix m(n);
  std::size_t p = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, k[p++]);
  return m;
}

Key canonical_key(const std::vector<long>& a, std::size_t n) {
  using Sig = std::pair<long, std::vector<long>>;
  std::vector<Sig> sig(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig[i].first = a[i * n + i];
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sig[i].second.push_back(a[i * n + j]);
    std::sort(sig[i].second.begin(), sig[i].second.end());
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return sig[x] < sig[y]; });
  // Cells of equal signature; permute within each.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t s = 0; s < n;) {
    std::size_t e = s + 1;
    while (e < n && sig[perm[e]] == sig[perm[s]]) ++e;
    cells.emplace_back(s, e);
    s = e;
  }
  Key best = vectorize(a, n, perm);
  // Odometer over the within-cell permutations.
  for (;;) {
    std::size_t c = cells.size();
    while (c-- > 0) {
      auto [s, e] = cells[c];
      if (std::next_permutation(perm.begin() + static_cast<std::ptrdiff_t>(s),
                                perm.begin() + static_cast<std::ptrdiff_t>(e)))
        break;
      // wrapped to sorted order: carry into the previous cell
    }
    if (c == static_cast<std::size_t>(-1)) break;
    Key k = vectorize(a, n, perm);
    if (k < best) best = std::move(k);
  }
  return best;
}

bool irreducible(const IntSymMatrix& m) {
  const std::size_t n = m.order();
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> q{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop_front();
    for (std::size_t v = 0; v < n; ++v)
      if (!seen[v] && m(u, v) != 0) {
        seen[v] = 1;
        ++count;
        q.push_back(v);
      }
  }
  return count == n;
}

bool minors_ok(const IntSymMatrix& m) {
  const std::size_t n = m.order();
  if (n == 1) return true;
  std::vector<std::size_t> idx;
  for (std::size_t drop = 0; drop < n; ++drop) {
    idx.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (i != drop) idx.push_back(i);
    if (!psd_check_principal(m, idx, 2).is_psd) return false;
  }
  return true;
}

struct LevelOutput {
  std::vector<Key> frontier;
  std::vector<Key> accepted;
};

// All one-row extensions of `base` whose order-k principal submatrices keep
// lambda_min >= -2.
LevelOutput extend(const Key& base_key) {
  LevelOutput out;
  const IntSymMatrix base = from_key(base_key);
  const std::size_t k = base.order();
  const std::size_t n = k + 1;
  std::vector<long> diag(k);
  for (std::size_t i = 0; i < k; ++i) diag[i] = base(i, i).get_si();
  std::vector<long> a(n * n, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i * n + j] = base(i, j).get_si();

  for (long d = -2; d <= 0; ++d) {
    a[k * n + k] = d;
    // Off-diagonal ranges; from order 3 on every 2x2 minor is proper, so
    // (M_ii + 2)(d + 2) >= b^2.
    std::vector<std::vector<long>> choices(k);
    for (std::size_t i = 0; i < k; ++i)
      for (long b = std::max(d, diag[i]) - 1; b <= 1; ++b)
        if (k < 2 || b * b <= (diag[i] + 2) * (d + 2)) choices[i].push_back(b);
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) continue;
    std::vector<std::size_t> pos(k, 0);
    for (;;) {
      for (std::size_t i = 0; i < k; ++i) a[i * n + k] = a[k * n + i] = choices[i][pos[i]];
      IntSymMatrix m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, a[i * n + j]);
      bool ok = true;
      std::vector<std::size_t> idx;
      for (std::size_t drop = 0; drop < k && ok; ++drop) {
        idx.clear();
        for (std::size_t i = 0; i < n; ++i)
          if (i != drop) idx.push_back(i);
        ok = psd_check_principal(m, idx, 2).is_psd;
      }
      if (ok) {
        if (psd_check(m, 2).is_psd) {
          out.frontier.push_back(canonical_key(a, n));
        } else if (irreducible(m)) {
          out.accepted.push_back(canonical_key(a, n));
        }
      }
      std::size_t i = 0;
      while (i < k && ++pos[i] == choices[i].size()) pos[i++] = 0;
      if (i == k) break;
    }
  }
  return out;
}

MhatEnumeration run_enumeration(std::size_t max_order, int jobs, bool parallel) {
  if (max_order == 0) throw InvalidArgument("max order must be positive");
  if (max_order > 10) throw InvalidArgument("max order above 10 is not supported");
  MhatEnumeration out;
  out.max_order = max_order;
  std::set<Key> accepted;
  std::vector<Key> frontier;
  for (long d = -4; d <= 0; ++d) {
    const Key k{1, d};
    if (d >= -2) frontier.push_back(k);
    if (mhat_check(from_key(k)).accepted) accepted.insert(k);
  }
  out.frontier_sizes.push_back(frontier.size());
  for (std::size_t order = 2; order <= max_order; ++order) {
    std::vector<LevelOutput> parts(frontier.size());
    const auto count = static_cast<long>(frontier.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
      for (long i = 0; i < count; ++i)
        parts[static_cast<std::size_t>(i)] = extend(frontier[static_cast<std::size_t>(i)]);
    } else {
      for (long i = 0; i < count; ++i)
        parts[static_cast<std::size_t>(i)] = extend(frontier[static_cast<std::size_t>(i)]);
    }
    std::set<Key> next;
    for (auto& p : parts) {
      next.insert(p.frontier.begin(), p.frontier.end());
      accepted.insert(p.accepted.begin(), p.accepted.end());
    }
    frontier.assign(next.begin(), next.end());
    out.frontier_sizes.push_back(frontier.size());
  }
  for (const Key& k : accepted) {
    IntSymMatrix m = from_key(k);
    if (!mhat_check(m).accepted)
      throw VerificationFailed("enumerated matrix fails the property check");
    out.candidates.push_back(std::move(m));
  }
  return out;
}

}  // namespace

MhatVerdict mhat_check(const IntSymMatrix& m) {
  const std::size_t n = m.order();
  auto fail = [](int p, std::string why) { return MhatVerdict{false, p, std::move(why)}; };
  if (!irreducible(m)) return fail(1, "matrix is reducible");
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) > 0) return fail(2, "positive diagonal entry at " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) > 1)
        return fail(2, "off-diagonal entry above 1 at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) < std::max(m(i, i), m(j, j)) - 1)
        return fail(3, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is below max(M_ii, M_jj) - 1");
  if (psd_check(m, 2).is_psd) return fail(4, "smallest eigenvalue is at least -2");
  if (!minors_ok(m)) return fail(5, "a proper principal submatrix has smallest eigenvalue below -2");
  return MhatVerdict{true, 0, {}};
}

IntSymMatrix canonical_form(const IntSymMatrix& m) {
  return from_key(canonical_key(entries(m), m.order()));
}

MhatEnumeration enumerate_mhat(std::size_t max_order, int jobs) {
  return run_enumeration(max_order, jobs, jobs > 1);
}

namespace reference {
MhatEnumeration enumerate_mhat(std::size_t max_order) { return run_enumeration(max_order, 1, false); }
}  // namespace reference

namespace {

class Realizer {
 public:
  explicit Realizer(const IntSymMatrix& m) : m_(m), n_(m.order()), resid_(n_), c_(n_ * n_, 0) {
    for (std::size_t i = 0; i < n_; ++i) resid_[i] = 1 - m(i, i).get_si();
  }

  bool run() { return next_fat(0, 0); }
  const std::vector<std::vector<std::size_t>>& fats() const { return fats_; }
  long shared(std::size_t i, std::size_t j) const { return c_[i * n_ + j]; }

 private:
  long lo(std::size_t i, std::size_t j) const { return std::max(0L, -m_(i, j).get_si()); }
  long hi(std::size_t i, std::size_t j) const { return 1 - m_(i, j).get_si(); }

  // Fats are generated grouped by their least vertex, with non-decreasing
  // masks inside a group.
  bool next_fat(std::size_t i, std::uint64_t min_mask) {
    while (i < n_ && resid_[i] == 0) {
      for (std::size_t j = i + 1; j < n_; ++j)
        if (c_[i * n_ + j] < lo(i, j)) return false;
      ++i;
      min_mask = 0;
    }
    if (i == n_) return true;
    // Bit b of a mask stands for vertex i + 1 + b.
    if (n_ - i - 1 > 62) throw OutOfScope("too many slim vertices to realize");
    const std::uint64_t limit = std::uint64_t{1} << (n_ - i - 1);
    for (std::uint64_t mask = min_mask; mask < limit; ++mask) {
      std::vector<std::size_t> members{i};
      bool usable = true;
      for (std::size_t b = 0; b + i + 1 < n_ && usable; ++b)
        if (mask >> b & 1u) {
          const std::size_t j = i + 1 + b;
          usable = resid_[j] > 0 && c_[i * n_ + j] < hi(i, j);
          members.push_back(j);
        }
      if (!usable) continue;
      bool ok = true;
      for (std::size_t a = 1; a < members.size() && ok; ++a)
        for (std::size_t b = a + 1; b < members.size() && ok; ++b)
          ok = c_[members[a] * n_ + members[b]] < hi(members[a], members[b]);
      if (!ok) continue;
      apply(members, +1);
      fats_.push_back(members);
      if (next_fat(i, mask)) return true;
      fats_.pop_back();
      apply(members, -1);
    }
    return false;
  }

  void apply(const std::vector<std::size_t>& members, long sign) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      resid_[members[a]] -= sign;
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        c_[members[a] * n_ + members[b]] += sign;
        c_[members[b] * n_ + members[a]] += sign;
      }
    }
  }

  const IntSymMatrix& m_;
  std::size_t n_;
  std::vector<long> resid_;
  std::vector<long> c_;
  std::vector<std::vector<std::size_t>> fats_;
};

}  // namespace

std::optional<HoffmanGraph> realize_special(const IntSymMatrix& m) {
  const std::size_t n = m.order();
  for (std::size_t i = 0; i < n; ++i) {
    if (m(i, i) > 0) throw InvalidArgument("diagonal entries must be at most 0");
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) > 1) throw InvalidArgument("off-diagonal entries must be at most 1");
  }
  Realizer r(m);
  if (!r.run()) return std::nullopt;
  Graph slim(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const long a = m(i, j).get_si() + r.shared(i, j);
      if (a == 1) slim.add_edge(i, j);
    }
  HoffmanGraph h = HoffmanGraph::from_slim_and_fat(slim, r.fats());
  if (!(special_matrix(h).plus_identity(1) == m))
    throw VerificationFailed("realized graph does not reproduce the matrix");
  return h;
}

ForbiddenVerdict minimal_forbidden_check(const HoffmanGraph& f) {
  const HoffmanValidation v = validate(f);
  if (!v.ok || !v.is_fat) throw PreconditionViolated("input is not a fat Hoffman graph");
  if (psd_check(special_matrix(f), 3).is_psd)
    throw NotForbidden("smallest eigenvalue is at least -3");
  const std::size_t total = f.graph().order();
  if (total > 63) throw OutOfScope("minimality check supports at most 63 vertices");
  const Graph& g = f.graph();

  std::vector<std::uint64_t> passed;  // vertex masks known to lie in the -3 class
  std::vector<std::size_t> pick;
  for (std::size_t k = total - 1; k >= 1; --k) {
    pick.resize(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::uint64_t mask = 0;
      for (std::size_t v : pick) mask |= std::uint64_t{1} << v;
      bool good = std::any_of(pick.begin(), pick.end(), [&](std::size_t v) { return f.is_slim(v); });
      for (std::size_t a = 0; a < k && good; ++a) {
        const std::size_t v = pick[a];
        bool has = false;
        for (std::size_t w : pick)
          if (g.adjacent(v, w) && f.label(w) != f.label(v)) {
            has = true;
            break;
          }
        good = has;
      }
      const bool covered = good && std::any_of(passed.begin(), passed.end(),
                                               [&](std::uint64_t p) { return (mask & ~p) == 0; });
      if (good && !covered) {
        HoffmanGraph sub = induced_hoffman(f, pick);
        if (!psd_check(special_matrix(sub), 3).is_psd) {
          ForbiddenVerdict out;
          out.witness_vertices = pick;
          out.witness = std::move(sub);
          return out;
        }
        passed.push_back(mask);
      }
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i-- > 0 && pick[i] == total - k + i) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return ForbiddenVerdict{true, std::nullopt, std::nullopt};
}

EigenBracket forbidden_epsilon(const std::vector<HoffmanGraph>& graphs, const Rational& width) {
  if (graphs.empty()) throw InvalidArgument("no graphs given");
  std::optional<EigenBracket> best;
  for (const auto& h : graphs) {
    EigenBracket b = lambda_min_bracket(special_matrix(h), width);
    if (!best) {
      best = b;
    } else {
      best->lo = std::max(best->lo, b.lo);
      best->hi = std::max(best->hi, b.hi);
    }
  }
  return *best;
}

}  // namespace hlat
