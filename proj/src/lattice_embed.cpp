// Backtracking search for integral realizations of a Gram matrix.

#include <algorithm>
#include <cmath>
#include <limits>

#include "hlat/errors.hpp"
#include "hlat/lattice.hpp"

namespace hlat {

namespace {

std::int64_t isqrt(std::int64_t x) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

struct Problem {
  std::size_t n = 0;
  std::vector<std::int64_t> t;  // scaled targets, row-major
  std::vector<std::size_t> order;
  std::vector<std::optional<std::pair<std::size_t, int>>> copy_of;
  std::vector<char> zero;
  std::size_t dim = 0;
  std::int64_t norm_sum = 0;

  std::int64_t at(std::size_t i, std::size_t j) const { return t[i * n + j]; }
};

Problem make_problem(const GramLattice& b, std::size_t s, const DecomposeOptions& opts) {
  Problem p;
  const IntSymMatrix& g = b.gram();
  p.n = g.order();
  p.t.resize(p.n * p.n);
  const BigInt limit(std::numeric_limits<std::int32_t>::max());
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) {
      BigInt v = g(i, j) * static_cast<unsigned long>(s);
      if (abs(v) > limit) throw OutOfScope("Gram entries too large for the search");
      p.t[i * p.n + j] = v.get_si();
    }
  p.zero.assign(p.n, 0);
  p.copy_of.assign(p.n, std::nullopt);

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.at(i, i) == 0) {
      p.zero[i] = 1;
      continue;
    }
    pending.push_back(i);
  }
  // Decreasing norm; among equal norms prefer the generator most tied to
  // those already placed.
  while (!pending.empty()) {
    auto best = pending.begin();
    std::size_t best_links = 0;
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      std::size_t links = 0;
      for (std::size_t q : p.order) links += p.at(*it, q) != 0;
      const std::int64_t a = p.at(*it, *it), c = p.at(*best, *best);
      if (a > c || (a == c && links > best_links)) {
        best = it;
        best_links = links;
      } else if (it == best) {
        best_links = links;
      }
    }
    const std::size_t c = *best;
    pending.erase(best);
    for (std::size_t q : p.order)
      if (p.at(q, q) == p.at(c, c) && std::llabs(p.at(c, q)) == p.at(c, c)) {
        p.copy_of[c] = std::make_pair(q, p.at(c, q) > 0 ? 1 : -1);
        break;
      }
    if (!p.copy_of[c]) {
      p.order.push_back(c);
      p.norm_sum += p.at(c, c);
    }
  }
  const auto sum = static_cast<std::size_t>(p.norm_sum);
  if (opts.dimension) {
    p.dim = *opts.dimension;
  } else {
    p.dim = std::min(sum, rank(g) + opts.max_extra_dim);
  }
  return p;
}

// Non-increasing positive parts whose squares sum to `total`, at most
// `slots` of them.
void square_partitions(std::int64_t total, std::size_t slots, std::int64_t cap,
                       std::vector<std::int64_t>& cur,
                       std::vector<std::vector<std::int64_t>>& out) {
  if (total == 0) {
    out.push_back(cur);
    return;
  }
  if (slots == 0) return;
  for (std::int64_t v = std::min(cap, isqrt(total)); v >= 1; --v) {
    if (static_cast<std::int64_t>(slots) * v * v < total) break;
    cur.push_back(v);
    square_partitions(total - v * v, slots - 1, v, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::int64_t>> square_partitions(std::int64_t total, std::size_t slots) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> cur;
  square_partitions(total, slots, total, cur, out);
  return out;
}

enum class Outcome { found, exhausted, out_of_budget };

class Search {
 public:
  Search(const Problem& p, std::uint64_t budget)
      : p_(p), budget_(budget), cols_(p.order.size(), IntColumn(p.dim, 0)),
        tails_(p.order.size(), std::vector<std::int64_t>(p.dim + 1, 0)),
        resid_(p.order.size(), 0), same_(p.dim, 0) {}

  Outcome run(const std::vector<std::int64_t>& first) {
    std::copy(first.begin(), first.end(), cols_[0].begin());
    used_ = first.size();
    seal(0);
    return place(1);
  }

  std::uint64_t nodes() const { return nodes_; }
  std::size_t used() const { return used_; }
  const std::vector<IntColumn>& columns() const { return cols_; }

 private:
  void seal(std::size_t k) {
    auto& tail = tails_[k];
    tail[p_.dim] = 0;
    for (std::size_t q = p_.dim; q-- > 0;) tail[q] = tail[q + 1] + cols_[k][q] * cols_[k][q];
  }

  Outcome place(std::size_t k) {
    if (k == p_.order.size()) return Outcome::found;
    const std::size_t c = p_.order[k];
    for (std::size_t j = 0; j < k; ++j) resid_[j] = p_.at(c, p_.order[j]);
    for (std::size_t q = 1; q < used_; ++q) {
      bool same = true;
      for (std::size_t j = 0; j < k && same; ++j) same = cols_[j][q] == cols_[j][q - 1];
      same_[q] = same;
    }
    std::fill(cols_[k].begin(), cols_[k].end(), 0);
    return assign(k, 0, p_.at(c, c));
  }

  Outcome assign(std::size_t k, std::size_t q, std::int64_t rem) {
    if (++nodes_ > budget_) return Outcome::out_of_budget;
    IntColumn& col = cols_[k];
    if (q == used_) {
      for (std::size_t j = 0; j < k; ++j)
        if (resid_[j] != 0) return Outcome::exhausted;
      const std::size_t opened = used_;
      for (const auto& parts : square_partitions(rem, p_.dim - used_)) {
        for (std::size_t a = 0; a < parts.size(); ++a) col[opened + a] = parts[a];
        used_ = opened + parts.size();
        seal(k);
        const Outcome o = place(k + 1);
        if (o != Outcome::exhausted) return o;
        for (std::size_t a = 0; a < parts.size(); ++a) col[opened + a] = 0;
        used_ = opened;
        for (std::size_t j = 0; j < k; ++j) resid_[j] = 0;
        // place() of deeper columns overwrote same_; restore it for this level.
        for (std::size_t r = 1; r < used_; ++r) {
          bool same = true;
          for (std::size_t j = 0; j < k && same; ++j) same = cols_[j][r] == cols_[j][r - 1];
          same_[r] = same;
        }
      }
      return Outcome::exhausted;
    }
    const std::int64_t bound = isqrt(rem);
    const std::int64_t hi = (q > 0 && same_[q]) ? std::min(bound, col[q - 1]) : bound;
    for (std::int64_t a = 0; a <= 2 * bound; ++a) {
      // 0, 1, -1, 2, -2, ...
      const std::int64_t v = (a % 2 == 1) ? (a + 1) / 2 : -(a / 2);
      if (v > hi || v < -bound) continue;
      const std::int64_t left = rem - v * v;
      bool ok = true;
      for (std::size_t j = 0; j < k; ++j) {
        const std::int64_t r = resid_[j] - v * cols_[j][q];
        if (static_cast<__int128>(r) * r > static_cast<__int128>(left) * tails_[j][q + 1]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (std::size_t j = 0; j < k; ++j) resid_[j] -= v * cols_[j][q];
      col[q] = v;
      const Outcome o = assign(k, q + 1, left);
      if (o != Outcome::exhausted) return o;
      col[q] = 0;
      for (std::size_t j = 0; j < k; ++j) resid_[j] += v * cols_[j][q];
    }
    return Outcome::exhausted;
  }

  const Problem& p_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::size_t used_ = 0;
  std::vector<IntColumn> cols_;
  std::vector<std::vector<std::int64_t>> tails_;
  std::vector<std::int64_t> resid_;
  std::vector<char> same_;
};

struct ShardResult {
  Outcome outcome = Outcome::exhausted;
  std::uint64_t nodes = 0;
  std::size_t used = 0;
  std::vector<IntColumn> columns;
};

ShardResult run_shard(const Problem& p, const std::vector<std::int64_t>& first,
                      std::uint64_t budget) {
  Search s(p, budget);
  ShardResult r;
  r.outcome = s.run(first);
  r.nodes = s.nodes();
  if (r.outcome == Outcome::found) {
    r.used = s.used();
    r.columns = s.columns();
  }
  return r;
}

DecomposeResult finish(const GramLattice& b, std::size_t s, const Problem& p,
                       const std::vector<ShardResult>& shards, std::size_t evaluated) {
  DecomposeResult out;
  out.dimension = p.dim;
  out.dimension_complete = p.dim >= static_cast<std::size_t>(p.norm_sum);
  out.status = SearchStatus::infeasible;
  for (std::size_t i = 0; i < evaluated; ++i) {
    const ShardResult& r = shards[i];
    out.nodes += r.nodes;
    if (r.outcome == Outcome::out_of_budget) {
      out.status = SearchStatus::inconclusive;
      return out;
    }
    if (r.outcome == Outcome::found) {
      std::vector<IntColumn> cols(p.n, IntColumn(r.used, 0));
      for (std::size_t k = 0; k < p.order.size(); ++k)
        std::copy(r.columns[k].begin(), r.columns[k].begin() + static_cast<std::ptrdiff_t>(r.used),
                  cols[p.order[k]].begin());
      for (std::size_t c = 0; c < p.n; ++c)
        if (const auto& cp = p.copy_of[c])
          for (std::size_t d = 0; d < r.used; ++d) cols[c][d] = cp->second * cols[cp->first][d];
      out.decomposition.emplace(s, std::move(cols), b.gram());
      out.status = SearchStatus::feasible;
      return out;
    }
  }
  return out;
}

DecomposeResult trivial_result(const GramLattice& b, std::size_t s, const Problem& p) {
  DecomposeResult out;
  out.status = SearchStatus::feasible;
  out.dimension = p.dim;
  out.dimension_complete = true;
  out.decomposition.emplace(s, std::vector<IntColumn>(p.n), b.gram());
  return out;
}

DecomposeResult search(const GramLattice& b, std::size_t s, const DecomposeOptions& opts,
                       bool parallel) {
  if (s == 0) throw InvalidArgument("scale must be positive");
  const Problem p = make_problem(b, s, opts);
  if (p.order.empty()) return trivial_result(b, s, p);
  const auto firsts = square_partitions(p.at(p.order[0], p.order[0]), p.dim);
  std::vector<ShardResult> shards(firsts.size());
  if (!parallel) {
    std::size_t i = 0;
    for (; i < firsts.size(); ++i) {
      shards[i] = run_shard(p, firsts[i], opts.node_budget);
      if (shards[i].outcome != Outcome::exhausted) {
        ++i;
        break;
      }
    }
    return finish(b, s, p, shards, i);
  }
  const auto count = static_cast<long>(firsts.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, opts.jobs))
  for (long i = 0; i < count; ++i)
    shards[static_cast<std::size_t>(i)] = run_shard(p, firsts[static_cast<std::size_t>(i)], opts.node_budget);
  std::size_t evaluated = 0;
  while (evaluated < shards.size()) {
    if (shards[evaluated++].outcome != Outcome::exhausted) break;
  }
  return finish(b, s, p, shards, evaluated);
}

}  // namespace

DecomposeResult decompose_generic(const GramLattice& b, std::size_t s, const DecomposeOptions& opts) {
  return search(b, s, opts, opts.jobs > 1);
}

namespace reference {
DecomposeResult decompose_generic(const GramLattice& b, std::size_t s, const DecomposeOptions& opts) {
  return search(b, s, opts, false);
}
}  // namespace reference

}  // namespace hlat
