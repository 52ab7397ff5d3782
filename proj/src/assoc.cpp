#include "hlat/assoc.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <span>
#include <numeric>

#include "hlat/errors.hpp"

namespace hlat {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits to_bits(const VertexSet& s, std::size_t words) {
  Bits b(words, 0);
  for (std::size_t v : s) b[v >> 6] |= std::uint64_t{1} << (v & 63);
  return b;
}

std::size_t count(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t count_and(const Bits& a, std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

bool test(const Bits& b, std::size_t v) { return (b[v >> 6] >> (v & 63)) & 1u; }

class CliqueEnumerator {
 public:
  CliqueEnumerator(const Graph& g, std::size_t n) : g_(g), n_(n), words_(g.words()) {}

  std::vector<VertexSet> run() {
    Bits p(words_, 0), x(words_, 0);
    for (std::size_t v = 0; v < g_.order(); ++v) p[v >> 6] |= std::uint64_t{1} << (v & 63);
    VertexSet r;
    expand(r, p, x);
    for (auto& c : out_) std::sort(c.begin(), c.end());
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  void expand(VertexSet& r, Bits& p, Bits& x) {
    const std::size_t pc = count(p);
    if (pc == 0) {
      if (count(x) == 0 && r.size() >= n_) out_.push_back(r);
      return;
    }
    if (r.size() + pc < n_) return;
    // Pivot maximizing |P ∩ N(u)| over P ∪ X.
    std::size_t pivot = 0, best = 0;
    bool have = false;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = p[w] | x[w];
      while (bits) {
        const std::size_t u = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::size_t c = count_and(p, g_.row(u));
        if (!have || c > best) {
          pivot = u;
          best = c;
          have = true;
        }
      }
    }
    const auto prow = g_.row(pivot);
    Bits cand(words_);
    for (std::size_t w = 0; w < words_; ++w) cand[w] = p[w] & ~prow[w];
    for (std::size_t w = 0; w < words_; ++w) {
      while (cand[w]) {
        const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(cand[w]));
        cand[w] &= cand[w] - 1;
        const auto row = g_.row(v);
        Bits np(words_), nx(words_);
        for (std::size_t i = 0; i < words_; ++i) {
          np[i] = p[i] & row[i];
          nx[i] = x[i] & row[i];
        }
        r.push_back(v);
        expand(r, np, nx);
        r.pop_back();
        p[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
        x[v >> 6] |= std::uint64_t{1} << (v & 63);
      }
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t words_;
  std::vector<VertexSet> out_;
};

// Grows an m-clique inside `allowed`, in increasing vertex order.
bool grow_clique(const Graph& g, VertexSet& chosen, const Bits& allowed, std::size_t need,
                 std::size_t start, const std::function<bool(const Bits&)>& done) {
  if (need == 0) return done(allowed);
  if (count(allowed) < need) return false;
  for (std::size_t v = start; v < g.order(); ++v) {
    if (!test(allowed, v)) continue;
    const auto row = g.row(v);
    Bits next(allowed.size());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = allowed[i] & row[i];
    chosen.push_back(v);
    if (grow_clique(g, chosen, next, need - 1, v + 1, done)) return true;
    chosen.pop_back();
  }
  return false;
}

std::vector<CliqueClass> classes_from(const Graph& g, const std::vector<VertexSet>& cliques,
                                      const AssocParams& params) {
  const std::size_t k = cliques.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<char> eq(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    eq[i * k + i] = 1;
    for (std::size_t j = i + 1; j < k; ++j)
      if (cliques_equivalent(g, cliques[i], cliques[j], params.m)) {
        eq[i * k + j] = eq[j * k + i] = 1;
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == k) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  std::vector<CliqueClass> out;
  for (const auto& grp : groups) {
    for (std::size_t a = 0; a < grp.size(); ++a)
      for (std::size_t b = a + 1; b < grp.size(); ++b)
        if (!eq[grp[a] * k + grp[b]])
          throw PreconditionViolated(
              "clique equivalence is not transitive (n = " + std::to_string(params.n) +
              ", m = " + std::to_string(params.m) + "); n >= (m+1)^2 restores it");
    CliqueClass c;
    c.params = params;
    for (std::size_t i : grp) c.members.push_back(cliques[i]);
    c.quasi_clique = quasi_clique(g, c.members.front(), params.m);
    for (std::size_t i = 1; i < c.members.size() && c.representative_consistent; ++i)
      c.representative_consistent = quasi_clique(g, c.members[i], params.m) == c.quasi_clique;
    out.push_back(std::move(c));
  }
  return out;
}

AssociatedGraph assemble(const Graph& g, std::vector<CliqueClass> classes) {
  std::vector<std::vector<std::size_t>> fats;
  for (const auto& c : classes) fats.push_back(c.quasi_clique);
  AssociatedGraph a;
  a.hoffman = HoffmanGraph::from_slim_and_fat(g, fats);
  a.classes = std::move(classes);
  const HoffmanValidation v = validate(a.hoffman);
  if (!v.ok) throw VerificationFailed("associated graph is not a Hoffman graph: " + v.violations[0]);
  a.is_fat = v.is_fat;
  return a;
}

}  // namespace

AssocParams AssocParams::make(std::size_t m, std::size_t n) {
  if (m < 2) throw InvalidArgument("m must be at least 2");
  if (n < (m + 1) * (m + 1))
    throw InvalidArgument("n must be at least (m+1)^2 = " + std::to_string((m + 1) * (m + 1)));
  return AssocParams{m, n, false};
}

AssocParams AssocParams::relaxed(std::size_t m, std::size_t n) {
  if (m < 2) throw InvalidArgument("m must be at least 2");
  if (n < 1) throw InvalidArgument("n must be positive");
  return AssocParams{m, n, n < (m + 1) * (m + 1)};
}

std::vector<VertexSet> large_maximal_cliques(const Graph& g, std::size_t n) {
  if (g.order() == 0) return {};
  return CliqueEnumerator(g, n).run();
}

bool k2m_free_spectral(const Graph& g, std::size_t m) {
  if (m < 12 || g.order() == 0) return false;
  return psd_check(g.adjacency(), 3).is_psd;
}

std::optional<VertexSet> k2m_witness(const Graph& g, std::size_t m) {
  if (m == 0) throw InvalidArgument("m must be positive");
  if (k2m_free_spectral(g, m)) return std::nullopt;
  const std::size_t words = g.words();
  for (std::size_t apex = 0; apex < g.order(); ++apex) {
    if (g.degree(apex) < m || g.order() - 1 - g.degree(apex) < m) continue;
    const auto arow = g.row(apex);
    Bits near(words), far(words);
    for (std::size_t i = 0; i < words; ++i) {
      near[i] = arow[i];
      far[i] = ~arow[i];
    }
    far[apex >> 6] &= ~(std::uint64_t{1} << (apex & 63));
    if (g.order() % 64) far[words - 1] &= (std::uint64_t{1} << (g.order() % 64)) - 1;
    VertexSet chosen;
    const bool found = grow_clique(g, chosen, near, m, 0, [&](const Bits&) {
      // common neighbours of the chosen half among the apex's non-neighbours
      Bits rest = far;
      for (std::size_t v : chosen) {
        const auto row = g.row(v);
        for (std::size_t i = 0; i < words; ++i) rest[i] &= row[i];
      }
      return grow_clique(g, chosen, rest, m, 0, [](const Bits&) { return true; });
    });
    if (found) {
      std::sort(chosen.begin(), chosen.end());
      chosen.push_back(apex);
      return chosen;
    }
  }
  return std::nullopt;
}

bool cliques_equivalent(const Graph& g, const VertexSet& a, const VertexSet& b, std::size_t m) {
  const Bits ba = to_bits(a, g.words()), bb = to_bits(b, g.words());
  auto one_way = [&](const VertexSet& from, const Bits& to, std::size_t to_size) {
    for (std::size_t x : from) {
      const std::size_t non = to_size - count_and(to, g.row(x)) - (test(to, x) ? 1 : 0);
      if (non + 1 > m) return false;
    }
    return true;
  };
  return one_way(a, bb, b.size()) && one_way(b, ba, a.size());
}

VertexSet quasi_clique(const Graph& g, const VertexSet& c, std::size_t m) {
  const Bits bc = to_bits(c, g.words());
  VertexSet out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const std::size_t non = c.size() - count_and(bc, g.row(x)) - (test(bc, x) ? 1 : 0);
    if (non + 1 <= m) out.push_back(x);
  }
  return out;
}

std::vector<CliqueClass> clique_classes(const Graph& g, const AssocParams& params) {
  if (auto w = k2m_witness(g, params.m))
    throw PreconditionViolated("graph contains an induced K~_" + std::to_string(2 * params.m));
  return classes_from(g, large_maximal_cliques(g, params.n), params);
}

AssociatedGraph associated_hoffman(const Graph& g, const AssocParams& params) {
  return assemble(g, clique_classes(g, params));
}

std::optional<AssocSearch> find_fat_associated(const Graph& g, std::size_t m, std::size_t n_from,
                                               bool require_psd) {
  if (n_from == 0) n_from = 1;
  if (k2m_witness(g, m)) return std::nullopt;
  const std::vector<VertexSet> all = large_maximal_cliques(g, n_from);
  std::size_t largest = 0;
  for (const auto& c : all) largest = std::max(largest, c.size());
  for (std::size_t n = n_from; n <= largest; ++n) {
    std::vector<VertexSet> cliques;
    for (const auto& c : all)
      if (c.size() >= n) cliques.push_back(c);
    std::vector<CliqueClass> classes;
    try {
      classes = classes_from(g, cliques, AssocParams::relaxed(m, n));
    } catch (const PreconditionViolated&) {
      continue;
    }
    AssocSearch s;
    s.n = n;
    s.graph = assemble(g, std::move(classes));
    if (!s.graph.is_fat) continue;
    IntSymMatrix sp = special_matrix(s.graph.hoffman);
    s.shifted_psd = psd_check(sp, 3).is_psd;
    if (require_psd && !s.shifted_psd) continue;
    return s;
  }
  return std::nullopt;
}

}  // namespace hlat
