#include "hlat/families.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <random>

#include "hlat/errors.hpp"
#include "hlat/io.hpp"

namespace hlat {

Graph path_graph(std::size_t n) {
  if (n == 0) throw InvalidArgument("path needs at least one vertex");
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs at least three vertices");
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph complete_graph(std::size_t n) {
  if (n == 0) throw InvalidArgument("complete graph needs at least one vertex");
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph claw_graph(std::size_t t) {
  if (t == 0) throw InvalidArgument("claw needs at least one leaf");
  Graph g(t + 1);
  for (std::size_t i = 1; i <= t; ++i) g.add_edge(0, i);
  return g;
}

Graph k2m_tilde(std::size_t m) {
  if (m == 0) throw InvalidArgument("m must be positive");
  Graph g(2 * m + 1);
  for (std::size_t i = 0; i < 2 * m; ++i)
    for (std::size_t j = i + 1; j < 2 * m; ++j) g.add_edge(i, j);
  for (std::size_t i = 0; i < m; ++i) g.add_edge(i, 2 * m);
  return g;
}

Graph e6_tilde() {
  const std::pair<std::size_t, std::size_t> e[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}};
  return Graph::from_edges(7, e);
}

Graph petersen_graph() {
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

Graph line_graph(const Graph& g) {
  const auto e = g.edges();
  Graph l(e.size());
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b)
      if (e[a].first == e[b].first || e[a].first == e[b].second || e[a].second == e[b].first ||
          e[a].second == e[b].second)
        l.add_edge(a, b);
  return l;
}

Graph k_point_cone(const Graph& g, std::size_t k) {
  const std::size_t n = g.order();
  Graph c(n + k);
  for (const auto& [u, v] : g.edges()) c.add_edge(u, v);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t v = 0; v < n; ++v) c.add_edge(n + a, v);
    for (std::size_t b = a + 1; b < k; ++b) c.add_edge(n + a, n + b);
  }
  return c;
}

Graph cone_with_clique(const Graph& base, std::size_t m) {
  const std::size_t n = base.order();
  Graph c = k_point_cone(base, 1);
  Graph g(n + 1 + m);
  for (const auto& [u, v] : c.edges()) g.add_edge(u, v);
  for (std::size_t a = 0; a < m; ++a) {
    g.add_edge(n, n + 1 + a);
    for (std::size_t b = a + 1; b < m; ++b) g.add_edge(n + 1 + a, n + 1 + b);
  }
  return g;
}

Graph clique_replacement_graph(const HoffmanGraph& h, std::size_t n) {
  return replace_all(h, n).graph.graph();
}

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

GeneralizedLineSample random_generalized_line_graph(std::size_t n, std::size_t dim,
                                                    std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("need at least one vertex");
  if (dim < 2) throw InvalidArgument("dimension must be at least 2");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> coord(0, dim - 1);
  std::bernoulli_distribution flip(0.5);
  using Col = std::vector<std::int64_t>;
  auto ip = [](const Col& a, const Col& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  for (int restart = 0; restart < 1000; ++restart) {
    std::vector<Col> cols;
    int attempts = 0;
    while (cols.size() < n && attempts < 20000) {
      ++attempts;
      std::size_t i = coord(rng), j = coord(rng);
      if (i == j) continue;
      Col c(dim, 0);
      c[i] = flip(rng) ? -1 : 1;
      c[j] = flip(rng) ? -1 : 1;
      bool ok = true, linked = cols.empty();
      for (const auto& o : cols) {
        const std::int64_t x = ip(c, o);
        if (x != 0 && x != 1) {
          ok = false;
          break;
        }
        linked = linked || x == 1;
      }
      if (ok && linked) cols.push_back(std::move(c));
    }
    if (cols.size() < n) continue;
    Graph g(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (ip(cols[a], cols[b]) == 1) g.add_edge(a, b);
    return GeneralizedLineSample{std::move(g), std::move(cols)};
  }
  throw InvalidArgument("could not build a connected sample; increase the dimension");
}

HoffmanGraph random_fat_hoffman(std::size_t n_slim, std::size_t n_fat, double p,
                                std::size_t max_fat_degree, std::uint64_t seed) {
  if (n_slim == 0 || n_fat == 0 || max_fat_degree == 0)
    throw InvalidArgument("need slim vertices, fat vertices and a positive fat degree");
  std::mt19937_64 rng(seed);
  Graph slim = random_graph(n_slim, p, rng());
  std::vector<std::vector<std::size_t>> fat_nbrs(n_fat);
  std::uniform_int_distribution<std::size_t> deg(1, std::min(max_fat_degree, n_fat));
  std::vector<std::size_t> fats(n_fat);
  for (std::size_t x = 0; x < n_slim; ++x) {
    std::iota(fats.begin(), fats.end(), 0);
    std::shuffle(fats.begin(), fats.end(), rng);
    const std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) fat_nbrs[fats[k]].push_back(x);
  }
  std::vector<std::vector<std::size_t>> kept;
  for (auto& f : fat_nbrs)
    if (!f.empty()) {
      std::sort(f.begin(), f.end());
      kept.push_back(std::move(f));
    }
  return HoffmanGraph::from_slim_and_fat(slim, kept);
}

std::string SrgParameters::to_string() const {
  return "(" + std::to_string(v) + "," + std::to_string(k) + "," + std::to_string(lambda) + "," +
         std::to_string(mu) + ")";
}

std::optional<SrgParameters> srg_parameters(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 2) return std::nullopt;
  const std::size_t k = g.degree(0);
  for (std::size_t v = 0; v < n; ++v)
    if (g.degree(v) != k) return std::nullopt;
  if (k == 0 || k == n - 1) return std::nullopt;
  std::optional<std::size_t> lam, mu;
  for (std::size_t u = 0; u < n; ++u) {
    const auto ru = g.row(u);
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto rv = g.row(v);
      std::size_t common = 0;
      for (std::size_t w = 0; w < ru.size(); ++w)
        common += static_cast<std::size_t>(std::popcount(ru[w] & rv[w]));
      auto& slot = g.adjacent(u, v) ? lam : mu;
      if (!slot) slot = common;
      else if (*slot != common) return std::nullopt;
    }
  }
  return SrgParameters{n, k, lam.value_or(0), mu.value_or(0)};
}

IngestReport ingest_graph(const std::string& path, std::optional<SrgParameters> expect) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  IngestReport r;
  r.graph = read_graph(in);
  r.srg = srg_parameters(r.graph);
  r.expected = expect;
  if (expect) {
    r.matches_expected = r.srg && *r.srg == *expect;
    if (!r.matches_expected)
      throw VerificationFailed("graph is not strongly regular with parameters " + expect->to_string() +
                               (r.srg ? " (found " + r.srg->to_string() + ")" : ""));
  }
  return r;
}

}  // namespace hlat
