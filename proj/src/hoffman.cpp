#include "hlat/hoffman.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

#include "hlat/errors.hpp"

namespace hlat {

Graph::Graph(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0), deg_(n, 0) {}

Graph Graph::from_edges(std::size_t n,
                        std::span<const std::pair<std::size_t, std::size_t>> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_)
    throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") out of range for " + std::to_string(n_) + " vertices");
  if (u == v) throw InvalidArgument("loop at vertex " + std::to_string(u));
  if (adjacent(u, v)) return;
  bits_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  bits_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  ++deg_[u];
  ++deg_[v];
  ++m_;
}

std::size_t Graph::min_degree() const {
  if (n_ == 0) return 0;
  return *std::min_element(deg_.begin(), deg_.end());
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  out.reserve(deg_[v]);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t x = bits_[v * words_ + w];
    while (x) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(m_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

IntSymMatrix Graph::adjacency() const {
  IntSymMatrix a(n_);
  for (const auto& [u, v] : edges()) a.set(u, v, 1);
  return a;
}

Graph Graph::complement() const {
  Graph c(n_);
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) c.add_edge(u, v);
  return c;
}

Graph Graph::induced(std::span<const std::size_t> vertices) const {
  Graph g(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= n_) throw InvalidArgument("induced vertex out of range");
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j])) g.add_edge(i, j);
  }
  return g;
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::deque<std::size_t> queue{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        queue.push_back(v);
      }
  }
  return count == n_;
}

HoffmanGraph::HoffmanGraph(Graph g, std::vector<Label> labels)
    : g_(std::move(g)), labels_(std::move(labels)) {
  if (labels_.size() != g_.order()) throw InvalidArgument("one label per vertex is required");
  for (std::size_t v = 0; v < labels_.size(); ++v)
    (labels_[v] == Label::slim ? slim_ : fat_).push_back(v);
}

HoffmanGraph HoffmanGraph::from_slim_and_fat(
    const Graph& slim, const std::vector<std::vector<std::size_t>>& fat_neighbors) {
  const std::size_t s = slim.order();
  Graph g(s + fat_neighbors.size());
  for (const auto& [u, v] : slim.edges()) g.add_edge(u, v);
  for (std::size_t f = 0; f < fat_neighbors.size(); ++f)
    for (std::size_t x : fat_neighbors[f]) {
      if (x >= s) throw InvalidArgument("fat neighbour is not a slim vertex");
      g.add_edge(x, s + f);
    }
  std::vector<Label> labels(s, Label::slim);
  labels.resize(s + fat_neighbors.size(), Label::fat);
  return HoffmanGraph(std::move(g), std::move(labels));
}

std::vector<std::size_t> HoffmanGraph::fat_neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t w : g_.neighbors(v))
    if (is_fat(w)) out.push_back(w);
  return out;
}

std::vector<std::size_t> HoffmanGraph::slim_neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t w : g_.neighbors(v))
    if (is_slim(w)) out.push_back(w);
  return out;
}

Graph HoffmanGraph::slim_graph() const { return g_.induced(slim_); }

HoffmanValidation validate(const HoffmanGraph& h) {
  HoffmanValidation r;
  for (std::size_t f : h.fat_vertices()) {
    if (h.slim_neighbors(f).empty())
      r.violations.push_back("fat vertex " + std::to_string(f) + " has no slim neighbour");
    for (std::size_t w : h.fat_neighbors(f))
      if (f < w)
        r.violations.push_back("fat vertices " + std::to_string(f) + " and " + std::to_string(w) +
                               " are adjacent");
  }
  r.ok = r.violations.empty();
  r.is_fat = std::all_of(h.slim_vertices().begin(), h.slim_vertices().end(),
                         [&](std::size_t x) { return !h.fat_neighbors(x).empty(); });
  return r;
}

IntSymMatrix special_matrix(const HoffmanGraph& h) {
  const HoffmanValidation v = validate(h);
  if (!v.ok) throw InvalidArgument("not a Hoffman graph: " + v.violations.front());
  const auto& slim = h.slim_vertices();
  const auto& fat = h.fat_vertices();
  const std::size_t s = slim.size();
  if (s == 0) throw InvalidArgument("Hoffman graph has no slim vertices");
  const Graph& g = h.graph();

  // A_s - C C^T
  IntSymMatrix sp(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      long x = (i != j && g.adjacent(slim[i], slim[j])) ? 1 : 0;
      for (std::size_t f : fat) x -= (g.adjacent(slim[i], f) && g.adjacent(slim[j], f)) ? 1 : 0;
      sp.set(i, j, x);
    }

  // Cross-check with the fat-neighbourhood entry formulas.
  std::vector<std::vector<std::size_t>> nf(s);
  for (std::size_t i = 0; i < s; ++i) nf[i] = h.fat_neighbors(slim[i]);
  for (std::size_t i = 0; i < s; ++i) {
    if (sp(i, i) != -static_cast<long>(nf[i].size()))
      throw VerificationFailed("special matrix diagonal disagrees with fat degree");
    for (std::size_t j = i + 1; j < s; ++j) {
      std::vector<std::size_t> common;
      std::set_intersection(nf[i].begin(), nf[i].end(), nf[j].begin(), nf[j].end(),
                            std::back_inserter(common));
      const long expect = (g.adjacent(slim[i], slim[j]) ? 1 : 0) - static_cast<long>(common.size());
      if (sp(i, j) != expect)
        throw VerificationFailed("special matrix off-diagonal disagrees with common fat count");
    }
  }
  return sp;
}

HoffmanGraph induced_hoffman(const HoffmanGraph& h, std::span<const std::size_t> vertices) {
  std::vector<std::size_t> vs(vertices.begin(), vertices.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<std::size_t> kept;
  for (std::size_t v : vs) {
    if (v >= h.graph().order()) throw InvalidArgument("vertex out of range");
    if (h.is_fat(v)) {
      const bool has_slim = std::any_of(vs.begin(), vs.end(), [&](std::size_t w) {
        return h.is_slim(w) && h.graph().adjacent(v, w);
      });
      if (!has_slim) continue;
    }
    kept.push_back(v);
  }
  std::vector<Label> labels;
  for (std::size_t v : kept) labels.push_back(h.label(v));
  return HoffmanGraph(h.graph().induced(kept), std::move(labels));
}

HoffmanGraph generated_subgraph(const HoffmanGraph& h, std::span<const std::size_t> w) {
  std::vector<std::size_t> vs;
  for (std::size_t x : w) {
    if (x >= h.graph().order()) throw InvalidArgument("vertex out of range");
    if (h.is_fat(x)) throw InvalidArgument("generating set contains fat vertex " + std::to_string(x));
    vs.push_back(x);
  }
  for (std::size_t f : h.fat_vertices())
    if (std::any_of(w.begin(), w.end(), [&](std::size_t x) { return h.graph().adjacent(f, x); }))
      vs.push_back(f);
  return induced_hoffman(h, vs);
}

HoffmanGraph canonical_fat(const Graph& slim, CanonicalMode mode) {
  if (slim.order() == 0) throw InvalidArgument("canonical fat graph of an empty graph");
  std::vector<std::vector<std::size_t>> fats;
  if (mode == CanonicalMode::p) {
    for (std::size_t x = 0; x < slim.order(); ++x) fats.push_back({x});
  } else {
    std::vector<std::size_t> all(slim.order());
    for (std::size_t x = 0; x < all.size(); ++x) all[x] = x;
    fats.push_back(std::move(all));
  }
  return HoffmanGraph::from_slim_and_fat(slim, fats);
}

CliqueReplacement clique_replace(const HoffmanGraph& h,
                                 const std::map<std::size_t, std::size_t>& sizes) {
  for (const auto& [f, size] : sizes) {
    if (f >= h.graph().order() || !h.is_fat(f))
      throw InvalidArgument("vertex " + std::to_string(f) + " is not a fat vertex");
    if (size == 0) throw InvalidArgument("clique size must be positive");
  }
  CliqueReplacement out;
  std::size_t next = 0;
  for (std::size_t x : h.slim_vertices()) out.vertex_map[x] = next++;
  for (const auto& [f, size] : sizes) {
    auto& c = out.cliques[f];
    for (std::size_t j = 0; j < size; ++j) c.push_back(next++);
  }
  std::vector<std::size_t> kept_fat;
  for (std::size_t f : h.fat_vertices())
    if (!sizes.count(f)) {
      out.vertex_map[f] = next++;
      kept_fat.push_back(f);
    }

  Graph g(next);
  const Graph& src = h.graph();
  for (const auto& [u, v] : src.edges()) {
    const bool uf = h.is_fat(u) && sizes.count(u);
    const bool vf = h.is_fat(v) && sizes.count(v);
    if (!uf && !vf) g.add_edge(out.vertex_map.at(u), out.vertex_map.at(v));
  }
  for (const auto& [f, clique] : out.cliques) {
    for (std::size_t a = 0; a < clique.size(); ++a)
      for (std::size_t b = a + 1; b < clique.size(); ++b) g.add_edge(clique[a], clique[b]);
    for (std::size_t x : src.neighbors(f))
      for (std::size_t y : clique) g.add_edge(out.vertex_map.at(x), y);
  }
  std::vector<Label> labels(next, Label::slim);
  for (std::size_t f : kept_fat) labels[out.vertex_map.at(f)] = Label::fat;
  out.graph = HoffmanGraph(std::move(g), std::move(labels));
  return out;
}

CliqueReplacement replace_all(const HoffmanGraph& h, std::size_t n) {
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t f : h.fat_vertices()) sizes[f] = n;
  return clique_replace(h, sizes);
}

namespace {

struct EmbeddingSearch {
  const HoffmanGraph& host;
  const HoffmanGraph& pattern;
  std::vector<std::size_t> order;  // pattern vertices, assignment order
  std::vector<std::size_t> image;  // pattern vertex -> host vertex
  std::vector<char> used;
  std::vector<std::size_t> host_fat_deg, host_slim_deg, pat_fat_deg, pat_slim_deg;

  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool compatible(std::size_t pv, std::size_t hv) const {
    if (used[hv] || host.label(hv) != pattern.label(pv)) return false;
    if (host_fat_deg[hv] < pat_fat_deg[pv] || host_slim_deg[hv] < pat_slim_deg[pv]) return false;
    for (std::size_t q : order) {
      if (image[q] == kUnset) break;
      if (pattern.graph().adjacent(pv, q) != host.graph().adjacent(hv, image[q])) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::size_t pv = order[depth];
    for (std::size_t hv = 0; hv < host.graph().order(); ++hv) {
      if (!compatible(pv, hv)) continue;
      image[pv] = hv;
      used[hv] = 1;
      if (extend(depth + 1)) return true;
      used[hv] = 0;
      image[pv] = kUnset;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<std::size_t>> contains_induced(const HoffmanGraph& host,
                                                         const HoffmanGraph& pattern) {
  const std::size_t pn = pattern.graph().order();
  const std::size_t hn = host.graph().order();
  if (pn > hn || pattern.slim_count() > host.slim_count() ||
      pattern.fat_count() > host.fat_count())
    return std::nullopt;

  EmbeddingSearch s{host, pattern, {}, std::vector<std::size_t>(pn, EmbeddingSearch::kUnset),
                    std::vector<char>(hn, 0), {}, {}, {}, {}};
  for (std::size_t v = 0; v < hn; ++v) {
    s.host_fat_deg.push_back(host.fat_neighbors(v).size());
    s.host_slim_deg.push_back(host.slim_neighbors(v).size());
  }
  for (std::size_t v = 0; v < pn; ++v) {
    s.pat_fat_deg.push_back(pattern.fat_neighbors(v).size());
    s.pat_slim_deg.push_back(pattern.slim_neighbors(v).size());
  }

  // Connected-first order: repeatedly take the unplaced vertex with most
  // placed neighbours, ties by degree then id.
  std::vector<char> placed(pn, 0);
  for (std::size_t step = 0; step < pn; ++step) {
    std::size_t best = pn;
    std::size_t best_links = 0, best_deg = 0;
    for (std::size_t v = 0; v < pn; ++v) {
      if (placed[v]) continue;
      std::size_t links = 0;
      for (std::size_t q : s.order) links += pattern.graph().adjacent(v, q);
      const std::size_t deg = pattern.graph().degree(v);
      if (best == pn || links > best_links || (links == best_links && deg > best_deg)) {
        best = v;
        best_links = links;
        best_deg = deg;
      }
    }
    placed[best] = 1;
    s.order.push_back(best);
  }
  if (!s.extend(0)) return std::nullopt;
  return s.image;
}

}  // namespace hlat
