#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hlat/exactmat.hpp"

namespace hlat {

/// Simple undirected graph on vertices 0..n-1, stored as a bit matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }

  /// Throws InvalidArgument on loops or out-of-range endpoints. Idempotent.
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }
  std::size_t degree(std::size_t v) const { return deg_[v]; }
  std::size_t min_degree() const;
  std::vector<std::size_t> neighbors(std::size_t v) const;
  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Row v of the bit matrix: words() 64-bit words.
  std::span<const std::uint64_t> row(std::size_t v) const {
    return {bits_.data() + v * words_, words_};
  }
  std::size_t words() const noexcept { return words_; }

  IntSymMatrix adjacency() const;
  Graph complement() const;
  /// Induced subgraph; vertex i of the result is `vertices[i]`.
  Graph induced(std::span<const std::size_t> vertices) const;
  bool connected() const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> deg_;
};

enum class Label : std::uint8_t { slim, fat };

/// Graph with a slim/fat labelling. Construction does not validate; call
/// validate() before relying on the Hoffman-graph conditions.
class HoffmanGraph {
 public:
  HoffmanGraph() = default;
  HoffmanGraph(Graph g, std::vector<Label> labels);

  /// Slim vertices 0..slim_count-1 taking the slim graph, fat vertices after
  /// them, each fat vertex given by its list of slim neighbours.
  static HoffmanGraph from_slim_and_fat(const Graph& slim,
                                        const std::vector<std::vector<std::size_t>>& fat_neighbors);

  const Graph& graph() const noexcept { return g_; }
  Label label(std::size_t v) const { return labels_[v]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  bool is_slim(std::size_t v) const { return labels_[v] == Label::slim; }
  bool is_fat(std::size_t v) const { return labels_[v] == Label::fat; }

  /// Vertex ids, ascending.
  const std::vector<std::size_t>& slim_vertices() const noexcept { return slim_; }
  const std::vector<std::size_t>& fat_vertices() const noexcept { return fat_; }
  std::size_t slim_count() const noexcept { return slim_.size(); }
  std::size_t fat_count() const noexcept { return fat_.size(); }

  std::vector<std::size_t> fat_neighbors(std::size_t v) const;
  std::vector<std::size_t> slim_neighbors(std::size_t v) const;
  /// Induced on the slim vertices, in slim_vertices() order.
  Graph slim_graph() const;

  bool operator==(const HoffmanGraph& o) const { return g_ == o.g_ && labels_ == o.labels_; }

 private:
  Graph g_;
  std::vector<Label> labels_;
  std::vector<std::size_t> slim_;
  std::vector<std::size_t> fat_;
};

struct HoffmanValidation {
  bool ok = true;
  bool is_fat = false;
  std::vector<std::string> violations;
};

/// Checks that every fat vertex has a slim neighbour and that fat vertices
/// are pairwise non-adjacent; also reports whether every slim vertex has a
/// fat neighbour.
HoffmanValidation validate(const HoffmanGraph& h);

/// Sp(h) = A_s - C C^T, indexed by slim_vertices(). Every entry is checked
/// against the fat-neighbourhood formulas before returning. Throws
/// InvalidArgument for an invalid Hoffman graph.
IntSymMatrix special_matrix(const HoffmanGraph& h);

/// <W>_h: W plus every fat vertex with a neighbour in W, induced, in
/// ascending original vertex order. Throws InvalidArgument if W holds a fat
/// or unknown vertex.
HoffmanGraph generated_subgraph(const HoffmanGraph& h, std::span<const std::size_t> w);

/// Induced Hoffman subgraph on `vertices` (any labels). Fat vertices left
/// without a slim neighbour are dropped.
HoffmanGraph induced_hoffman(const HoffmanGraph& h, std::span<const std::size_t> vertices);

enum class CanonicalMode { p, q };

/// p: one private fat vertex per slim vertex; q: a single fat vertex joined
/// to every slim vertex. Slim vertices come first.
HoffmanGraph canonical_fat(const Graph& slim, CanonicalMode mode);

/// Result of replacing fat vertices by slim cliques.
struct CliqueReplacement {
  /// Still a Hoffman graph when some fat vertices were not replaced.
  HoffmanGraph graph;
  /// New id of every vertex of the input that survives (slim or kept fat).
  std::map<std::size_t, std::size_t> vertex_map;
  /// Clique vertex ids, keyed by the replaced fat vertex.
  std::map<std::size_t, std::vector<std::size_t>> cliques;
};

/// Replaces each fat vertex f in `sizes` by a slim clique of sizes[f]
/// vertices joined to all neighbours of f. Layout: original slim vertices
/// (ascending), then the cliques in fat-vertex order, then unreplaced fats.
CliqueReplacement clique_replace(const HoffmanGraph& h,
                                 const std::map<std::size_t, std::size_t>& sizes);

/// G(h, n): every fat vertex replaced by an n-clique.
CliqueReplacement replace_all(const HoffmanGraph& h, std::size_t n);

/// Label-preserving induced embedding of `pattern` into `host`:
/// result[v] is the host vertex of pattern vertex v.
std::optional<std::vector<std::size_t>> contains_induced(const HoffmanGraph& host,
                                                         const HoffmanGraph& pattern);

}  // namespace hlat
