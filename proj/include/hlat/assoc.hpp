#pragma once

// Associated Hoffman graph of a graph: large maximal cliques, the clique
// equivalence, quasi-cliques, and the K~_{2m} obstruction.

#include <cstddef>
#include <optional>
#include <vector>

#include "hlat/hoffman.hpp"

namespace hlat {

/// Clique parameters. make() enforces n >= (m+1)^2; relaxed() only n >= 1,
/// and transitivity of the clique equivalence is then checked at run time.
struct AssocParams {
  std::size_t m = 12;
  std::size_t n = 169;
  bool relaxed_bound = false;

  static AssocParams make(std::size_t m, std::size_t n);
  static AssocParams relaxed(std::size_t m, std::size_t n);
};

using VertexSet = std::vector<std::size_t>;

/// All maximal cliques with at least n vertices (Bron-Kerbosch with
/// pivoting). Each clique is sorted; the list is sorted lexicographically.
std::vector<VertexSet> large_maximal_cliques(const Graph& g, std::size_t n);

/// True when lambda_min(G) >= -3 is certified exactly and m >= 12, which
/// excludes an induced K~_{2m}.
bool k2m_free_spectral(const Graph& g, std::size_t m);

/// An induced 2m-clique plus a vertex adjacent to exactly m of it, if any.
/// The apex is the last entry.
std::optional<VertexSet> k2m_witness(const Graph& g, std::size_t m);

/// Each vertex of `a` has at most m-1 non-neighbours in `b`, and vice versa.
bool cliques_equivalent(const Graph& g, const VertexSet& a, const VertexSet& b, std::size_t m);

/// Vertices with at most m-1 non-neighbours in c.
VertexSet quasi_clique(const Graph& g, const VertexSet& c, std::size_t m);

struct CliqueClass {
  std::vector<VertexSet> members;
  VertexSet quasi_clique;
  /// Quasi-clique computed from every member agrees with the representative's.
  bool representative_consistent = true;
  AssocParams params;
};

/// Classes of large maximal cliques under the clique equivalence. Throws
/// PreconditionViolated when G contains K~_{2m} or the merged classes are not
/// closed under the pairwise test.
std::vector<CliqueClass> clique_classes(const Graph& g, const AssocParams& params);

struct AssociatedGraph {
  /// Slim vertices are V(G) in order; fat vertex k belongs to classes[k].
  HoffmanGraph hoffman;
  std::vector<CliqueClass> classes;
  bool is_fat = false;
};

AssociatedGraph associated_hoffman(const Graph& g, const AssocParams& params);

struct AssocSearch {
  std::size_t n = 0;
  AssociatedGraph graph;
  /// psd_check(Sp + 3I).
  bool shifted_psd = false;
};

/// Scans n upward from n_from to the largest clique size and returns the
/// first n whose associated graph is fat (and, with require_psd, has
/// Sp + 3I PSD). Values of n with non-transitive classes are skipped.
std::optional<AssocSearch> find_fat_associated(const Graph& g, std::size_t m, std::size_t n_from,
                                               bool require_psd);

}  // namespace hlat
