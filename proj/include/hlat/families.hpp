#pragma once

// Graph families used throughout, seeded random generators, and ingestion
// of external graphs with strong-regularity validation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlat/hoffman.hpp"

namespace hlat {

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
/// K_{1,t}; the centre is vertex 0.
Graph claw_graph(std::size_t t);
/// Clique on 0..2m-1 plus vertex 2m adjacent to 0..m-1.
Graph k2m_tilde(std::size_t m);
/// Extended E6 tree: path 0-1-2-3-4 with the branch 2-5-6.
Graph e6_tilde();
Graph petersen_graph();
/// Vertices are the edges of g in edges() order.
Graph line_graph(const Graph& g);
/// k mutually adjacent new vertices joined to every vertex of g (appended).
Graph k_point_cone(const Graph& g, std::size_t k);
/// One cone vertex over `base` (index base.order()), then a K_m joined to it.
Graph cone_with_clique(const Graph& base, std::size_t m);
/// G(h, n): every fat vertex replaced by an n-clique.
Graph clique_replacement_graph(const HoffmanGraph& h, std::size_t n);

/// Erdos-Renyi G(n, p) from a seeded generator.
Graph random_graph(std::size_t n, double p, std::uint64_t seed);

struct GeneralizedLineSample {
  Graph graph;
  /// Norm-2 integer columns with pairwise inner products in {0, 1};
  /// A(graph) = Z^T Z - 2I.
  std::vector<std::vector<std::int64_t>> columns;
};

/// Connected generalized line graph on n vertices from random columns
/// +-e_i +-e_j in dimension dim.
GeneralizedLineSample random_generalized_line_graph(std::size_t n, std::size_t dim,
                                                    std::uint64_t seed);

/// Random fat Hoffman graph: slim graph G(n_slim, p), each slim vertex gets
/// between 1 and max_fat_degree fat neighbours among n_fat fat vertices.
/// Fat vertices left without neighbours are dropped.
HoffmanGraph random_fat_hoffman(std::size_t n_slim, std::size_t n_fat, double p,
                                std::size_t max_fat_degree, std::uint64_t seed);

struct SrgParameters {
  std::size_t v = 0, k = 0, lambda = 0, mu = 0;
  bool operator==(const SrgParameters&) const = default;
  std::string to_string() const;
};

/// Parameters when g is strongly regular (neither complete nor edgeless).
std::optional<SrgParameters> srg_parameters(const Graph& g);

struct IngestReport {
  Graph graph;
  std::optional<SrgParameters> srg;
  std::optional<SrgParameters> expected;
  bool matches_expected = true;
};

/// Reads an edge-list file. With `expect`, throws VerificationFailed unless
/// the graph is strongly regular with exactly those parameters.
IngestReport ingest_graph(const std::string& path, std::optional<SrgParameters> expect = {});

}  // namespace hlat
