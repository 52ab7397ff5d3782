#pragma once

// Integral lattices given by Gram matrices: unit splitting, root-component
// classification, standard and searched integral embeddings, conversions
// between the reduced and full lattices of a Hoffman graph, and the
// end-to-end graph certification pipeline.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hlat/exactmat.hpp"
#include "hlat/hoffman.hpp"

namespace hlat {

/// Gram matrix of a generating set. PSD is checked exactly at construction
/// (InvalidArgument otherwise).
class GramLattice {
 public:
  explicit GramLattice(IntSymMatrix gram, std::string provenance = {});
  const IntSymMatrix& gram() const noexcept { return gram_; }
  const std::string& provenance() const noexcept { return provenance_; }
  std::size_t size() const noexcept { return gram_.order(); }

 private:
  IntSymMatrix gram_;
  std::string provenance_;
};

using IntColumn = std::vector<std::int64_t>;

/// Integer columns Z (one per generator) with Z^T Z = scale * gram. The
/// identity is verified exactly at construction; VerificationFailed names
/// the first offending entry.
class IntegralDecomposition {
 public:
  IntegralDecomposition(std::size_t scale, std::vector<IntColumn> columns, IntSymMatrix gram);

  std::size_t scale() const noexcept { return scale_; }
  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return cols_.size(); }
  const std::vector<IntColumn>& columns() const noexcept { return cols_; }
  const IntColumn& column(std::size_t i) const { return cols_[i]; }
  const IntSymMatrix& gram() const noexcept { return gram_; }

  /// Empty when Z^T Z = scale * gram, else a description of the first mismatch.
  static std::optional<std::string> check(std::size_t scale, const std::vector<IntColumn>& columns,
                                          const IntSymMatrix& gram);

 private:
  std::size_t scale_;
  std::size_t dim_ = 0;
  std::vector<IntColumn> cols_;
  IntSymMatrix gram_;
};

enum class RootFamily { A, D, E6, E7, E8 };
std::string family_name(RootFamily f, std::size_t rank);

struct RootComponent {
  RootFamily family = RootFamily::A;
  std::size_t rank = 0;
  BigInt discriminant;
  /// Indices (into the component's generators) of the independent subset used.
  std::vector<std::size_t> retained;
  /// Lattice basis, one row per basis vector, in coordinates of `retained`.
  RatMatrix basis_coords;
  /// Gram matrix of that basis.
  std::vector<IntVector> basis_gram;
};

/// One unit split: generator `generator` became unit number `unit`, and each
/// listed generator i lost `coeff` copies of it.
struct UnitSplit {
  std::size_t generator;
  std::size_t unit;
  std::vector<std::pair<std::size_t, BigInt>> updates;
};

struct GramReduction {
  std::size_t unit_count = 0;
  /// Generators whose reduced vector is zero without being a unit.
  std::vector<std::size_t> zero_generators;
  /// Original generator index of each unit, in split order.
  std::vector<std::size_t> unit_generators;
  /// Splits in order; replaying them reproduces the reduction.
  std::vector<UnitSplit> log;
  /// original_i = reduced_i + sum_k unit_coeffs[i][k] * unit_k.
  std::vector<std::vector<BigInt>> unit_coeffs;
  /// For a norm-2 survivor proportional to an earlier one: (representative, sign).
  std::vector<std::optional<std::pair<std::size_t, int>>> duplicate_of;
  /// Representative survivors per component, ascending.
  std::vector<std::vector<std::size_t>> components;
  /// Gram of the reduced vectors of each component.
  std::vector<IntSymMatrix> component_grams;
};

/// Splits off norm-1 generators until every remaining norm is 2, merges
/// proportional roots and groups survivors into connected components.
/// Diagonal entries outside {0, 1, 2} raise NotNormBounded.
GramReduction reduce_gram(const GramLattice& b);

/// Replays the reduction on concrete columns (Z^T Z = s * gram). Returns the
/// reduced column of every generator followed by the unit columns.
std::pair<std::vector<IntColumn>, std::vector<IntColumn>> replay_reduction(
    const GramReduction& r, const std::vector<IntColumn>& columns);

/// Classifies a connected Gram matrix with all diagonal entries 2 by rank
/// and discriminant. Throws NotRootLattice outside the A/D/E table.
RootComponent classify_component(const GramLattice& gc);

/// Standard basis vectors of the model lattice at scale s. A and D use each
/// coordinate s times; E families use the sqrt(2)-scaled model and need even
/// s. Scale 1 for E families raises Unrepresentable.
IntegralDecomposition standard_embedding(const RootComponent& c, std::size_t s);

/// The eight integer vectors whose 1/sqrt(2) multiples generate E8; the last
/// seven generate E7 and the last six E6.
const std::vector<IntColumn>& e8_generators();

/// Roots of the model lattice in its integer coordinates (norm 2 for A/D,
/// norm 4 for the E families), in lexicographic order.
std::vector<IntColumn> model_roots(RootFamily f, std::size_t rank);

/// Maps every generator of `gc` to a root of the model so that all inner
/// products match, then scales to s. Throws IsometryNotFound on exhaustion.
IntegralDecomposition component_isometry(const GramLattice& gc, const RootComponent& c,
                                         std::size_t s);

enum class SearchStatus { feasible, infeasible, inconclusive };
std::string status_name(SearchStatus s);

struct DecomposeOptions {
  std::size_t max_extra_dim = 8;
  /// Overrides the ambient dimension when set.
  std::optional<std::size_t> dimension;
  std::uint64_t node_budget = 100'000'000;
  int jobs = 1;
};

struct DecomposeResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<IntegralDecomposition> decomposition;
  std::uint64_t nodes = 0;
  std::size_t dimension = 0;
  /// True when the dimension used cannot exclude any realization, so an
  /// infeasible verdict is absolute.
  bool dimension_complete = false;
};

/// Backtracking search for integer columns with Z^T Z = s * B. Columns are
/// placed by decreasing norm; fresh coordinates are opened in order with
/// positive non-increasing entries. The node budget applies per first-column
/// shard, so serial and parallel runs give identical verdicts.
DecomposeResult decompose_generic(const GramLattice& b, std::size_t s,
                                  const DecomposeOptions& opts = {});

namespace reference {
DecomposeResult decompose_generic(const GramLattice& b, std::size_t s,
                                  const DecomposeOptions& opts = {});
}  // namespace reference

/// Reduction plus component isometries assembled into one decomposition of
/// B at scale s. Propagates NotNormBounded, NotRootLattice, Unrepresentable.
IntegralDecomposition decompose_structural(const GramLattice& b, std::size_t s);

enum class Direction { reduced_to_full, full_to_reduced };

/// Gram of A(H) + L(t): t on slim diagonal positions, 1 on fat ones.
IntSymMatrix full_gram(const HoffmanGraph& h, long t);
/// Sp(h) + tI.
IntSymMatrix reduced_gram(const HoffmanGraph& h, long t);

/// reduced -> full appends one row block per fat vertex (the incidence rows,
/// each repeated `scale` times); full -> reduced subtracts the fat columns
/// from each slim column. Input and output are both verified.
IntegralDecomposition convert_reduced_full(const HoffmanGraph& h, long t,
                                           const IntegralDecomposition& input, Direction dir);

/// Certificate of A(G(h, n)) + 3I from one of Sp(h) + 3I. With `strict`,
/// requires -3 <= lambda_min(h) < -2 and throws PreconditionViolated
/// otherwise. Column order follows replace_all(h, n).
IntegralDecomposition clique_lift(const HoffmanGraph& h, const IntegralDecomposition& reduced,
                                  std::size_t n, bool strict = true);

/// Recovers a certificate of Sp(h) + 3I from one of A(G(h, n)) + 3I at scale
/// 1 by locating, for each fat vertex, a coordinate shared by four clique
/// columns and a slim neighbour. Requires n >= 20.
IntegralDecomposition clique_extract(const HoffmanGraph& h, const IntegralDecomposition& full,
                                     std::size_t n);

struct CertifyOptions {
  std::size_t m = 12;
  /// Clique-size threshold for the associated graph; searched when unset.
  std::optional<std::size_t> n;
  DecomposeOptions search;
};

struct CertifyResult {
  SearchStatus status = SearchStatus::inconclusive;
  std::optional<IntegralDecomposition> certificate;
  /// t with lambda_min(G) in [-t, -t+1).
  long shift = 0;
  /// "structural" or "generic".
  std::string route;
  std::optional<std::size_t> assoc_n;
  std::uint64_t nodes = 0;
  bool dimension_complete = false;
  std::vector<std::string> notes;
};

/// Decides whether A(G) + tI = Z^T Z / s for integer Z, t = -floor(lambda_min).
/// Throws PreconditionViolated for a disconnected G and OutOfScope when
/// lambda_min(G) < -3.
CertifyResult certify_graph(const Graph& g, std::size_t s, const CertifyOptions& opts = {});

}  // namespace hlat
