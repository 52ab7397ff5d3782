// Reduced/full conversions, clique lift and extraction, graph certification.

#include <algorithm>

#include "hlat/assoc.hpp"
#include "hlat/errors.hpp"
#include "hlat/lattice.hpp"

namespace hlat {

namespace {

std::vector<IntColumn> drop_zero_rows(const std::vector<IntColumn>& cols) {
  if (cols.empty()) return cols;
  const std::size_t d = cols[0].size();
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < d; ++r)
    if (std::any_of(cols.begin(), cols.end(), [&](const IntColumn& c) { return c[r] != 0; }))
      keep.push_back(r);
  std::vector<IntColumn> out;
  for (const auto& c : cols) {
    IntColumn v;
    v.reserve(keep.size());
    for (std::size_t r : keep) v.push_back(c[r]);
    out.push_back(std::move(v));
  }
  return out;
}

void require_gram(const IntegralDecomposition& d, const IntSymMatrix& want, const char* what) {
  if (!(d.gram() == want))
    throw PreconditionViolated(std::string("certificate does not match ") + what);
}

}  // namespace

IntSymMatrix full_gram(const HoffmanGraph& h, long t) {
  IntSymMatrix a = h.graph().adjacency();
  for (std::size_t v = 0; v < h.graph().order(); ++v) a.set(v, v, h.is_slim(v) ? t : 1);
  return a;
}

IntSymMatrix reduced_gram(const HoffmanGraph& h, long t) {
  return special_matrix(h).plus_identity(t);
}

IntegralDecomposition convert_reduced_full(const HoffmanGraph& h, long t,
                                           const IntegralDecomposition& input, Direction dir) {
  const IntSymMatrix red = reduced_gram(h, t);
  if (!psd_check(red).is_psd)
    throw PreconditionViolated("smallest eigenvalue of the Hoffman graph is below -" +
                               std::to_string(t));
  const std::size_t s = input.scale();
  const auto& slim = h.slim_vertices();
  const auto& fat = h.fat_vertices();
  const Graph& g = h.graph();

  if (dir == Direction::reduced_to_full) {
    require_gram(input, red, "Sp(h) + tI");
    const std::size_t d = input.ambient_dim();
    const std::size_t rows = d + s * fat.size();
    std::vector<IntColumn> cols(g.order(), IntColumn(rows, 0));
    for (std::size_t i = 0; i < slim.size(); ++i) {
      IntColumn& c = cols[slim[i]];
      std::copy(input.column(i).begin(), input.column(i).end(), c.begin());
      for (std::size_t k = 0; k < fat.size(); ++k)
        if (g.adjacent(slim[i], fat[k]))
          for (std::size_t r = 0; r < s; ++r) c[d + k * s + r] = 1;
    }
    for (std::size_t k = 0; k < fat.size(); ++k)
      for (std::size_t r = 0; r < s; ++r) cols[fat[k]][d + k * s + r] = 1;
    return IntegralDecomposition(s, std::move(cols), full_gram(h, t));
  }

  require_gram(input, full_gram(h, t), "A(H) + L(t)");
  std::vector<IntColumn> cols;
  for (std::size_t x : slim) {
    IntColumn c = input.column(x);
    for (std::size_t f : fat)
      if (g.adjacent(x, f))
        for (std::size_t r = 0; r < c.size(); ++r) c[r] -= input.column(f)[r];
    cols.push_back(std::move(c));
  }
  return IntegralDecomposition(s, drop_zero_rows(cols), red);
}

IntegralDecomposition clique_lift(const HoffmanGraph& h, const IntegralDecomposition& reduced,
                                  std::size_t n, bool strict) {
  if (n == 0) throw InvalidArgument("clique size must be positive");
  const IntSymMatrix sp = special_matrix(h);
  require_gram(reduced, sp.plus_identity(3), "Sp(h) + 3I");
  if (strict) {
    if (!validate(h).is_fat) throw PreconditionViolated("Hoffman graph is not fat");
    if (psd_check(sp, 2).is_psd)
      throw PreconditionViolated("smallest eigenvalue of the Hoffman graph is not below -2");
  }
  const CliqueReplacement rep = replace_all(h, n);
  const Graph& g = rep.graph.graph();
  const auto& slim = h.slim_vertices();
  const auto& fat = h.fat_vertices();
  const std::size_t s = reduced.scale();
  const std::size_t d = reduced.ambient_dim();
  const std::size_t r = fat.size();
  const std::size_t rows = d + s * r + 2 * s * n * r;

  std::vector<IntColumn> cols(g.order(), IntColumn(rows, 0));
  for (std::size_t i = 0; i < slim.size(); ++i) {
    IntColumn& c = cols[rep.vertex_map.at(slim[i])];
    std::copy(reduced.column(i).begin(), reduced.column(i).end(), c.begin());
    for (std::size_t k = 0; k < r; ++k)
      if (h.graph().adjacent(slim[i], fat[k]))
        for (std::size_t q = 0; q < s; ++q) c[d + k * s + q] = 1;
  }
  for (std::size_t k = 0; k < r; ++k) {
    const auto& clique = rep.cliques.at(fat[k]);
    for (std::size_t j = 0; j < n; ++j) {
      IntColumn& c = cols[clique[j]];
      for (std::size_t q = 0; q < s; ++q) c[d + k * s + q] = 1;
      const std::size_t base = d + s * r + (k * n + j) * 2 * s;
      for (std::size_t q = 0; q < 2 * s; ++q) c[base + q] = 1;
    }
  }
  return IntegralDecomposition(s, std::move(cols), g.adjacency().plus_identity(3));
}

IntegralDecomposition clique_extract(const HoffmanGraph& h, const IntegralDecomposition& full,
                                     std::size_t n) {
  if (n < 20) throw PreconditionViolated("extraction needs cliques of size at least 20");
  if (full.scale() != 1) throw PreconditionViolated("extraction works at scale 1");
  const CliqueReplacement rep = replace_all(h, n);
  const Graph& g = rep.graph.graph();
  require_gram(full, g.adjacency().plus_identity(3), "A(G(h, n)) + 3I");

  std::vector<std::vector<std::size_t>> support(full.size());
  for (std::size_t v = 0; v < full.size(); ++v) {
    const IntColumn& c = full.column(v);
    for (std::size_t q = 0; q < c.size(); ++q) {
      if (c[q] == 0) continue;
      if (c[q] != 1 && c[q] != -1)
        throw PreconditionViolated("column " + std::to_string(v) + " has an entry outside {-1, 0, 1}");
      support[v].push_back(q);
    }
    if (support[v].size() != 3)
      throw PreconditionViolated("column " + std::to_string(v) + " does not have support 3");
  }
  auto meet = [&](std::size_t a, std::size_t b) {
    std::size_t c = 0;
    for (std::size_t q : support[a])
      c += std::binary_search(support[b].begin(), support[b].end(), q);
    return c;
  };

  const auto& slim = h.slim_vertices();
  std::vector<IntColumn> cols;
  for (std::size_t x : slim) cols.push_back(full.column(rep.vertex_map.at(x)));

  for (std::size_t f : h.fat_vertices()) {
    const auto& clique = rep.cliques.at(f);
    const std::size_t xi = rep.vertex_map.at(h.slim_neighbors(f).front());
    const IntColumn& nx = full.column(xi);
    std::optional<std::size_t> common;
    for (std::size_t q : support[xi]) {
      std::vector<std::size_t> cand;
      for (std::size_t y : clique)
        if (full.column(y)[q] == nx[q]) cand.push_back(y);
      // Four candidates meeting pairwise in exactly one coordinate.
      std::vector<std::size_t> pick;
      auto extend = [&](auto&& self, std::size_t from) -> bool {
        if (pick.size() == 4) return true;
        for (std::size_t a = from; a < cand.size(); ++a) {
          if (!std::all_of(pick.begin(), pick.end(),
                           [&](std::size_t p) { return meet(p, cand[a]) == 1; }))
            continue;
          pick.push_back(cand[a]);
          if (self(self, a + 1)) return true;
          pick.pop_back();
        }
        return false;
      };
      if (extend(extend, 0)) {
        common = q;
        break;
      }
    }
    if (!common)
      throw ExtractionFailed("no four clique columns share a coordinate with a neighbour of fat vertex " +
                             std::to_string(f));
    const std::size_t q = *common;
    for (std::size_t i = 0; i < slim.size(); ++i) {
      const std::int64_t v = cols[i][q];
      if (h.graph().adjacent(slim[i], f)) {
        if (v != nx[q])
          throw ExtractionFailed("slim vertex " + std::to_string(slim[i]) +
                                 " disagrees at the shared coordinate of fat vertex " +
                                 std::to_string(f));
        cols[i][q] = 0;
      } else if (full.column(rep.vertex_map.at(slim[i]))[q] != 0) {
        throw ExtractionFailed("non-neighbour " + std::to_string(slim[i]) +
                               " uses the shared coordinate of fat vertex " + std::to_string(f));
      }
    }
  }
  try {
    return IntegralDecomposition(1, drop_zero_rows(cols), special_matrix(h).plus_identity(3));
  } catch (const VerificationFailed& e) {
    throw ExtractionFailed(std::string("extracted matrix does not verify: ") + e.what());
  }
}

CertifyResult certify_graph(const Graph& g, std::size_t s, const CertifyOptions& opts) {
  if (s == 0) throw InvalidArgument("scale must be positive");
  if (g.order() == 0) throw InvalidArgument("graph has no vertices");
  if (!g.connected()) throw PreconditionViolated("graph is not connected");
  const IntSymMatrix a = g.adjacency();

  CertifyResult out;
  out.shift = -1;
  for (long t = 0; t <= 3; ++t)
    if (psd_check(a, t).is_psd) {
      out.shift = t;
      break;
    }
  if (out.shift < 0) throw OutOfScope("smallest eigenvalue is below -3");
  const IntSymMatrix b = a.plus_identity(out.shift);

  if (out.shift == 3) {
    const std::size_t n_from = opts.n.value_or(2 * opts.m);
    if (auto found = find_fat_associated(g, opts.m, n_from, true)) {
      out.assoc_n = found->n;
      try {
        const HoffmanGraph& h = found->graph.hoffman;
        const IntegralDecomposition red = decompose_structural(GramLattice(reduced_gram(h, 3)), s);
        const IntegralDecomposition full = convert_reduced_full(h, 3, red, Direction::reduced_to_full);
        std::vector<IntColumn> cols;
        for (std::size_t x : h.slim_vertices()) cols.push_back(full.column(x));
        out.certificate.emplace(s, drop_zero_rows(cols), b);
        out.status = SearchStatus::feasible;
        out.route = "structural";
        out.dimension_complete = true;
        return out;
      } catch (const Error& e) {
        out.notes.push_back(std::string("structural route failed: ") + e.what());
      }
    } else {
      out.notes.push_back("no fat associated Hoffman graph with Sp + 3I PSD");
    }
  }

  DecomposeOptions search = opts.search;
  if (s == 1 && !search.dimension) {
    // Norm-t columns at scale 1 touch at most t coordinates each.
    search.dimension = static_cast<std::size_t>(out.shift) * g.order();
  }
  DecomposeResult r = decompose_generic(GramLattice(b), s, search);
  out.route = "generic";
  out.nodes = r.nodes;
  out.dimension_complete = r.dimension_complete;
  out.status = r.status;
  if (r.status == SearchStatus::infeasible && !r.dimension_complete) {
    out.status = SearchStatus::inconclusive;
    out.notes.push_back("no realization in dimension " + std::to_string(r.dimension) +
                        "; larger dimensions were not searched");
  }
  if (r.decomposition) out.certificate = std::move(r.decomposition);
  return out;
}

}  // namespace hlat
