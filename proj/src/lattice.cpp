#include "hlat/lattice.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

#include "hlat/errors.hpp"

namespace hlat {

namespace {

BigInt big_from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

std::vector<std::size_t> bfs_order(const IntSymMatrix& g) {
  const std::size_t n = g.order();
  std::vector<std::size_t> order;
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::deque<std::size_t> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      order.push_back(u);
      for (std::size_t v = 0; v < n; ++v)
        if (!seen[v] && v != u && g(u, v) != 0) {
          seen[v] = 1;
          q.push_back(v);
        }
    }
  }
  return order;
}

IntColumn repeat_entries(const IntColumn& v, std::size_t times) {
  IntColumn out;
  out.reserve(v.size() * times);
  for (std::int64_t x : v)
    for (std::size_t k = 0; k < times; ++k) out.push_back(x);
  return out;
}

std::int64_t dot(const IntColumn& a, const IntColumn& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Integer coordinates of the model, and the factor between their inner
// products and the lattice's.
struct Model {
  std::vector<IntColumn> basis;
  long factor = 1;
};

Model model_basis(RootFamily f, std::size_t rank) {
  Model m;
  switch (f) {
    case RootFamily::A:
      for (std::size_t i = 0; i < rank; ++i) {
        IntColumn v(rank + 1, 0);
        v[i] = 1;
        v[i + 1] = -1;
        m.basis.push_back(v);
      }
      break;
    case RootFamily::D: {
      IntColumn v(rank, 0);
      v[0] = 1;
      v[1] = 1;
      m.basis.push_back(v);
      for (std::size_t i = 0; i + 1 < rank; ++i) {
        IntColumn w(rank, 0);
        w[i] = 1;
        w[i + 1] = -1;
        m.basis.push_back(w);
      }
      break;
    }
    case RootFamily::E6:
    case RootFamily::E7:
    case RootFamily::E8: {
      const auto& u = e8_generators();
      m.basis.assign(u.end() - static_cast<std::ptrdiff_t>(rank), u.end());
      m.factor = 2;
      break;
    }
  }
  return m;
}

std::size_t e_rank(RootFamily f) {
  return f == RootFamily::E6 ? 6 : f == RootFamily::E7 ? 7 : 8;
}

bool is_e(RootFamily f) { return f == RootFamily::E6 || f == RootFamily::E7 || f == RootFamily::E8; }

// Coordinate repetition turning a model vector into one at scale s.
std::size_t repetition(RootFamily f, std::size_t s) {
  if (!is_e(f)) return s;
  if (s == 1) throw Unrepresentable(family_name(f, e_rank(f)) + " has no integral model at scale 1");
  if (s % 2 != 0)
    throw OutOfScope("no standard model of " + family_name(f, e_rank(f)) + " at odd scale " +
                     std::to_string(s));
  return s / 2;
}

std::vector<IntColumn> e_roots_uncached(std::size_t rank) {
  const auto& all = e8_generators();
  std::vector<IntColumn> gens(all.end() - static_cast<std::ptrdiff_t>(rank), all.end());
  const std::size_t k = gens.size();
  RatMatrix g(k, RatVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g[i][j] = Rational(dot(gens[i], gens[j]));
  RatMatrix inv(k, RatVector(k));
  for (std::size_t c = 0; c < k; ++c) {
    RatVector e(k, Rational(0));
    e[c] = 1;
    RatVector x = solve_rational(g, e);
    for (std::size_t r = 0; r < k; ++r) inv[r][c] = x[r];
  }
  std::vector<IntColumn> out;
  IntColumn v(8, 0);
  auto consider = [&]() {
    std::vector<Rational> ip(k);
    for (std::size_t i = 0; i < k; ++i) ip[i] = Rational(dot(gens[i], v));
    std::vector<Rational> x(k, Rational(0));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) x[r] += inv[r][c] * ip[c];
      if (x[r].get_den() != 1) return;
    }
    for (std::size_t d = 0; d < 8; ++d) {
      Rational acc = 0;
      for (std::size_t r = 0; r < k; ++r) acc += x[r] * gens[r][d];
      if (acc != v[d]) return;
    }
    out.push_back(v);
  };
  // Norm-4 integer vectors: +-2 e_i, or four +-1 entries.
  for (std::size_t i = 0; i < 8; ++i)
    for (int sgn : {-2, 2}) {
      std::fill(v.begin(), v.end(), 0);
      v[i] = sgn;
      consider();
    }
  for (unsigned mask = 0; mask < 256; ++mask) {
    if (std::popcount(mask) != 4) continue;
    for (unsigned signs = 0; signs < 16; ++signs) {
      std::fill(v.begin(), v.end(), 0);
      unsigned b = 0;
      for (std::size_t i = 0; i < 8; ++i)
        if (mask >> i & 1u) v[i] = (signs >> b++ & 1u) ? -1 : 1;
      consider();
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GramLattice::GramLattice(IntSymMatrix gram, std::string provenance)
    : gram_(std::move(gram)), provenance_(std::move(provenance)) {
  if (!psd_check(gram_).is_psd) throw InvalidArgument("Gram matrix is not positive semidefinite");
}

std::optional<std::string> IntegralDecomposition::check(std::size_t scale,
                                                        const std::vector<IntColumn>& columns,
                                                        const IntSymMatrix& gram) {
  if (scale == 0) return "scale must be positive";
  if (columns.size() != gram.order())
    return "expected " + std::to_string(gram.order()) + " columns, got " +
           std::to_string(columns.size());
  const std::size_t d = columns.empty() ? 0 : columns[0].size();
  for (const auto& c : columns)
    if (c.size() != d) return "columns have different lengths";
  const BigInt s(static_cast<unsigned long>(scale));
  for (std::size_t i = 0; i < columns.size(); ++i)
    for (std::size_t j = i; j < columns.size(); ++j) {
      __int128 acc = 0;
      for (std::size_t r = 0; r < d; ++r)
        acc += static_cast<__int128>(columns[i][r]) * columns[j][r];
      const BigInt want = s * gram(i, j);
      if (big_from_i128(acc) != want)
        return "entry (" + std::to_string(i) + "," + std::to_string(j) + "): Z^T Z gives " +
               big_from_i128(acc).get_str() + ", expected " + want.get_str();
    }
  return std::nullopt;
}

IntegralDecomposition::IntegralDecomposition(std::size_t scale, std::vector<IntColumn> columns,
                                             IntSymMatrix gram)
    : scale_(scale), cols_(std::move(columns)), gram_(std::move(gram)) {
  if (auto err = check(scale_, cols_, gram_)) throw VerificationFailed(*err);
  dim_ = cols_.empty() ? 0 : cols_[0].size();
}

std::string family_name(RootFamily f, std::size_t rank) {
  switch (f) {
    case RootFamily::A: return "A" + std::to_string(rank);
    case RootFamily::D: return "D" + std::to_string(rank);
    case RootFamily::E6: return "E6";
    case RootFamily::E7: return "E7";
    case RootFamily::E8: return "E8";
  }
  return "?";
}

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::feasible: return "feasible";
    case SearchStatus::infeasible: return "infeasible";
    case SearchStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

GramReduction reduce_gram(const GramLattice& b) {
  const IntSymMatrix& g0 = b.gram();
  const std::size_t n = g0.order();
  for (std::size_t i = 0; i < n; ++i)
    if (g0(i, i) < 0 || g0(i, i) > 2)
      throw NotNormBounded("generator " + std::to_string(i) + " has norm " + g0(i, i).get_str() +
                           ", outside {0, 1, 2}");

  enum class Kind { active, unit, zero };
  std::vector<Kind> kind(n, Kind::active);
  std::vector<BigInt> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = g0(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return w[i * n + j]; };

  GramReduction r;
  std::vector<std::vector<BigInt>> coeffs(n);
  auto retire_zeros = [&] {
    for (std::size_t i = 0; i < n; ++i)
      if (kind[i] == Kind::active && at(i, i) == 0) {
        kind[i] = Kind::zero;
        r.zero_generators.push_back(i);
      }
  };
  retire_zeros();

  for (;;) {
    std::size_t j = n;
    for (std::size_t i = 0; i < n; ++i)
      if (kind[i] == Kind::active && at(i, i) == 1) {
        j = i;
        break;
      }
    if (j == n) break;
    const std::size_t k = r.unit_count++;
    r.unit_generators.push_back(j);
    UnitSplit step{j, k, {}};
    for (auto& c : coeffs) c.resize(r.unit_count);
    coeffs[j][k] += 1;
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < n; ++i)
      if (kind[i] == Kind::active && i != j) live.push_back(i);
    for (std::size_t i : live)
      if (at(i, j) != 0) {
        coeffs[i][k] += at(i, j);
        step.updates.emplace_back(i, at(i, j));
      }
    for (std::size_t i : live)
      for (std::size_t l : live) at(i, l) -= at(i, j) * at(l, j);
    for (std::size_t i = 0; i < n; ++i) at(i, j) = at(j, i) = 0;
    kind[j] = Kind::unit;
    r.log.push_back(std::move(step));
    retire_zeros();
  }
  for (auto& c : coeffs) c.resize(r.unit_count);
  r.unit_coeffs = std::move(coeffs);
  std::sort(r.zero_generators.begin(), r.zero_generators.end());

  r.duplicate_of.assign(n, std::nullopt);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (kind[i] != Kind::active) continue;
    for (std::size_t p : reps)
      if (abs(at(i, p)) == 2) {
        r.duplicate_of[i] = std::make_pair(p, sgn(at(i, p)));
        break;
      }
    if (!r.duplicate_of[i]) reps.push_back(i);
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t c = a + 1; c < reps.size(); ++c)
      if (at(reps[a], reps[c]) != 0) {
        const std::size_t x = find(reps[a]), y = find(reps[c]);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
  std::vector<std::size_t> root_slot(n, n);
  for (std::size_t i : reps) {
    const std::size_t root = find(i);
    if (root_slot[root] == n) {
      root_slot[root] = r.components.size();
      r.components.emplace_back();
    }
    r.components[root_slot[root]].push_back(i);
  }
  for (const auto& comp : r.components) {
    IntSymMatrix cg(comp.size());
    for (std::size_t a = 0; a < comp.size(); ++a)
      for (std::size_t c = a; c < comp.size(); ++c) cg.set(a, c, at(comp[a], comp[c]));
    r.component_grams.push_back(std::move(cg));
  }
  return r;
}

std::pair<std::vector<IntColumn>, std::vector<IntColumn>> replay_reduction(
    const GramReduction& r, const std::vector<IntColumn>& columns) {
  std::vector<IntColumn> cur = columns;
  std::vector<IntColumn> units;
  for (const auto& step : r.log) {
    const IntColumn u = cur.at(step.generator);
    for (const auto& [i, c] : step.updates) {
      const std::int64_t k = c.get_si();
      for (std::size_t d = 0; d < u.size(); ++d) cur[i][d] -= k * u[d];
    }
    std::fill(cur[step.generator].begin(), cur[step.generator].end(), 0);
    units.push_back(u);
  }
  return {std::move(cur), std::move(units)};
}

RootComponent classify_component(const GramLattice& gc) {
  const IntSymMatrix& g = gc.gram();
  const std::size_t n = g.order();
  for (std::size_t i = 0; i < n; ++i)
    if (g(i, i) != 2) throw PreconditionViolated("component generators must all have norm 2");
  {
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> q{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v = 0; v < n; ++v)
        if (!seen[v] && g(u, v) != 0) {
          seen[v] = 1;
          ++count;
          q.push_back(v);
        }
    }
    if (count != n) throw PreconditionViolated("component is not connected");
  }

  RootComponent c;
  c.retained = independent_generators(g);
  const std::size_t r = c.retained.size();
  RatMatrix gss(r, RatVector(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) gss[a][b] = Rational(g(c.retained[a], c.retained[b]));

  std::vector<RatVector> coords;
  BigInt denom = 1;
  for (std::size_t i = 0; i < n; ++i) {
    RatVector rhs(r);
    for (std::size_t a = 0; a < r; ++a) rhs[a] = Rational(g(c.retained[a], i));
    coords.push_back(solve_rational(gss, rhs));
    for (const auto& x : coords.back()) denom = lcm(denom, BigInt(x.get_den()));
  }
  std::vector<IntVector> scaled;
  for (const auto& x : coords) {
    IntVector row(r);
    for (std::size_t a = 0; a < r; ++a) {
      Rational y = x[a] * Rational(denom);
      row[a] = y.get_num();
    }
    scaled.push_back(std::move(row));
  }
  const std::vector<IntVector> hnf = integer_rowspace_basis(scaled);
  for (const auto& row : hnf) {
    RatVector v(r);
    for (std::size_t a = 0; a < r; ++a) {
      v[a] = Rational(row[a], denom);
      v[a].canonicalize();
    }
    c.basis_coords.push_back(std::move(v));
  }
  c.basis_gram.assign(r, IntVector(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Rational acc = 0;
      for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
          acc += c.basis_coords[a][p] * gss[p][q] * c.basis_coords[b][q];
      if (acc.get_den() != 1)
        throw VerificationFailed("basis Gram entry is not an integer");
      c.basis_gram[a][b] = acc.get_num();
    }
  c.rank = r;
  c.discriminant = determinant(c.basis_gram);
  const BigInt& d = c.discriminant;
  if (d == static_cast<long>(r) + 1) {
    c.family = RootFamily::A;
  } else if (d == 4 && r >= 4) {
    c.family = RootFamily::D;
  } else if (d == 3 && r == 6) {
    c.family = RootFamily::E6;
  } else if (d == 2 && r == 7) {
    c.family = RootFamily::E7;
  } else if (d == 1 && r == 8) {
    c.family = RootFamily::E8;
  } else {
    throw NotRootLattice("rank " + std::to_string(r) + " with discriminant " + d.get_str() +
                         " is not an irreducible root lattice");
  }
  return c;
}

const std::vector<IntColumn>& e8_generators() {
  static const std::vector<IntColumn> u = {
      {0, 1, 1, 0, 1, 0, 0, 1},   {0, -1, 0, 1, -1, 1, 0, 0}, {0, 0, -1, 0, 1, -1, 1, 0},
      {1, 0, 0, -1, 0, 1, -1, 0}, {-1, 1, 0, 0, -1, 0, 1, 0}, {1, -1, 1, 0, 0, -1, 0, 0},
      {0, 1, -1, 1, 0, 0, -1, 0}, {-1, -1, 0, 0, 1, 0, -1, 0},
  };
  return u;
}

std::vector<IntColumn> model_roots(RootFamily f, std::size_t rank) {
  std::vector<IntColumn> out;
  if (f == RootFamily::A) {
    for (std::size_t i = 0; i <= rank; ++i)
      for (std::size_t j = 0; j <= rank; ++j)
        if (i != j) {
          IntColumn v(rank + 1, 0);
          v[i] = 1;
          v[j] = -1;
          out.push_back(v);
        }
  } else if (f == RootFamily::D) {
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j)
        for (int a : {-1, 1})
          for (int b : {-1, 1}) {
            IntColumn v(rank, 0);
            v[i] = a;
            v[j] = b;
            out.push_back(v);
          }
  } else {
    static const std::vector<IntColumn> e6 = e_roots_uncached(6);
    static const std::vector<IntColumn> e7 = e_roots_uncached(7);
    static const std::vector<IntColumn> e8 = e_roots_uncached(8);
    return f == RootFamily::E6 ? e6 : f == RootFamily::E7 ? e7 : e8;
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntegralDecomposition standard_embedding(const RootComponent& c, std::size_t s) {
  if (s == 0) throw InvalidArgument("scale must be positive");
  const std::size_t rank = is_e(c.family) ? e_rank(c.family) : c.rank;
  const std::size_t rep = repetition(c.family, s);
  const Model m = model_basis(c.family, rank);
  IntSymMatrix gram(m.basis.size());
  std::vector<IntColumn> cols;
  for (std::size_t i = 0; i < m.basis.size(); ++i) {
    for (std::size_t j = i; j < m.basis.size(); ++j)
      gram.set(i, j, dot(m.basis[i], m.basis[j]) / m.factor);
    cols.push_back(repeat_entries(m.basis[i], rep));
  }
  return IntegralDecomposition(s, std::move(cols), std::move(gram));
}

IntegralDecomposition component_isometry(const GramLattice& gc, const RootComponent& c,
                                         std::size_t s) {
  if (s == 0) throw InvalidArgument("scale must be positive");
  const IntSymMatrix& g = gc.gram();
  const std::size_t n = g.order();
  const std::size_t rank = is_e(c.family) ? e_rank(c.family) : c.rank;
  const std::size_t rep = repetition(c.family, s);
  const std::vector<IntColumn> roots = model_roots(c.family, rank);
  const long factor = is_e(c.family) ? 2 : 1;
  const std::vector<std::size_t> order = bfs_order(g);

  std::vector<std::int64_t> target(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) target[i * n + j] = g(i, j).get_si() * factor;

  std::vector<std::size_t> choice(n, 0);
  std::vector<const IntColumn*> image(n, nullptr);
  std::size_t depth = 1;
  image[order[0]] = &roots[0];
  choice[0] = 0;
  // Iterative backtracking; choice[d] is the next root index to try at depth d.
  if (n > 1) choice[1] = 0;
  while (depth > 0 && depth < n) {
    const std::size_t v = order[depth];
    bool placed = false;
    for (std::size_t k = choice[depth]; k < roots.size(); ++k) {
      bool ok = true;
      for (std::size_t e = 0; e < depth && ok; ++e) {
        const std::size_t w = order[e];
        ok = dot(roots[k], *image[w]) == target[v * n + w];
      }
      if (ok) {
        image[v] = &roots[k];
        choice[depth] = k + 1;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++depth;
      if (depth < n) choice[depth] = 0;
    } else {
      image[v] = nullptr;
      --depth;
    }
  }
  if (depth == 0)
    throw IsometryNotFound("no assignment of " + family_name(c.family, rank) +
                           " roots matches the component Gram matrix");
  std::vector<IntColumn> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(repeat_entries(*image[i], rep));
  return IntegralDecomposition(s, std::move(cols), g);
}

IntegralDecomposition decompose_structural(const GramLattice& b, std::size_t s) {
  if (s == 0) throw InvalidArgument("scale must be positive");
  const GramReduction red = reduce_gram(b);
  const std::size_t n = b.size();

  std::vector<IntegralDecomposition> blocks;
  std::size_t dim = red.unit_count * s;
  for (std::size_t k = 0; k < red.components.size(); ++k) {
    GramLattice gc(red.component_grams[k]);
    blocks.push_back(component_isometry(gc, classify_component(gc), s));
    dim += blocks.back().ambient_dim();
  }

  std::vector<IntColumn> reduced(n, IntColumn(dim, 0));
  std::size_t offset = red.unit_count * s;
  for (std::size_t k = 0; k < red.components.size(); ++k) {
    const auto& members = red.components[k];
    for (std::size_t a = 0; a < members.size(); ++a) {
      const IntColumn& col = blocks[k].column(a);
      std::copy(col.begin(), col.end(), reduced[members[a]].begin() + static_cast<std::ptrdiff_t>(offset));
    }
    offset += blocks[k].ambient_dim();
  }
  for (std::size_t i = 0; i < n; ++i)
    if (const auto& dup = red.duplicate_of[i])
      for (std::size_t d = 0; d < dim; ++d) reduced[i][d] = dup->second * reduced[dup->first][d];

  std::vector<IntColumn> cols = reduced;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < red.unit_count; ++k) {
      const std::int64_t c = red.unit_coeffs[i][k].get_si();
      if (c == 0) continue;
      for (std::size_t d = 0; d < s; ++d) cols[i][k * s + d] += c;
    }
  return IntegralDecomposition(s, std::move(cols), b.gram());
}

}  // namespace hlat
