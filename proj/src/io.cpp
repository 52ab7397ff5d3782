#include "hlat/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "hlat/errors.hpp"

namespace hlat {
namespace {

// Line reader that skips comments and blank lines and remembers where it is.
class Lines {
 public:
  explicit Lines(std::istream& in) : in_(in) {}

  // Tokens of the next non-empty line; false at end of input.
  bool next(std::vector<std::string>& tok) {
    std::string s;
    while (std::getline(in_, s)) {
      ++line_;
      if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
      std::istringstream ss(s);
      tok.clear();
      for (std::string t; ss >> t;) tok.push_back(t);
      if (!tok.empty()) return true;
    }
    return false;
  }

  std::size_t line() const { return line_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  long long integer(const std::string& t) const {
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + t + "'");
    }
    if (pos != t.size()) fail("expected an integer, got '" + t + "'");
    return v;
  }

  std::size_t count(const std::string& t) const {
    const long long v = integer(t);
    if (v < 0) fail("expected a non-negative count, got '" + t + "'");
    return static_cast<std::size_t>(v);
  }

  void expect_end() {
    std::vector<std::string> tok;
    if (next(tok)) fail("unexpected trailing content");
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<std::string> header(Lines& lines) {
  std::vector<std::string> tok;
  if (!lines.next(tok)) throw ParseError(lines.line() + 1, "empty input");
  return tok;
}

std::vector<std::pair<std::size_t, std::size_t>> read_edges(Lines& lines, std::size_t n,
                                                           std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::string> tok;
  for (std::size_t e = 0; e < m; ++e) {
    if (!lines.next(tok)) throw ParseError(lines.line() + 1, "expected " + std::to_string(m) +
                                                                 " edges, found " + std::to_string(e));
    if (tok.size() != 2) lines.fail("edge line needs two vertices");
    const std::size_t u = lines.count(tok[0]), v = lines.count(tok[1]);
    if (u >= n || v >= n) lines.fail("vertex out of range");
    if (u >= v) lines.fail("edge endpoints must satisfy u < v");
    if (!seen.insert({u, v}).second) lines.fail("duplicate edge");
    edges.emplace_back(u, v);
  }
  lines.expect_end();
  return edges;
}

Graph graph_body(Lines& lines, const std::vector<std::string>& h) {
  if (h.size() != 3) lines.fail("header must be 'graph <n> <m>'");
  const std::size_t n = lines.count(h[1]), m = lines.count(h[2]);
  if (n == 0) lines.fail("graph needs at least one vertex");
  return Graph::from_edges(n, read_edges(lines, n, m));
}

HoffmanGraph hoffman_body(Lines& lines, const std::vector<std::string>& h) {
  if (h.size() != 4) lines.fail("header must be 'hoffman <n_slim> <n_fat> <m>'");
  const std::size_t ns = lines.count(h[1]), nf = lines.count(h[2]), m = lines.count(h[3]);
  if (ns + nf == 0) lines.fail("Hoffman graph needs at least one vertex");
  const std::size_t hdr = lines.line();
  const auto edges = read_edges(lines, ns + nf, m);
  std::vector<Label> labels(ns + nf, Label::slim);
  for (std::size_t i = ns; i < ns + nf; ++i) labels[i] = Label::fat;
  HoffmanGraph g(Graph::from_edges(ns + nf, edges), std::move(labels));
  const auto v = validate(g);
  if (!v.ok) throw ParseError(hdr, "not a Hoffman graph: " + v.violations.front());
  return g;
}

IntSymMatrix matrix_body(Lines& lines, const std::vector<std::string>& h) {
  if (h.size() != 2) lines.fail("header must be 'matrix <n>'");
  const std::size_t n = lines.count(h[1]);
  if (n == 0) lines.fail("matrix needs positive order");
  std::vector<IntVector> rows;
  std::vector<std::string> tok;
  for (std::size_t i = 0; i < n; ++i) {
    if (!lines.next(tok)) throw ParseError(lines.line() + 1, "expected " + std::to_string(n) + " rows");
    if (tok.size() != n) lines.fail("row needs " + std::to_string(n) + " entries");
    IntVector r;
    r.reserve(n);
    for (const auto& t : tok) {
      BigInt v;
      if (v.set_str(t, 10) != 0) lines.fail("expected an integer, got '" + t + "'");
      r.push_back(v);
    }
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (rows[i][j] != rows[j][i])
        throw ParseError(lines.line(), "matrix is not symmetric at (" + std::to_string(j) + "," +
                                           std::to_string(i) + ")");
  lines.expect_end();
  return IntSymMatrix::from_rows(rows);
}

template <class F>
auto read_kind(std::istream& in, const char* kind, F body) {
  Lines lines(in);
  const auto h = header(lines);
  if (h[0] != kind) lines.fail(std::string("expected '") + kind + "' header");
  return body(lines, h);
}

}  // namespace

Graph read_graph(std::istream& in) { return read_kind(in, "graph", graph_body); }
HoffmanGraph read_hoffman(std::istream& in) { return read_kind(in, "hoffman", hoffman_body); }
IntSymMatrix read_matrix(std::istream& in) { return read_kind(in, "matrix", matrix_body); }

AnyInput read_any(std::istream& in) {
  Lines lines(in);
  const auto h = header(lines);
  if (h[0] == "graph") return graph_body(lines, h);
  if (h[0] == "hoffman") return hoffman_body(lines, h);
  if (h[0] == "matrix") return matrix_body(lines, h);
  lines.fail("unknown header '" + h[0] + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnyInput read_any_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_any(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.order() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_hoffman(std::ostream& out, const HoffmanGraph& h) {
  for (std::size_t i = 0; i < h.slim_count(); ++i)
    if (h.slim_vertices()[i] != i) throw InvalidArgument("slim vertices must come first");
  out << "hoffman " << h.slim_count() << ' ' << h.fat_count() << ' ' << h.graph().edge_count()
      << '\n';
  for (const auto& [u, v] : h.graph().edges()) out << u << ' ' << v << '\n';
}

void write_matrix(std::ostream& out, const IntSymMatrix& m) {
  out << "matrix " << m.order() << '\n' << m.to_text();
}

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string gram_digest(const IntSymMatrix& gram) { return fnv1a64(gram.to_text()); }

nlohmann::json certificate_to_json(const IntegralDecomposition& d) {
  nlohmann::json j;
  j["scale"] = d.scale();
  j["ambient_dim"] = d.ambient_dim();
  j["columns"] = d.columns();
  j["gram_digest"] = gram_digest(d.gram());
  return j;
}

IntegralDecomposition certificate_from_json(const nlohmann::json& j, const IntSymMatrix& gram) {
  std::size_t scale = 0, dim = 0;
  std::vector<IntColumn> cols;
  std::string digest;
  try {
    scale = j.at("scale").get<std::size_t>();
    dim = j.at("ambient_dim").get<std::size_t>();
    cols = j.at("columns").get<std::vector<IntColumn>>();
    digest = j.at("gram_digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed certificate: ") + e.what());
  }
  if (digest != gram_digest(gram)) throw VerificationFailed("certificate digest does not match the Gram matrix");
  for (const auto& c : cols)
    if (c.size() != dim) throw VerificationFailed("certificate column length differs from ambient_dim");
  return IntegralDecomposition(scale, std::move(cols), gram);
}

}  // namespace hlat
