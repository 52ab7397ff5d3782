// hlat: command-line front end. Every subcommand prints one JSON report on
// stdout; diagnostics go to stderr.
//
// Exit codes: 0 success or feasible, 1 infeasible or violation,
// 2 inconclusive, 3 input or usage error.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlat/assoc.hpp"
#include "hlat/errors.hpp"
#include "hlat/exactmat.hpp"
#include "hlat/families.hpp"
#include "hlat/forbidden.hpp"
#include "hlat/hoffman.hpp"
#include "hlat/io.hpp"
#include "hlat/lattice.hpp"
#include "hlat/spectra.hpp"

using json = nlohmann::json;
using namespace hlat;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { ok = 0, violation = 1, inconclusive = 2, input_error = 3 };

struct Global {
  std::uint64_t seed = 0;
  int jobs = 1;
  bool timing = false;
};

struct Run {
  json report;
  int code = ok;
};

json inputs = json::array();

// Reads a file and records its digest in the report.
AnyInput load(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  AnyInput a = read_any(in);
  static const char* kinds[] = {"graph", "hoffman", "matrix"};
  inputs.push_back({{"path", path}, {"kind", kinds[a.index()]}, {"digest", fnv1a64(text)}});
  return a;
}

Graph load_graph(const std::string& path) {
  auto a = load(path);
  if (auto* g = std::get_if<Graph>(&a)) return *g;
  throw InvalidArgument(path + ": expected a graph file");
}

HoffmanGraph load_hoffman(const std::string& path) {
  auto a = load(path);
  if (auto* h = std::get_if<HoffmanGraph>(&a)) return *h;
  throw InvalidArgument(path + ": expected a hoffman file");
}

// Graphs give their adjacency matrix, Hoffman graphs their special matrix.
IntSymMatrix load_matrix(const std::string& path) {
  auto a = load(path);
  if (auto* g = std::get_if<Graph>(&a)) return g->adjacency();
  if (auto* h = std::get_if<HoffmanGraph>(&a)) return special_matrix(*h);
  return std::get<IntSymMatrix>(a);
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw InvalidArgument("not a rational number: " + s);
  if (q.get_den() == 0) throw InvalidArgument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string str(const Rational& q) { return q.get_str(); }
std::string str(const BigInt& z) { return z.get_str(); }

json matrix_json(const IntSymMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.order(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.order(); ++j) {
      const BigInt& v = m(i, j);
      if (v.fits_slong_p()) r.push_back(v.get_si());
      else r.push_back(str(v));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

json bracket_json(const EigenBracket& b) {
  return {{"lo", str(b.lo)}, {"hi", str(b.hi)}, {"lo_float", b.lo.get_d()}, {"hi_float", b.hi.get_d()}};
}

std::string graph_text(const Graph& g) {
  std::ostringstream o;
  write_graph(o, g);
  return o.str();
}

std::string hoffman_text(const HoffmanGraph& h) {
  std::ostringstream o;
  write_hoffman(o, h);
  return o.str();
}

int status_exit(SearchStatus s) {
  switch (s) {
    case SearchStatus::feasible: return ok;
    case SearchStatus::infeasible: return violation;
    case SearchStatus::inconclusive: return inconclusive;
  }
  return inconclusive;
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ',');) {
    std::size_t pos = 0;
    long long v = -1;
    try {
      v = std::stoll(t, &pos);
    } catch (const std::exception&) {
    }
    if (v < 0 || pos != t.size()) throw InvalidArgument("bad list entry '" + t + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

// ---- subcommands ----

Run cmd_eigen(const std::string& path, const std::string& width) {
  const IntSymMatrix m = load_matrix(path);
  const auto spec = float_spectrum(m);
  const auto b = lambda_min_bracket(m, parse_rational(width));
  return {{{"spectrum", spec},
           {"lambda_min_float", spec.front()},
           {"lambda_max_float", spec.back()},
           {"lambda_min_bracket", bracket_json(b)}}};
}

Run cmd_psd(const std::string& path, const std::string& shift) {
  const IntSymMatrix m = load_matrix(path);
  const Rational t = parse_rational(shift);
  const auto v = psd_check(m, t);
  json r{{"shift", str(t)}, {"is_psd", v.is_psd}, {"singular", v.is_singular}};
  if (v.failure_index) r["failure_index"] = *v.failure_index;
  json piv = json::array();
  for (const auto& p : v.pivot_trace) piv.push_back(str(p));
  r["pivots"] = piv;
  return {r, v.is_psd ? ok : violation};
}

Run cmd_sp(const std::string& path) {
  const HoffmanGraph h = load_hoffman(path);
  const auto v = validate(h);
  const IntSymMatrix sp = special_matrix(h);
  return {{{"is_fat", v.is_fat},
           {"slim_vertices", h.slim_vertices()},
           {"special_matrix", matrix_json(sp)},
           {"lambda_min_float", float_lambda_min(sp)}}};
}

json assoc_json(const AssociatedGraph& a, const IntSymMatrix& sp, bool psd) {
  json cls = json::array();
  for (const auto& c : a.classes)
    cls.push_back({{"cliques", c.members}, {"quasi_clique", c.quasi_clique},
                   {"representative_consistent", c.representative_consistent}});
  return {{"fat_count", a.hoffman.fat_count()},
          {"is_fat", a.is_fat},
          {"classes", cls},
          {"hoffman", hoffman_text(a.hoffman)},
          {"special_lambda_min_float", float_lambda_min(sp)},
          {"special_plus_3I_psd", psd}};
}

Run cmd_assoc(const std::string& path, std::size_t m, std::optional<std::size_t> n) {
  const Graph g = load_graph(path);
  json r{{"m", m}};
  if (!n) {
    auto found = find_fat_associated(g, m, 2 * m, false);
    if (!found) {
      r["is_fat"] = false;
      r["note"] = "no clique threshold gives a fat associated graph";
      return {r, violation};
    }
    r["n"] = found->n;
    r.update(assoc_json(found->graph, special_matrix(found->graph.hoffman), found->shifted_psd));
    return {r, ok};
  }
  const auto params = *n >= (m + 1) * (m + 1) ? AssocParams::make(m, *n) : AssocParams::relaxed(m, *n);
  r["n"] = *n;
  r["relaxed_bound"] = params.relaxed_bound;
  const auto a = associated_hoffman(g, params);
  if (a.hoffman.slim_count() == 0 || a.hoffman.fat_count() == 0) {
    r["is_fat"] = false;
    r["fat_count"] = a.hoffman.fat_count();
    return {r, violation};
  }
  const IntSymMatrix sp = special_matrix(a.hoffman);
  const bool psd = psd_check(sp, 3).is_psd;
  r.update(assoc_json(a, sp, psd));
  return {r, a.is_fat ? ok : violation};
}

Run cmd_certify(const std::string& path, std::size_t s, std::size_t m, std::optional<std::size_t> n,
                const DecomposeOptions& search) {
  const Graph g = load_graph(path);
  CertifyOptions o;
  o.m = m;
  o.n = n;
  o.search = search;
  const auto c = certify_graph(g, s, o);
  json r{{"scale", s},
         {"status", status_name(c.status)},
         {"shift", c.shift},
         {"route", c.route},
         {"nodes", c.nodes},
         {"dimension_complete", c.dimension_complete},
         {"notes", c.notes}};
  if (c.assoc_n) r["assoc_n"] = *c.assoc_n;
  if (c.certificate) r["certificate"] = certificate_to_json(*c.certificate);
  return {r, status_exit(c.status)};
}

Run cmd_decompose(const std::string& path, std::size_t s, const std::string& method,
                  const DecomposeOptions& search) {
  const GramLattice b(load_matrix(path), path);
  json r{{"scale", s}, {"method", method}};
  if (method == "structural") {
    try {
      const auto d = decompose_structural(b, s);
      r["status"] = "feasible";
      r["certificate"] = certificate_to_json(d);
      return {r, ok};
    } catch (const Unrepresentable& e) {
      r["status"] = "infeasible";
      r["reason"] = e.what();
      return {r, violation};
    }
  }
  if (method != "generic") throw InvalidArgument("method must be generic or structural");
  const auto d = decompose_generic(b, s, search);
  r["status"] = status_name(d.status);
  r["nodes"] = d.nodes;
  r["dimension"] = d.dimension;
  r["dimension_complete"] = d.dimension_complete;
  if (d.decomposition) r["certificate"] = certificate_to_json(*d.decomposition);
  return {r, status_exit(d.status)};
}

Run cmd_verify(const std::string& cert_path, const std::string& input_path) {
  const json j = json::parse(read_file(cert_path));
  const json& cert = j.contains("result") ? j.at("result").at("certificate")
                     : j.contains("certificate") ? j.at("certificate")
                                                 : j;
  long shift = 0;
  if (j.contains("result") && j.at("result").contains("shift")) shift = j.at("result").at("shift").get<long>();
  const auto a = load(input_path);
  IntSymMatrix gram = std::holds_alternative<Graph>(a) ? std::get<Graph>(a).adjacency().plus_identity(shift)
                      : std::holds_alternative<HoffmanGraph>(a)
                          ? special_matrix(std::get<HoffmanGraph>(a)).plus_identity(shift)
                          : std::get<IntSymMatrix>(a);
  try {
    const auto d = certificate_from_json(cert, gram);
    return {{{"verified", true}, {"scale", d.scale()}, {"shift", shift}, {"gram_digest", gram_digest(gram)}}};
  } catch (const VerificationFailed& e) {
    return {{{"verified", false}, {"reason", e.what()}}, violation};
  }
}

Run cmd_enum(std::size_t max_order, int jobs) {
  const auto e = enumerate_mhat(max_order, jobs);
  json cands = json::array();
  std::vector<std::size_t> per_order(max_order, 0), minimal_per_order(max_order, 0);
  for (const auto& c : e.candidates) {
    json item{{"order", c.order()}, {"matrix", matrix_json(c)}};
    ++per_order[c.order() - 1];
    if (auto h = realize_special(c)) {
      item["realization"] = hoffman_text(*h);
      const auto v = minimal_forbidden_check(*h);
      item["graph_minimal"] = v.is_minimal_forbidden;
      if (v.is_minimal_forbidden) ++minimal_per_order[c.order() - 1];
    } else {
      item["realization"] = nullptr;
      item["graph_minimal"] = false;
    }
    cands.push_back(std::move(item));
  }
  return {{{"max_order", max_order},
           {"note", "orders above " + std::to_string(max_order) + " were not searched"},
           {"frontier_sizes", e.frontier_sizes},
           {"candidates_per_order", per_order},
           {"graph_minimal_per_order", minimal_per_order},
           {"candidates", cands}}};
}

Run cmd_realize(const std::string& path) {
  const IntSymMatrix m = load_matrix(path);
  const auto h = realize_special(m);
  if (!h) return {{{"realizable", false}}, violation};
  return {{{"realizable", true}, {"hoffman", hoffman_text(*h)}, {"is_fat", validate(*h).is_fat}}};
}

Run cmd_limit(const std::string& path, const std::string& i2, std::size_t nmax) {
  const IntSymMatrix m = load_matrix(path);
  Partition part;
  part.second = parse_list(i2);
  for (std::size_t i = 0; i < m.order(); ++i)
    if (std::find(part.second.begin(), part.second.end(), i) == part.second.end()) part.first.push_back(i);
  const auto rep = limit_report(m, part, nmax);
  const auto w = limit_bound_witness(m, part, nmax);
  const bool good = rep.monotone && rep.above_lambda_min && rep.bound_holds;
  return {{{"i2", part.second},
           {"n", rep.n_values},
           {"mu", rep.mu},
           {"lambda_min", rep.lambda_min_M},
           {"monotone", rep.monotone},
           {"above_lambda_min", rep.above_lambda_min},
           {"bound_holds", rep.bound_holds},
           {"witness_residual", w.residual_max}},
          good ? ok : violation};
}

Run cmd_gen(const std::string& family, const std::vector<std::string>& params, std::uint64_t seed,
            const std::string& out) {
  auto num = [&](std::size_t i) -> std::size_t {
    if (i >= params.size()) throw InvalidArgument(family + ": missing parameter " + std::to_string(i + 1));
    return parse_list(params[i]).front();
  };
  auto real = [&](std::size_t i) {
    if (i >= params.size()) throw InvalidArgument(family + ": missing parameter " + std::to_string(i + 1));
    return std::stod(params[i]);
  };
  auto file = [&](std::size_t i) -> const std::string& {
    if (i >= params.size()) throw InvalidArgument(family + ": missing input file");
    return params[i];
  };
  std::optional<Graph> g;
  std::optional<HoffmanGraph> h;
  json extra = json::object();
  if (family == "path") g = path_graph(num(0));
  else if (family == "cycle") g = cycle_graph(num(0));
  else if (family == "complete") g = complete_graph(num(0));
  else if (family == "claw") g = claw_graph(num(0));
  else if (family == "k2m-tilde") g = k2m_tilde(num(0));
  else if (family == "e6-tilde") g = e6_tilde();
  else if (family == "petersen") g = petersen_graph();
  else if (family == "line") g = line_graph(load_graph(file(0)));
  else if (family == "cone") g = k_point_cone(load_graph(file(0)), num(1));
  else if (family == "cone-clique") g = cone_with_clique(load_graph(file(0)), num(1));
  else if (family == "random") g = random_graph(num(0), real(1), seed);
  else if (family == "glg") {
    auto s = random_generalized_line_graph(num(0), num(1), seed);
    g = s.graph;
    extra["columns"] = s.columns;
  } else if (family == "canonical-p") h = canonical_fat(load_graph(file(0)), CanonicalMode::p);
  else if (family == "canonical-q") h = canonical_fat(load_graph(file(0)), CanonicalMode::q);
  else if (family == "fat-random") h = random_fat_hoffman(num(0), num(1), real(2), num(3), seed);
  else if (family == "clique-replace") g = clique_replacement_graph(load_hoffman(file(0)), num(1));
  else throw InvalidArgument("unknown family '" + family + "'");

  const std::string text = g ? graph_text(*g) : hoffman_text(*h);
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw InvalidArgument("cannot write " + out);
    f << text;
  }
  json r{{"family", family}, {"params", params}, {"seed", seed}, {"kind", g ? "graph" : "hoffman"}};
  r["order"] = g ? g->order() : h->graph().order();
  r["edges"] = g ? g->edge_count() : h->graph().edge_count();
  r["digest"] = fnv1a64(text);
  if (out.empty()) r["text"] = text;
  else r["out"] = out;
  r.update(extra);
  return {r};
}

Run cmd_ingest(const std::string& path, const std::string& expect) {
  std::optional<SrgParameters> want;
  if (!expect.empty()) {
    const auto v = parse_list(expect);
    if (v.size() != 4) throw InvalidArgument("--expect-srg needs four numbers v,k,lambda,mu");
    want = SrgParameters{v[0], v[1], v[2], v[3]};
  }
  inputs.push_back({{"path", path}, {"kind", "graph"}, {"digest", fnv1a64(read_file(path))}});
  json r{{"path", path}};
  try {
    const auto rep = ingest_graph(path, want);
    r["order"] = rep.graph.order();
    r["edges"] = rep.graph.edge_count();
    r["strongly_regular"] = rep.srg.has_value();
    if (rep.srg) r["srg"] = {rep.srg->v, rep.srg->k, rep.srg->lambda, rep.srg->mu};
    r["matches_expected"] = rep.matches_expected;
    return {r};
  } catch (const VerificationFailed& e) {
    r["matches_expected"] = false;
    r["reason"] = e.what();
    return {r, violation};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for graphs and Hoffman graphs with smallest eigenvalue at least -3"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  Global gl;
  app.add_option("--seed", gl.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--jobs", gl.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--timing", gl.timing, "Add wall time to the report");

  std::function<Run()> action;
  std::string path, path2, text_opt = "1/1000000", shift = "0", method = "generic", i2, expect, out,
                           family;
  std::size_t s = 1, m = 12, max_order = 5, nmax = 40;
  std::optional<std::size_t> n;
  std::vector<std::string> params;
  DecomposeOptions search;

  auto* eigen = app.add_subcommand("eigen", "Float spectrum and certified lambda_min bracket");
  eigen->add_option("input", path)->required();
  eigen->add_option("--width", text_opt, "Bracket width (rational)")->capture_default_str();
  eigen->callback([&] { action = [&] { return cmd_eigen(path, text_opt); }; });

  auto* psd = app.add_subcommand("psd", "Exact PSD test of M + tI");
  psd->add_option("input", path)->required();
  psd->add_option("--shift", shift, "t (integer or p/q)")->capture_default_str();
  psd->callback([&] { action = [&] { return cmd_psd(path, shift); }; });

  auto* sp = app.add_subcommand("sp", "Special matrix of a Hoffman graph");
  sp->add_option("input", path)->required();
  sp->callback([&] { action = [&] { return cmd_sp(path); }; });

  auto* assoc = app.add_subcommand("assoc", "Associated Hoffman graph");
  assoc->add_option("input", path)->required();
  assoc->add_option("-m", m)->capture_default_str();
  assoc->add_option("-n", n, "Clique size threshold (scanned upward from 2m when omitted)");
  assoc->callback([&] { action = [&] { return cmd_assoc(path, m, n); }; });

  auto add_search = [&](CLI::App* c) {
    c->add_option("--max-extra-dim", search.max_extra_dim)->capture_default_str();
    c->add_option("--dimension", search.dimension);
    c->add_option("--budget", search.node_budget, "Node budget per shard")->capture_default_str();
  };

  auto* certify = app.add_subcommand("certify", "Decide s-integrability of A + tI");
  certify->add_option("input", path)->required();
  certify->add_option("--s", s)->capture_default_str()->check(CLI::PositiveNumber);
  certify->add_option("-m", m)->capture_default_str();
  certify->add_option("-n", n);
  add_search(certify);
  certify->callback([&] { action = [&] { return cmd_certify(path, s, m, n, search); }; });

  auto* decompose = app.add_subcommand("decompose", "Integer decomposition of a Gram matrix");
  decompose->add_option("input", path)->required();
  decompose->add_option("--s", s)->capture_default_str()->check(CLI::PositiveNumber);
  decompose->add_option("--method", method)->capture_default_str()->check(CLI::IsMember({"generic", "structural"}));
  add_search(decompose);
  decompose->callback([&] { action = [&] { return cmd_decompose(path, s, method, search); }; });

  auto* verify = app.add_subcommand("verify", "Re-verify a certificate or report against its input");
  verify->add_option("certificate", path)->required();
  verify->add_option("input", path2)->required();
  verify->callback([&] { action = [&] { return cmd_verify(path, path2); }; });

  auto* enumerate = app.add_subcommand("enum-forbidden", "Enumerate candidate special matrices");
  enumerate->add_option("--max-order", max_order)->capture_default_str()->check(CLI::Range(1, 10));
  enumerate->callback([&] { action = [&] { return cmd_enum(max_order, gl.jobs); }; });

  auto* realize = app.add_subcommand("realize", "Fat Hoffman graph with Sp + I = M");
  realize->add_option("input", path)->required();
  realize->callback([&] { action = [&] { return cmd_realize(path); }; });

  auto* limit = app.add_subcommand("limit", "Blow-up eigenvalue sequence and its bound");
  limit->add_option("input", path)->required();
  limit->add_option("--i2", i2, "Comma-separated indices")->required();
  limit->add_option("--nmax", nmax)->capture_default_str()->check(CLI::PositiveNumber);
  limit->callback([&] { action = [&] { return cmd_limit(path, i2, nmax); }; });

  auto* gen = app.add_subcommand("gen", "Generate a graph family member");
  gen->add_option("family", family,
                  "path|cycle|complete|claw|k2m-tilde|e6-tilde|petersen|line|cone|cone-clique|"
                  "random|glg|canonical-p|canonical-q|fat-random|clique-replace")
      ->required();
  gen->add_option("params", params);
  gen->add_option("-o,--out", out, "Write the graph file here");
  gen->callback([&] { action = [&] { return cmd_gen(family, params, gl.seed, out); }; });

  auto* ingest = app.add_subcommand("ingest", "Read an edge list and check strong regularity");
  ingest->add_option("input", path)->required();
  ingest->add_option("--expect-srg", expect, "v,k,lambda,mu");
  ingest->callback([&] { action = [&] { return cmd_ingest(path, expect); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  }

  json report{{"tool", "hlat"}, {"version", kVersion}};
  json cmd = json::array();
  for (int i = 1; i < argc; ++i) cmd.push_back(argv[i]);
  report["command"] = cmd;
  search.jobs = gl.jobs;

  int code = ok;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Run r = action();
    report["result"] = std::move(r.report);
    code = r.code;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    code = input_error;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    report["error"] = {{"kind", "input"}, {"message", e.what()}};
    code = input_error;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    report["error"] = {{"kind", "violation"}, {"message", e.what()}};
    code = violation;
  }
  report["inputs"] = inputs;
  if (gl.timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report["exit_code"] = code;
  std::cout << report.dump(2) << '\n';
  return code;
}
