#pragma once

// Text formats for graphs, Hoffman graphs and matrices, and JSON
// certificates.
//
//   graph <n> <m>           then m lines "u v", 0-indexed, u < v
//   hoffman <ns> <nf> <m>   slim 0..ns-1, fat ns..ns+nf-1, then m edges
//   matrix <n>              then n rows of n integers
//
// Blank lines and text after '#' are ignored.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <json.hpp>

#include "hlat/exactmat.hpp"
#include "hlat/hoffman.hpp"
#include "hlat/lattice.hpp"

namespace hlat {

Graph read_graph(std::istream& in);
HoffmanGraph read_hoffman(std::istream& in);
IntSymMatrix read_matrix(std::istream& in);

/// Dispatches on the header keyword.
using AnyInput = std::variant<Graph, HoffmanGraph, IntSymMatrix>;
AnyInput read_any(std::istream& in);

std::string read_file(const std::string& path);
AnyInput read_any_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g);
/// Slim vertices must precede fat ones.
void write_hoffman(std::ostream& out, const HoffmanGraph& h);
void write_matrix(std::ostream& out, const IntSymMatrix& m);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64(const std::string& bytes);
std::string gram_digest(const IntSymMatrix& gram);

/// {scale, ambient_dim, columns, gram_digest}.
nlohmann::json certificate_to_json(const IntegralDecomposition& d);

/// Rebuilds and re-verifies a certificate against `gram`; throws
/// VerificationFailed on a digest or Gram mismatch.
IntegralDecomposition certificate_from_json(const nlohmann::json& j, const IntSymMatrix& gram);

}  // namespace hlat
