#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "skewsiep/construct.hpp"
#include "skewsiep/graph.hpp"
#include "skewsiep/matrix.hpp"
#include "skewsiep/spectrum.hpp"

namespace skewsiep {

using Json = nlohmann::json;

// Missing, unreadable or unparseable inputs. Kept apart from
// std::runtime_error so the CLI can map it to its own exit code.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Graphs and trees: JSON {"n": int, "edges": [[i, j], ...]} with 1-based
// labels, or a whitespace-separated fallback "n i j i j ...".
Graph parse_graph(const std::string& text);
Graph read_graph_file(const std::string& path);
Tree read_tree_file(const std::string& path);

// Spectra: {"lambda": [...], "mu": [...]} full lists, or
// {"lambda_pos": [...], "mu_pos": [...]} strictly positive halves.
SpectrumSpec parse_spectrum(const std::string& text);
SpectrumSpec read_spectrum_file(const std::string& path);

// Matrices: {"n": int, "matrix": [[...]]} dense rows; an optional "edges"
// list is cross-checked against the sparsity pattern.
SkewMatrix parse_matrix(const std::string& text);
SkewMatrix read_matrix_file(const std::string& path);

Json graph_json(const Graph& g);
Json spectrum_json(const SpectrumSpec& spec);
Json matrix_json(const SkewMatrix& a);
Json certificate_json(const NebCertificate& cert);
Json verification_json(const VerificationSummary& summary);
// debug widens the trace with per-node residues and root lists.
Json trace_json(const RecursionNode& node, bool debug);

std::string matrix_csv(const SkewMatrix& a);

}  // namespace skewsiep
