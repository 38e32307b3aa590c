#include "skewsiep/io.hpp"

#include <fstream>
#include <sstream>

namespace skewsiep {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

namespace {

Json parse_json(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw IoError("invalid JSON in " + what);
  return j;
}

std::vector<Edge> edges_from_json(const Json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw IoError("edges must be [i, j] integer pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return edges;
}

std::vector<double> doubles_from_json(const Json& j, const std::string& key) {
  if (!j.is_array()) throw IoError(key + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw IoError(key + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  // JSON object, or the plain-text fallback "n  i j  i j ..."
  size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j = parse_json(text, "graph");
    if (!j.contains("n") || !j.contains("edges")) throw IoError("graph JSON needs n and edges");
    return Graph(j["n"].get<int>(), edges_from_json(j["edges"]));
  }
  std::istringstream is(text);
  int n;
  if (!(is >> n)) throw IoError("graph text must start with the vertex count");
  std::vector<Edge> edges;
  int a, b;
  while (is >> a) {
    if (!(is >> b)) throw IoError("graph text has a dangling edge endpoint");
    edges.emplace_back(a, b);
  }
  return Graph(n, std::move(edges));
}

Graph read_graph_file(const std::string& path) {
  try {
    return parse_graph(read_text_file(path));
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
}

Tree read_tree_file(const std::string& path) {
  Graph g = read_graph_file(path);
  try {
    return Tree(g.n, g.edges);
  } catch (const std::invalid_argument& e) {
    throw IoError(path + ": " + e.what());
  }
}

SpectrumSpec parse_spectrum(const std::string& text) {
  Json j = parse_json(text, "spectrum");
  if (j.contains("lambda") && j.contains("mu")) {
    SpectrumSpec spec;
    spec.lambdas = doubles_from_json(j["lambda"], "lambda");
    spec.mus = doubles_from_json(j["mu"], "mu");
    return spec;
  }
  if (j.contains("lambda_pos") && j.contains("mu_pos")) {
    try {
      return SpectrumSpec::from_positive(doubles_from_json(j["lambda_pos"], "lambda_pos"),
                                         doubles_from_json(j["mu_pos"], "mu_pos"));
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("spectrum: ") + e.what());
    }
  }
  throw IoError("spectrum JSON needs lambda/mu or lambda_pos/mu_pos");
}

SpectrumSpec read_spectrum_file(const std::string& path) {
  try {
    return parse_spectrum(read_text_file(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

SkewMatrix parse_matrix(const std::string& text) {
  Json j = parse_json(text, "matrix");
  if (!j.contains("matrix")) throw IoError("matrix JSON needs a matrix field");
  std::vector<std::vector<double>> rows;
  for (const auto& r : j["matrix"]) rows.push_back(doubles_from_json(r, "matrix row"));
  if (j.contains("n") && j["n"].get<int>() != static_cast<int>(rows.size()))
    throw IoError("matrix n field disagrees with the row count");
  SkewMatrix a;
  try {
    a = SkewMatrix::from_rows(rows);
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("matrix: ") + e.what());
  }
  if (j.contains("edges")) {
    auto declared = edges_from_json(j["edges"]);
    for (auto& [x, y] : declared)
      if (x > y) std::swap(x, y);
    std::sort(declared.begin(), declared.end());
    if (declared != a.nonzero_edges())
      throw IoError("matrix: declared edge list disagrees with the sparsity pattern");
  }
  return a;
}

SkewMatrix read_matrix_file(const std::string& path) {
  try {
    return parse_matrix(read_text_file(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [i, j] : g.edges) edges.push_back({i, j});
  return Json{{"n", g.n}, {"edges", edges}};
}

Json spectrum_json(const SpectrumSpec& spec) {
  return Json{{"lambda", spec.lambdas}, {"mu", spec.mus}};
}

Json matrix_json(const SkewMatrix& a) {
  Json edges = Json::array();
  for (auto [i, j] : a.nonzero_edges()) edges.push_back({i, j});
  return Json{{"n", a.order()}, {"matrix", a.rows()}, {"edges", edges}};
}

Json certificate_json(const NebCertificate& cert) {
  Json j{{"vertex", cert.vertex}, {"verdict", cert.verdict}};
  if (cert.witness) {
    Json w;
    if (cert.witness->kind == NebFailure::OddComponentCount) {
      w["kind"] = "odd-components";
      w["vertex"] = cert.witness->vertex;
      w["odd_components"] = cert.witness->odd_components;
      w["expected"] = cert.witness->expected_odd;
    } else {
      w["kind"] = "branch-not-neb";
      w["vertex"] = cert.witness->vertex;
      w["branch_root"] = cert.witness->branch_root;
    }
    j["witness"] = w;
  }
  return j;
}

Json verification_json(const VerificationSummary& s) {
  Json j{{"lambda_dev", s.lambda_dev},
         {"mu_dev", s.mu_dev},
         {"identity_residual", s.identity_residual},
         {"duarte", s.duarte_ok},
         {"eig_tol", s.eig_tol_used},
         {"pass", s.pass}};
  if (!s.duarte_ok) j["duarte_failing_vertex"] = s.duarte_failing_vertex;
  return j;
}

Json trace_json(const RecursionNode& node, bool debug) {
  Json j{{"vertex", node.vertex}, {"order", static_cast<int>(node.lambdas.size())}};
  Json branches = Json::array();
  for (const auto& bt : node.branch_traces) {
    Json b{{"neighbor", bt.neighbor}, {"y", bt.y}};
    if (debug) {
      b["g_roots"] = bt.g_roots;
      b["h_roots"] = bt.h_roots;
    }
    branches.push_back(b);
  }
  j["branches"] = branches;
  if (debug) {
    j["lambda"] = node.lambdas;
    j["mu"] = node.mus;
    j["residues"] = node.residues;
  }
  Json children = Json::array();
  for (const auto& c : node.children) children.push_back(trace_json(c, debug));
  j["children"] = children;
  return j;
}

std::string matrix_csv(const SkewMatrix& a) {
  std::ostringstream os;
  os.precision(17);
  for (int i = 1; i <= a.order(); ++i) {
    for (int j = 1; j <= a.order(); ++j) {
      if (j > 1) os << ",";
      os << a.at(i, j);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace skewsiep
