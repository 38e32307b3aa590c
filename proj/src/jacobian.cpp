// Trace-map coordinates and their closed-form Jacobian.
//
// f(M) lists tr M^{2r}/(4r) for the matrix and for the matrix with row and
// column v zeroed (the deleted matrix padded back, which leaves the traces
// unchanged). d(tr M^k)/d(weight of edge ij) = -2k (M^{k-1})_{ij} for skew
// matrices, so the Jacobian rows are odd powers read off at the edges.

#include "skewsiep/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace skewsiep {

namespace {

Dense zeroed_at(const Dense& m, int v0) {
  Dense out = m;
  for (int i = 0; i < m.n(); ++i) {
    out.at(v0, i) = 0.0;
    out.at(i, v0) = 0.0;
  }
  return out;
}

void check_vertex(int n, int v) {
  if (v < 1 || v > n) throw std::invalid_argument("vertex outside 1.." + std::to_string(n));
}

}  // namespace

EdgeIndexing EdgeIndexing::for_tree(const Tree& t) {
  EdgeIndexing idx;
  idx.n = t.n;
  idx.edges = t.edges;  // already sorted lexicographically
  idx.tree_edge_count = static_cast<int>(t.edges.size());
  return idx;
}

EdgeIndexing EdgeIndexing::for_graph(const Graph& g) {
  EdgeIndexing idx;
  idx.n = g.n;
  idx.edges = g.edges;
  idx.tree_edge_count = static_cast<int>(g.edges.size());
  return idx;
}

EdgeIndexing EdgeIndexing::for_supergraph(const Tree& t, const std::vector<Edge>& chords) {
  EdgeIndexing idx;
  idx.n = t.n;
  idx.edges = t.edges;
  idx.tree_edge_count = static_cast<int>(t.edges.size());
  std::vector<Edge> sorted = chords;
  for (auto& [i, j] : sorted) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > t.n || i == j) throw std::invalid_argument("invalid chord");
  }
  std::sort(sorted.begin(), sorted.end());
  for (size_t k = 0; k < sorted.size(); ++k) {
    if (k > 0 && sorted[k] == sorted[k - 1]) throw std::invalid_argument("duplicate chord");
    if (std::binary_search(t.edges.begin(), t.edges.end(), sorted[k]))
      throw std::invalid_argument("chord duplicates a tree edge");
    idx.edges.push_back(sorted[k]);
  }
  return idx;
}

SkewMatrix matrix_from_weights(const EdgeIndexing& idx, const std::vector<double>& weights) {
  if (weights.size() != idx.edges.size())
    throw std::invalid_argument("weight count does not match edge count");
  SkewMatrix a(idx.n);
  for (size_t k = 0; k < weights.size(); ++k)
    a.set(idx.edges[k].first, idx.edges[k].second, weights[k]);
  return a;
}

TraceMapValue trace_map(const SkewMatrix& m, int v) {
  int n = m.order();
  check_vertex(n, v);
  TraceMapValue out;
  if (n <= 1) return out;
  int m_rows = n / 2;
  int n_rows = (n - 1) - m_rows;

  Dense md = m.to_dense();
  Dense m2 = matmul(md, md);
  Dense cur = m2;
  for (int r = 1; r <= m_rows; ++r) {
    out.push_back(cur.trace() / (4.0 * r));
    if (r < m_rows) cur = matmul(cur, m2);
  }
  if (n_rows > 0) {
    Dense nd = zeroed_at(md, v - 1);
    Dense n2 = matmul(nd, nd);
    cur = n2;
    for (int r = 1; r <= n_rows; ++r) {
      out.push_back(cur.trace() / (4.0 * r));
      if (r < n_rows) cur = matmul(cur, n2);
    }
  }
  return out;
}

TraceMapValue trace_map(const std::vector<double>& weights, const Graph& g, int v) {
  return trace_map(matrix_from_weights(EdgeIndexing::for_graph(g), weights), v);
}

Dense trace_map_jacobian(const SkewMatrix& m, const EdgeIndexing& idx, int v) {
  int n = m.order();
  check_vertex(n, v);
  if (idx.n != n) throw std::invalid_argument("edge indexing order does not match matrix");
  if (idx.tree_edge_count != n - 1)
    throw std::invalid_argument("expected n-1 tree-edge columns");
  int m_rows = n / 2;
  int n_rows = (n - 1) - m_rows;

  Dense j(n - 1);
  Dense md = m.to_dense();
  Dense m2 = matmul(md, md);
  Dense cur = md;  // M^{2r-1}
  for (int r = 1; r <= m_rows; ++r) {
    for (int l = 0; l < n - 1; ++l) {
      auto [ei, ej] = idx.edges[l];
      j.at(r - 1, l) = -cur.at(ei - 1, ej - 1);
    }
    if (r < m_rows) cur = matmul(cur, m2);
  }
  if (n_rows > 0) {
    Dense nd = zeroed_at(md, v - 1);
    Dense n2 = matmul(nd, nd);
    cur = nd;
    for (int r = 1; r <= n_rows; ++r) {
      for (int l = 0; l < n - 1; ++l) {
        auto [ei, ej] = idx.edges[l];
        j.at(m_rows + r - 1, l) = -cur.at(ei - 1, ej - 1);
      }
      if (r < n_rows) cur = matmul(cur, n2);
    }
  }
  return j;
}

Dense jacobian_f(const SkewMatrix& a, const Tree& t, int v) {
  if (a.order() != t.n) throw std::invalid_argument("matrix order does not match tree order");
  if (a.nonzero_edges() != t.edges)
    throw std::invalid_argument("matrix sparsity pattern does not match the tree");
  return trace_map_jacobian(a, EdgeIndexing::for_tree(t), v);
}

NonsingularVerdict is_nonsingular(const Dense& j, double tol) {
  // rows of a trace-map Jacobian live on wildly different scales (the r-th
  // is built from the (2r-1)-th matrix power), so raw pivots say nothing
  // about invertibility; equilibrate rows to unit max first and measure
  // pivots there. abs_det is restored to the unscaled determinant.
  NonsingularVerdict v;
  int n = j.n();
  std::vector<double> a = j.data();
  double scale_product = 1.0;
  bool zero_row = false;
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s = std::max(s, std::fabs(a[static_cast<size_t>(r) * n + c]));
    if (s == 0.0) {
      zero_row = true;
      continue;
    }
    scale_product *= s;
    for (int c = 0; c < n; ++c) a[static_cast<size_t>(r) * n + c] /= s;
  }
  auto lu = lu_factor(n, std::move(a));
  v.min_pivot = lu.min_pivot;
  v.abs_det = zero_row ? 0.0 : std::fabs(lu.det()) * scale_product;
  v.nonsingular = !zero_row && !lu.singular && lu.min_pivot > tol;
  return v;
}

}  // namespace skewsiep
