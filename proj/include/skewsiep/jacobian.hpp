#pragma once

#include <vector>

#include "skewsiep/dense.hpp"
#include "skewsiep/graph.hpp"
#include "skewsiep/matrix.hpp"

namespace skewsiep {

// Fixed edge order shared by the trace map, its Jacobian and the homotopy:
// tree edges first, then chords, each block sorted lexicographically.
struct EdgeIndexing {
  int n = 0;
  std::vector<Edge> edges;
  int tree_edge_count = 0;

  static EdgeIndexing for_tree(const Tree& t);
  static EdgeIndexing for_graph(const Graph& g);  // every edge in the tree block
  static EdgeIndexing for_supergraph(const Tree& t, const std::vector<Edge>& chords);
};

// Scaled power-sum coordinates: tr M^{2r}/(4r) for r = 1..floor(n/2), then
// the same traces of M with row and column v zeroed (= the deleted matrix N
// padded back to size n), r = 1..ceil(n/2)-1. Total length n-1.
using TraceMapValue = std::vector<double>;

TraceMapValue trace_map(const SkewMatrix& m, int v);
TraceMapValue trace_map(const std::vector<double>& weights, const Graph& g, int v);

SkewMatrix matrix_from_weights(const EdgeIndexing& idx, const std::vector<double>& weights);

// Jacobian of the trace map with respect to the tree-edge weights (the first
// tree_edge_count entries of idx), evaluated at m, which may carry nonzero
// chord entries. Closed form: the (r, l) entry is -(M^{2r-1})_{i_l j_l} in the
// M block and the same with the zeroed matrix in the N block, so columns for
// edges incident to v vanish in the N block.
Dense trace_map_jacobian(const SkewMatrix& m, const EdgeIndexing& idx, int v);

// Convenience wrapper for a matrix whose graph is exactly t.
Dense jacobian_f(const SkewMatrix& a, const Tree& t, int v);

struct NonsingularVerdict {
  bool nonsingular = false;
  double abs_det = 0.0;
  double min_pivot = 0.0;
};

// LU with partial pivoting after equilibrating each row to unit max (the
// rows scale like different matrix powers); singular when a row is zero or
// the smallest equilibrated pivot falls below tol. abs_det is unscaled.
NonsingularVerdict is_nonsingular(const Dense& j, double tol = 1e-10);

}  // namespace skewsiep
