#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skewsiep {

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 1..n. Edges are canonicalized to
// (i, j) with i < j and kept sorted. Loops and duplicate edges are rejected.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;

  Graph() = default;
  Graph(int n_vertices, std::vector<Edge> edge_list);

  std::vector<std::vector<int>> adjacency() const;  // index 0 unused
  bool connected() const;
  bool has_edge(int i, int j) const;
};

// Connected acyclic graph: exactly n-1 edges and connected.
struct Tree {
  int n = 0;
  std::vector<Edge> edges;

  Tree() = default;
  Tree(int n_vertices, std::vector<Edge> edge_list);

  Graph as_graph() const { return Graph(n, edges); }
  std::vector<std::vector<int>> adjacency() const;
};

// One component of t with vertex w removed, rooted at the neighbor of w it
// contains. The subtree is relabeled 1..k preserving label order;
// to_original[new_label - 1] recovers the original label.
struct Branch {
  int root = 0;  // original label of the neighbor of w
  Tree subtree;
  std::vector<int> to_original;
};

std::vector<Branch> branches(const Tree& t, int w);

// Why a given rooted tree fails the nearly-even-branching recursion: either
// the component parity count at the root is wrong, or some branch fails it
// recursively. Vertices carry original labels.
enum class NebFailure { OddComponentCount, BranchNotNeb };

struct NebWitness {
  NebFailure kind = NebFailure::OddComponentCount;
  int vertex = 0;       // root of the subtree where the failure was observed
  int branch_root = 0;  // for BranchNotNeb: root of the offending branch
  int odd_components = 0;
  int expected_odd = 0;
};

struct NebCertificate {
  int vertex = 0;
  bool verdict = false;
  std::optional<NebWitness> witness;
};

// Nearly even branching at w: a single vertex qualifies; otherwise removing
// the root must leave exactly one odd component when the order is even and
// none when it is odd, and every branch must satisfy the same condition at
// its own root.
NebCertificate is_neb(const Tree& t, int w);

// Maximum matching size. Trees and forests use leaf pruning; other graphs
// fall back to bitmask DP over vertex subsets (order capped at 25).
int matching_number(const Graph& g);

// Searches the spanning trees of g for one that is NEB at some vertex.
// Returns the first hit or nullopt. Orders above size_cap are rejected.
std::optional<std::pair<Tree, int>> find_spanning_neb_tree(const Graph& g, int size_cap = 12);

}  // namespace skewsiep
