#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "skewsiep/fuzz.hpp"
#include "skewsiep/graph.hpp"

using namespace skewsiep;

namespace {

Tree path(int n) {
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return Tree(n, e);
}

Tree star(int n) {
  std::vector<Edge> e;
  for (int i = 2; i <= n; ++i) e.emplace_back(1, i);
  return Tree(n, e);
}

// Marked NEB fixtures: a single edge, a path rooted at a pendant vertex, a
// depth-2 spider, and a three-legged tree with legs of lengths 3, 2, 2.
const Tree kFixP{2, {{1, 2}}};
const Tree kFixQ{3, {{1, 2}, {2, 3}}};
const Tree kFixT6{6, {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 6}}};
const Tree kFixS{8, {{1, 2}, {2, 5}, {5, 8}, {1, 3}, {3, 6}, {1, 4}, {4, 7}}};

// Marked non-NEB fixtures, each failing for a different reason.
const Tree kFixK{3, {{1, 2}, {2, 3}}};                                            // at 2
const Tree kFixL{4, {{1, 2}, {1, 3}, {1, 4}}};                                    // at 1
const Tree kFixF{4, {{1, 2}, {2, 3}, {2, 4}}};                                    // at 1
const Tree kFixG{7, {{1, 2}, {2, 5}, {5, 6}, {1, 3}, {1, 4}, {4, 7}}};            // at 1
const Tree kFixH{10, {{1, 2}, {1, 3}, {1, 4}, {2, 5}, {5, 8}, {3, 6}, {6, 9}, {6, 10}, {4, 7}}};

Tree permuted(const Tree& t, const std::vector<int>& pi) {
  std::vector<Edge> e;
  for (auto [i, j] : t.edges)
    e.emplace_back(std::min(pi[i], pi[j]), std::max(pi[i], pi[j]));
  return Tree(t.n, e);
}

std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> pi(static_cast<size_t>(n) + 1);
  std::iota(pi.begin(), pi.end(), 0);
  for (int i = n; i > 1; --i) std::swap(pi[i], pi[1 + rng.below(i)]);
  return pi;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("graph construction canonicalizes edges and validates labels") {
  Graph g(4, {{2, 1}, {4, 3}, {3, 2}});
  CHECK(g.edges == std::vector<Edge>{{1, 2}, {2, 3}, {3, 4}});
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(1, 3));
  CHECK(g.connected());

  CHECK_FALSE(Graph(4, {{1, 2}, {3, 4}}).connected());
  CHECK_THROWS_AS(Graph(3, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{1, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{1, 2}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(0, {}), std::invalid_argument);

  auto adj = g.adjacency();
  CHECK(adj.size() == 5);
  CHECK(adj[0].empty());
  CHECK(adj[2] == std::vector<int>{1, 3});
}

TEST_CASE("tree construction rejects wrong edge counts and cycles") {
  CHECK_NOTHROW(Tree(1, {}));
  CHECK_NOTHROW(Tree(4, {{1, 2}, {2, 3}, {3, 4}}));
  CHECK_THROWS_AS(Tree(3, {{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Tree(3, {{1, 2}, {2, 3}, {1, 3}}), std::invalid_argument);
  // n-1 edges but a cycle plus an isolated vertex
  CHECK_THROWS_AS(Tree(4, {{1, 2}, {2, 3}, {1, 3}}), std::invalid_argument);
}

TEST_CASE("branches at a vertex report roots, sizes and label maps") {
  // Three-branch example: removing 6 leaves components {2,4}, {1,3}, {5}.
  Tree t(6, {{1, 3}, {2, 4}, {2, 6}, {3, 6}, {5, 6}});
  auto br = branches(t, 6);
  REQUIRE(br.size() == 3);

  std::vector<int> roots, sizes;
  for (const auto& b : br) {
    roots.push_back(b.root);
    sizes.push_back(b.subtree.n);
    CHECK(b.subtree.n == static_cast<int>(b.to_original.size()));
    // the root appears in its own label map
    CHECK(std::count(b.to_original.begin(), b.to_original.end(), b.root) == 1);
  }
  CHECK(roots == std::vector<int>{2, 3, 5});
  CHECK(sizes == std::vector<int>{2, 2, 1});
  CHECK(std::accumulate(sizes.begin(), sizes.end(), 0) == t.n - 1);

  auto p4 = branches(path(4), 2);
  REQUIRE(p4.size() == 2);
  CHECK(p4[0].root == 1);
  CHECK(p4[0].subtree.n == 1);
  CHECK(p4[1].root == 3);
  CHECK(p4[1].subtree.n == 2);
  CHECK(p4[1].to_original == std::vector<int>{3, 4});

  CHECK_THROWS_AS(branches(path(4), 5), std::invalid_argument);
}

TEST_CASE("branch sizes always sum to n-1") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + rng.below(8);
    Tree t = random_tree(rng, n);
    int w = 1 + rng.below(n);
    int total = 0;
    for (const auto& b : branches(t, w)) total += b.subtree.n;
    CHECK(total == n - 1);
  }
}

TEST_CASE("hand classification of all trees on up to four vertices") {
  CHECK(is_neb(Tree(1, {}), 1).verdict);
  CHECK(is_neb(kFixP, 1).verdict);
  CHECK(is_neb(kFixP, 2).verdict);

  // order 3: pendant vertices work, the center does not
  CHECK(is_neb(path(3), 1).verdict);
  CHECK(is_neb(path(3), 3).verdict);
  auto center = is_neb(path(3), 2);
  CHECK_FALSE(center.verdict);
  REQUIRE(center.witness.has_value());
  CHECK(center.witness->kind == NebFailure::OddComponentCount);
  CHECK(center.witness->vertex == 2);
  CHECK(center.witness->odd_components == 2);
  CHECK(center.witness->expected_odd == 0);

  // order 4: every vertex of a path, no vertex of a star
  for (int v = 1; v <= 4; ++v) CHECK(is_neb(path(4), v).verdict);

  auto hub = is_neb(star(4), 1);
  CHECK_FALSE(hub.verdict);
  REQUIRE(hub.witness.has_value());
  CHECK(hub.witness->kind == NebFailure::OddComponentCount);
  CHECK(hub.witness->odd_components == 3);
  CHECK(hub.witness->expected_odd == 1);

  auto leaf = is_neb(star(4), 2);
  CHECK_FALSE(leaf.verdict);
  REQUIRE(leaf.witness.has_value());
  CHECK(leaf.witness->kind == NebFailure::BranchNotNeb);
  CHECK(leaf.witness->vertex == 2);
  CHECK(leaf.witness->branch_root == 1);
}

TEST_CASE("exhaustive order-4 enumeration matches the shape rule") {
  // All 16 labeled trees on 4 vertices, via their Pruefer sequences. A tree
  // on 4 vertices is a path (max degree 2) or a star (max degree 3); paths
  // are NEB at every vertex, stars at none.
  int paths = 0, stars = 0;
  for (int s1 = 1; s1 <= 4; ++s1)
    for (int s2 = 1; s2 <= 4; ++s2) {
      Tree t = oracle::tree_from_pruefer({s1, s2}, 4);
      auto adj = t.adjacency();
      int max_deg = 0;
      for (int v = 1; v <= 4; ++v) max_deg = std::max(max_deg, static_cast<int>(adj[v].size()));
      bool is_path = (max_deg == 2);
      (is_path ? paths : stars) += 1;
      for (int v = 1; v <= 4; ++v) {
        CHECK(is_neb(t, v).verdict == is_path);
        CHECK(is_neb(t, v).verdict == oracle::neb_by_definition(t, v));
      }
    }
  CHECK(paths == 12);
  CHECK(stars == 4);
}

TEST_CASE("marked fixtures classify with the expected witnesses") {
  CHECK(is_neb(kFixP, 1).verdict);
  CHECK(is_neb(kFixQ, 1).verdict);
  CHECK(is_neb(kFixT6, 1).verdict);
  CHECK(is_neb(kFixS, 1).verdict);

  CHECK_FALSE(is_neb(kFixK, 2).verdict);
  CHECK_FALSE(is_neb(kFixL, 1).verdict);

  // F: the single branch below 1 is a path rooted at its center.
  auto f = is_neb(kFixF, 1);
  CHECK_FALSE(f.verdict);
  REQUIRE(f.witness.has_value());
  CHECK(f.witness->kind == NebFailure::BranchNotNeb);
  CHECK(f.witness->vertex == 1);
  CHECK(f.witness->branch_root == 2);

  // G: removing 1 leaves two odd components where an odd order allows none.
  auto g = is_neb(kFixG, 1);
  CHECK_FALSE(g.verdict);
  REQUIRE(g.witness.has_value());
  CHECK(g.witness->kind == NebFailure::OddComponentCount);
  CHECK(g.witness->vertex == 1);
  CHECK(g.witness->odd_components == 2);
  CHECK(g.witness->expected_odd == 0);

  // H: parity is fine at the root but the branch rooted at 3 fails deeper.
  auto h = is_neb(kFixH, 1);
  CHECK_FALSE(h.verdict);
  REQUIRE(h.witness.has_value());
  CHECK(h.witness->kind == NebFailure::BranchNotNeb);
  CHECK(h.witness->vertex == 1);
  CHECK(h.witness->branch_root == 3);
}

TEST_CASE("verdicts agree with the definitional recursion on random trees") {
  Rng rng(7);
  for (int trial = 0; trial < 120; ++trial) {
    int n = 1 + rng.below(9);
    Tree t = random_tree(rng, n);
    int w = 1 + rng.below(n);
    auto cert = is_neb(t, w);
    CHECK(cert.verdict == oracle::neb_by_definition(t, w));
    CHECK(cert.vertex == w);
    if (cert.verdict) {
      CHECK_FALSE(cert.witness.has_value());
    } else {
      REQUIRE(cert.witness.has_value());
      if (cert.witness->kind == NebFailure::OddComponentCount)
        CHECK(cert.witness->odd_components != cert.witness->expected_odd);
      else
        CHECK(cert.witness->branch_root != 0);
    }
  }
}

TEST_CASE("verdicts are invariant under relabeling") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + rng.below(8);
    Tree t = random_tree(rng, n);
    int w = 1 + rng.below(n);
    auto pi = random_permutation(rng, n);
    CHECK(is_neb(t, w).verdict == is_neb(permuted(t, pi), pi[w]).verdict);
  }
}

TEST_CASE("matching numbers of the standard small graphs") {
  CHECK(matching_number(path(4).as_graph()) == 2);
  CHECK(matching_number(star(4).as_graph()) == 1);
  CHECK(matching_number(path(5).as_graph()) == 2);
  CHECK(matching_number(Graph(1, {})) == 0);
  CHECK(matching_number(Graph(2, {{1, 2}})) == 1);
  CHECK(matching_number(Graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}})) == 2);  // 4-cycle
  Graph k4(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(matching_number(k4) == 2);
}

TEST_CASE("matching number agrees with subset enumeration") {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + rng.below(8);
    Tree t = random_tree(rng, n);
    CHECK(matching_number(t.as_graph()) == oracle::matching_by_enumeration(t.as_graph()));

    // sprinkle up to two chords on top of the tree
    Graph g = t.as_graph();
    std::vector<Edge> edges = g.edges;
    for (int extra = 0; extra < 2; ++extra) {
      int i = 1 + rng.below(n), j = 1 + rng.below(n);
      if (i == j) continue;
      Edge e{std::min(i, j), std::max(i, j)};
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
    Graph g2(n, edges);
    CHECK(matching_number(g2) == oracle::matching_by_enumeration(g2));
  }
}

TEST_CASE("spanning search finds a usable tree exactly when one exists") {
  // 4-cycle: every spanning tree is a path, usable at any vertex.
  Graph c4(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  auto hit = find_spanning_neb_tree(c4);
  REQUIRE(hit.has_value());
  const auto& [tree, v] = *hit;
  CHECK(tree.n == 4);
  CHECK(is_neb(tree, v).verdict);
  for (const auto& e : tree.edges) CHECK(c4.has_edge(e.first, e.second));
  auto adj = tree.adjacency();
  for (int u = 1; u <= 4; ++u) CHECK(adj[u].size() <= 2);  // spanning paths only

  // a star is its own only spanning tree, and stars never qualify
  CHECK_FALSE(find_spanning_neb_tree(star(4).as_graph()).has_value());

  auto single = find_spanning_neb_tree(Graph(2, {{1, 2}}));
  REQUIRE(single.has_value());
  CHECK(is_neb(single->first, single->second).verdict);

  Graph k4(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  REQUIRE(find_spanning_neb_tree(k4).has_value());

  // disconnected graphs have no spanning tree at all
  CHECK_FALSE(find_spanning_neb_tree(Graph(4, {{1, 2}, {3, 4}})).has_value());

  // the exhaustive search refuses orders beyond its cap
  std::vector<Edge> big;
  for (int i = 1; i < 13; ++i) big.emplace_back(i, i + 1);
  CHECK_THROWS_AS(find_spanning_neb_tree(Graph(13, big)), std::invalid_argument);
  CHECK_NOTHROW(find_spanning_neb_tree(Graph(13, big), 13));
}

}  // TEST_SUITE
