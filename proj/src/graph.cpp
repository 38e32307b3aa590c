#include "skewsiep/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace skewsiep {

namespace {

std::vector<Edge> canonicalize(int n, std::vector<Edge> edges) {
  for (auto& [i, j] : edges) {
    if (i < 1 || i > n || j < 1 || j > n)
      throw std::invalid_argument("edge label outside 1.." + std::to_string(n));
    if (i == j) throw std::invalid_argument("loop at vertex " + std::to_string(i));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("duplicate edge");
  return edges;
}

std::vector<std::vector<int>> adjacency_of(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n + 1);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

// Vertices reachable from start, restricted to alive[] == true.
std::vector<int> component_of(const std::vector<std::vector<int>>& adj,
                              const std::vector<char>& alive, int start) {
  std::vector<int> comp{start};
  std::vector<char> seen(alive.size(), 0);
  seen[start] = 1;
  for (size_t head = 0; head < comp.size(); ++head)
    for (int nb : adj[comp[head]])
      if (alive[nb] && !seen[nb]) {
        seen[nb] = 1;
        comp.push_back(nb);
      }
  std::sort(comp.begin(), comp.end());
  return comp;
}

}  // namespace

Graph::Graph(int n_vertices, std::vector<Edge> edge_list) : n(n_vertices) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  edges = canonicalize(n, std::move(edge_list));
}

std::vector<std::vector<int>> Graph::adjacency() const { return adjacency_of(n, edges); }

bool Graph::connected() const {
  std::vector<char> alive(n + 1, 1);
  alive[0] = 0;
  return static_cast<int>(component_of(adjacency(), alive, 1).size()) == n;
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), Edge{i, j});
}

Tree::Tree(int n_vertices, std::vector<Edge> edge_list) : n(n_vertices) {
  if (n < 1) throw std::invalid_argument("tree needs at least one vertex");
  edges = canonicalize(n, std::move(edge_list));
  if (static_cast<int>(edges.size()) != n - 1)
    throw std::invalid_argument("tree on " + std::to_string(n) + " vertices needs " +
                                std::to_string(n - 1) + " edges");
  if (!as_graph().connected()) throw std::invalid_argument("tree is not connected");
}

std::vector<std::vector<int>> Tree::adjacency() const { return adjacency_of(n, edges); }

std::vector<Branch> branches(const Tree& t, int w) {
  if (w < 1 || w > t.n) throw std::invalid_argument("branch root outside 1.." + std::to_string(t.n));
  auto adj = t.adjacency();
  std::vector<char> alive(t.n + 1, 1);
  alive[0] = 0;
  alive[w] = 0;
  std::vector<Branch> out;
  for (int root : adj[w]) {
    auto verts = component_of(adj, alive, root);
    // order-preserving relabeling to 1..k
    std::unordered_map<int, int> newlabel;
    for (size_t i = 0; i < verts.size(); ++i) newlabel[verts[i]] = static_cast<int>(i) + 1;
    std::vector<Edge> sub_edges;
    for (int u : verts)
      for (int nb : adj[u])
        if (nb > u && newlabel.count(nb)) sub_edges.emplace_back(newlabel[u], newlabel[nb]);
    Branch b;
    b.root = root;
    b.subtree = Tree(static_cast<int>(verts.size()), std::move(sub_edges));
    b.to_original = verts;
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

// Recursion on (component, root) in original labels. Returns the witness of
// the first failure, nullopt when the component is NEB at root.
std::optional<NebWitness> neb_failure(const std::vector<std::vector<int>>& adj,
                                      std::vector<char>& alive, const std::vector<int>& verts,
                                      int root) {
  int k = static_cast<int>(verts.size());
  if (k == 1) return std::nullopt;

  alive[root] = 0;
  std::vector<std::pair<int, std::vector<int>>> comps;  // (neighbor root, component)
  for (int nb : adj[root])
    if (alive[nb]) comps.emplace_back(nb, component_of(adj, alive, nb));

  int odd = 0;
  for (const auto& [r, comp] : comps) odd += static_cast<int>(comp.size()) % 2;
  int expected = (k % 2 == 0) ? 1 : 0;
  if (odd != expected) {
    alive[root] = 1;
    NebWitness w;
    w.kind = NebFailure::OddComponentCount;
    w.vertex = root;
    w.odd_components = odd;
    w.expected_odd = expected;
    return w;
  }

  for (const auto& [r, comp] : comps) {
    std::vector<char> sub_alive(alive.size(), 0);
    for (int u : comp) sub_alive[u] = 1;
    if (neb_failure(adj, sub_alive, comp, r)) {
      alive[root] = 1;
      NebWitness w;
      w.kind = NebFailure::BranchNotNeb;
      w.vertex = root;
      w.branch_root = r;
      return w;
    }
  }
  alive[root] = 1;
  return std::nullopt;
}

}  // namespace

NebCertificate is_neb(const Tree& t, int w) {
  if (w < 1 || w > t.n) throw std::invalid_argument("vertex outside 1.." + std::to_string(t.n));
  auto adj = t.adjacency();
  std::vector<char> alive(t.n + 1, 1);
  alive[0] = 0;
  std::vector<int> verts(t.n);
  std::iota(verts.begin(), verts.end(), 1);
  NebCertificate cert;
  cert.vertex = w;
  auto fail = neb_failure(adj, alive, verts, w);
  cert.verdict = !fail.has_value();
  cert.witness = fail;
  return cert;
}

namespace {

bool is_forest(const Graph& g) {
  // no cycle <=> every component has |edges| = |vertices| - 1; count via DFS
  auto adj = g.adjacency();
  std::vector<char> seen(g.n + 1, 0);
  for (int s = 1; s <= g.n; ++s) {
    if (seen[s]) continue;
    int verts = 0;
    std::vector<int> stack{s};
    seen[s] = 1;
    std::vector<Edge> comp_edges;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      ++verts;
      for (int nb : adj[u]) {
        if (nb > u) comp_edges.emplace_back(u, nb);
        if (!seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
    if (static_cast<int>(comp_edges.size()) != verts - 1) return false;
  }
  return true;
}

int matching_by_leaf_pruning(const Graph& g) {
  // exact on forests: a leaf edge can always be taken greedily
  std::vector<std::vector<int>> adj = g.adjacency();
  std::vector<int> degree(g.n + 1, 0);
  std::vector<char> alive(g.n + 1, 1);
  alive[0] = 0;
  for (int u = 1; u <= g.n; ++u) degree[u] = static_cast<int>(adj[u].size());
  std::vector<int> leaves;
  for (int u = 1; u <= g.n; ++u)
    if (degree[u] == 1) leaves.push_back(u);
  int matched = 0;
  while (!leaves.empty()) {
    int u = leaves.back();
    leaves.pop_back();
    if (!alive[u] || degree[u] != 1) continue;
    int p = 0;
    for (int nb : adj[u])
      if (alive[nb]) p = nb;
    // match (u, p), remove both
    ++matched;
    alive[u] = 0;
    alive[p] = 0;
    for (int nb : adj[p])
      if (alive[nb] && --degree[nb] == 1) leaves.push_back(nb);
    degree[u] = degree[p] = 0;
  }
  return matched;
}

int matching_by_subset_dp(const Graph& g) {
  if (g.n > 25) throw std::invalid_argument("matching_number: order above the subset-DP cap");
  // best[mask] = max matching using only vertices in mask
  std::vector<int8_t> best(size_t(1) << g.n, 0);
  std::vector<uint32_t> nbmask(g.n + 1, 0);
  for (auto [i, j] : g.edges) {
    nbmask[i] |= 1u << (j - 1);
    nbmask[j] |= 1u << (i - 1);
  }
  for (uint32_t mask = 1; mask < (1u << g.n); ++mask) {
    int u = std::countr_zero(mask);  // lowest vertex either stays single or pairs up
    uint32_t rest = mask & ~(1u << u);
    int8_t b = best[rest];
    uint32_t candidates = nbmask[u + 1] & rest;
    while (candidates) {
      int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      b = std::max<int8_t>(b, int8_t(1 + best[rest & ~(1u << v)]));
    }
    best[mask] = b;
  }
  return best[(size_t(1) << g.n) - 1];
}

}  // namespace

int matching_number(const Graph& g) {
  if (is_forest(g)) return matching_by_leaf_pruning(g);
  return matching_by_subset_dp(g);
}

std::optional<std::pair<Tree, int>> find_spanning_neb_tree(const Graph& g, int size_cap) {
  if (g.n > size_cap) throw std::invalid_argument("find_spanning_neb_tree: size cap exceeded");
  if (!g.connected()) return std::nullopt;
  // a tree NEB anywhere has a perfect/near-perfect matching, and spanning
  // subgraphs cannot beat the host graph's matching number
  if (matching_number(g) < g.n / 2) return std::nullopt;
  if (g.n == 1) return std::make_pair(Tree(1, {}), 1);

  int m = static_cast<int>(g.edges.size());
  std::map<std::pair<std::vector<Edge>, int>, bool> neb_cache;

  // disjoint-set over vertices for cycle detection along the include path
  std::vector<int> parent(g.n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<Edge> chosen;
  std::vector<char> excluded(m, 0);
  std::optional<std::pair<Tree, int>> found;

  // include/exclude enumeration over the sorted edge list; each leaf with
  // n-1 chosen edges is a distinct spanning tree
  std::function<bool(int)> connectivity_ok = [&](int next) {
    // can the non-excluded edges still connect the graph?
    std::vector<int> p(g.n + 1);
    std::iota(p.begin(), p.end(), 0);
    std::function<int(int)> f = [&](int x) {
      while (p[x] != x) x = p[x] = p[p[x]];
      return x;
    };
    int comps = g.n;
    for (int e = 0; e < m; ++e) {
      if (e < next && excluded[e]) continue;
      auto [a, b] = g.edges[e];
      if (f(a) != f(b)) {
        p[f(a)] = f(b);
        --comps;
      }
    }
    return comps == 1;
  };

  std::function<bool(int)> search = [&](int e) {
    if (static_cast<int>(chosen.size()) == g.n - 1) {
      Tree t(g.n, chosen);
      for (int w = 1; w <= g.n; ++w) {
        auto key = std::make_pair(t.edges, w);
        auto it = neb_cache.find(key);
        bool ok;
        if (it != neb_cache.end()) {
          ok = it->second;
        } else {
          ok = is_neb(t, w).verdict;
          neb_cache.emplace(key, ok);
        }
        if (ok) {
          found = std::make_pair(t, w);
          return true;
        }
      }
      return false;
    }
    if (e == m) return false;
    auto [a, b] = g.edges[e];
    if (find(a) != find(b)) {
      auto saved = parent;
      parent[find(a)] = find(b);
      chosen.push_back(g.edges[e]);
      if (search(e + 1)) return true;
      chosen.pop_back();
      parent = saved;
    }
    excluded[e] = 1;
    bool ok = connectivity_ok(e + 1) && search(e + 1);
    excluded[e] = 0;
    return ok;
  };

  search(0);
  return found;
}

}  // namespace skewsiep
