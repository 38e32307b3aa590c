// Recursive construction of A in S^-(T) with prescribed spectra for A and
// A(v), for trees that branch nearly evenly at v. At each node the residue
// expansion of C_A/C_{A(v)} is split across the branches; the residue sum of
// a branch is the squared weight of the edge into it, and the branch inherits
// (assigned mus, derived h-roots) as its own (lambda, mu) prescription.

#include "skewsiep/construct.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "skewsiep/dense.hpp"
#include "skewsiep/eig.hpp"
#include "skewsiep/polynomial.hpp"
#include "skewsiep/util.hpp"

namespace skewsiep {

namespace {

// Component of `alive` vertices containing start, sorted.
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

RecursionNode build(const std::vector<std::vector<int>>& adj, const std::vector<int>& verts,
                    int root, const SpectrumSpec& spec, SkewMatrix& a) {
  RecursionNode node;
  node.vertex = root;
  node.lambdas = spec.lambdas;
  node.mus = spec.mus;

  int k = static_cast<int>(verts.size());
  if (k == 1) return node;

  if (k == 2) {
    // single edge: weight is the positive eigenvalue, mus = {0} is implied
    int other = (verts[0] == root) ? verts[1] : verts[0];
    double weight = spec.lambdas.back();
    a.set(root, other, (root < other) ? weight : -weight);  // upper entry positive
    node.residues = {weight * weight};
    BranchTrace bt;
    bt.neighbor = other;
    bt.y = weight * weight;
    bt.g_roots = spec.mus;
    node.branch_traces.push_back(bt);
    RecursionNode leaf;
    leaf.vertex = other;
    leaf.lambdas = spec.mus;
    node.children.push_back(std::move(leaf));
    return node;
  }

  auto check = validate(spec);
  if (!check.ok)
    throw std::runtime_error("subproblem spectrum became invalid at vertex " +
                             std::to_string(root) + ": " + check.error);

  std::vector<char> alive(adj.size(), 0);
  for (int u : verts) alive[u] = 1;
  alive[root] = 0;
  std::vector<std::pair<int, std::vector<int>>> comps;
  for (int nb : adj[root])
    if (alive[nb]) {
      auto comp = component_of(adj, alive, nb);
      for (int u : comp) alive[u] = 0;
      comps.emplace_back(nb, std::move(comp));
    }

  std::vector<std::pair<int, int>> sizes;
  for (const auto& [nb, comp] : comps) sizes.emplace_back(nb, static_cast<int>(comp.size()));
  BranchPlan plan = plan_branches(spec, sizes);
  BranchDecomposition decomp = branch_decompose(spec, plan);
  node.residues = residues(spec).c;

  for (const auto& entry : decomp.branches) {
    const std::vector<int>* comp = nullptr;
    for (const auto& [nb, c] : comps)
      if (nb == entry.neighbor) comp = &c;
    double weight = std::sqrt(entry.y);
    a.set(root, entry.neighbor, (root < entry.neighbor) ? weight : -weight);

    BranchTrace bt;
    bt.neighbor = entry.neighbor;
    bt.y = entry.y;
    bt.g_roots = entry.g_roots;
    bt.h_roots = entry.h_roots;
    node.branch_traces.push_back(bt);

    SpectrumSpec sub;
    sub.lambdas = entry.g_roots;
    sub.mus = entry.h_roots;
    node.children.push_back(build(adj, *comp, entry.neighbor, sub, a));
  }
  return node;
}

std::complex<double> char_poly_at(const SkewMatrix& m, std::complex<double> x) {
  int n = m.order();
  if (n == 0) return {1.0, 0.0};
  std::vector<std::complex<double>> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<size_t>(i) * n + j] = (i == j ? x : 0.0) - m.at(i + 1, j + 1);
  return lu_factor(n, std::move(a)).det();
}

}  // namespace

ConstructionReport construct(const Tree& t, int v, const SpectrumSpec& spec) {
  if (v < 1 || v > t.n) throw std::invalid_argument("vertex outside 1.." + std::to_string(t.n));
  if (spec.order() != t.n)
    throw std::invalid_argument("spectrum order " + std::to_string(spec.order()) +
                                " does not match tree order " + std::to_string(t.n));
  auto check = validate(spec);
  if (!check.ok) throw std::invalid_argument("invalid spectrum: " + check.error);
  NebCertificate cert = is_neb(t, v);
  if (!cert.verdict) {
    std::ostringstream os;
    os << "tree is not NEB at vertex " << v;
    if (cert.witness) {
      if (cert.witness->kind == NebFailure::OddComponentCount)
        os << " (odd component count " << cert.witness->odd_components << " at vertex "
           << cert.witness->vertex << ", expected " << cert.witness->expected_odd << ")";
      else
        os << " (branch rooted at " << cert.witness->branch_root << " fails at vertex "
           << cert.witness->vertex << ")";
    }
    throw std::invalid_argument(os.str());
  }

  ConstructionReport report;
  report.matrix = SkewMatrix(t.n);
  auto adj = t.adjacency();
  std::vector<int> all(t.n);
  for (int i = 0; i < t.n; ++i) all[i] = i + 1;
  log_debug("construct: order " + std::to_string(t.n) + ", root " + std::to_string(v));
  report.trace = build(adj, all, v, spec, report.matrix);
  return report;
}

VerificationSummary verify_construction(const ConstructionReport& report, const Tree& t, int v,
                                        const SpectrumSpec& spec, double eig_tol) {
  VerificationSummary s;
  const SkewMatrix& a = report.matrix;
  if (a.order() != t.n || spec.order() != t.n)
    throw std::invalid_argument("verify_construction: matrix, tree and spectrum orders differ");
  double scale = spectrum_scale(spec);
  s.eig_tol_used = eig_tol * scale;

  SkewSpectrum lam = skew_eigenvalues(a);
  for (int j = 0; j < spec.order(); ++j)
    s.lambda_dev = std::max(s.lambda_dev, std::fabs(lam.imag_parts[j] - spec.lambdas[j]));
  SkewSpectrum mu = skew_eigenvalues(a.deleted(v));
  for (int k = 0; k + 1 < spec.order(); ++k)
    s.mu_dev = std::max(s.mu_dev, std::fabs(mu.imag_parts[k] - spec.mus[k]));

  // rational identity C_A/C_{A(v)} = x + sum_j a_{vj}^2 C_{A_j'(v)}/C_{A_j(v)}
  // at x = it, t between consecutive mus; char poly values via complex LU
  auto adj = t.adjacency();
  std::vector<char> alive(t.n + 1, 1);
  alive[0] = 0;
  alive[v] = 0;
  struct BranchMats {
    double weight2 = 0.0;
    SkewMatrix with_root;
    SkewMatrix without_root;
  };
  std::vector<BranchMats> parts;
  for (int nb : adj[v]) {
    std::vector<int> comp{nb};
    std::vector<char> seen(t.n + 1, 0);
    seen[nb] = 1;
    for (size_t head = 0; head < comp.size(); ++head)
      for (int x : adj[comp[head]])
        if (alive[x] && !seen[x]) {
          seen[x] = 1;
          comp.push_back(x);
        }
    std::sort(comp.begin(), comp.end());
    BranchMats bm;
    bm.weight2 = a.at(v, nb) * a.at(v, nb);
    bm.with_root = a.principal(comp);
    std::vector<int> rest;
    for (int u : comp)
      if (u != nb) rest.push_back(u);
    bm.without_root = a.principal(rest);
    parts.push_back(std::move(bm));
  }
  std::vector<int> deleted_verts;
  for (int u = 1; u <= t.n; ++u)
    if (u != v) deleted_verts.push_back(u);
  SkewMatrix av = a.principal(deleted_verts);

  for (int k = 0; k + 2 < spec.order(); ++k) {
    double tt = 0.5 * (spec.mus[k] + spec.mus[k + 1]);
    std::complex<double> x(0.0, tt);
    std::complex<double> lhs = char_poly_at(a, x) / char_poly_at(av, x);
    std::complex<double> rhs = x;
    for (const auto& bm : parts)
      rhs += bm.weight2 * char_poly_at(bm.without_root, x) / char_poly_at(bm.with_root, x);
    double resid = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
    s.identity_residual = std::max(s.identity_residual, resid);
  }

  DuarteVerdict dv = verify_duarte(a, t, v, eig_tol);
  s.duarte_ok = dv.ok;
  s.duarte_failing_vertex = dv.failing_vertex;

  s.pass = s.lambda_dev <= s.eig_tol_used && s.mu_dev <= s.eig_tol_used &&
           s.identity_residual <= 1e-7 && s.duarte_ok;
  return s;
}

}  // namespace skewsiep
