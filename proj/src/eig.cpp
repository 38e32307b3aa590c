// Eigenvalue machinery for real skew-symmetric matrices.
//
// Route: (1) two-sided Householder reduction to skew tridiagonal form, the
// same reflector sequence as in the symmetric case; (2) the imaginary parts
// of the eigenvalues equal the eigenvalues of the real symmetric tridiagonal
// matrix with zero diagonal and the same superdiagonal (conjugate -i*T by a
// unit-modulus diagonal), solved by implicit-shift QL.

#include "skewsiep/eig.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace skewsiep {

namespace {

double hypot2(double a, double b) { return std::hypot(a, b); }

}  // namespace

std::vector<double> skew_tridiagonalize(const SkewMatrix& a, Dense* q_out) {
  int n = a.order();
  Dense m = a.to_dense();
  if (q_out) *q_out = Dense::identity(n);

  std::vector<double> v(n, 0.0);
  for (int k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (int i = k + 2; i < n; ++i) tail += m.at(i, k) * m.at(i, k);
    if (tail == 0.0) continue;  // column already in tridiagonal form

    double x0 = m.at(k + 1, k);
    double norm = std::sqrt(x0 * x0 + tail);
    double alpha = (x0 >= 0.0) ? -norm : norm;  // sign avoids cancellation in v0
    std::fill(v.begin(), v.end(), 0.0);
    v[k + 1] = x0 - alpha;
    for (int i = k + 2; i < n; ++i) v[i] = m.at(i, k);
    double vnorm2 = v[k + 1] * v[k + 1] + tail;
    double beta = 2.0 / vnorm2;

    // m <- P m with P = I - beta v v^T
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[i] * m.at(i, j);
      s *= beta;
      for (int i = k + 1; i < n; ++i) m.at(i, j) -= s * v[i];
    }
    // m <- m P
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += m.at(i, j) * v[j];
      s *= beta;
      for (int j = k + 1; j < n; ++j) m.at(i, j) -= s * v[j];
    }
    if (q_out) {
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = k + 1; j < n; ++j) s += q_out->at(i, j) * v[j];
        s *= beta;
        for (int j = k + 1; j < n; ++j) q_out->at(i, j) -= s * v[j];
      }
    }
  }

  std::vector<double> b(std::max(0, n - 1));
  for (int i = 0; i + 1 < n; ++i) b[i] = m.at(i, i + 1);
  return b;
}

std::vector<double> symmetric_tridiagonal_eigenvalues(std::vector<double> diag,
                                                      std::vector<double> off) {
  int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  if (static_cast<int>(off.size()) != std::max(0, n - 1))
    throw std::invalid_argument("off-diagonal length must be n - 1");

  std::vector<double>& d = diag;
  std::vector<double> e = std::move(off);
  e.push_back(0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 30;  // per eigenvalue; matches the classic QL cap

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps) {
          std::ostringstream os;
          os << "tridiagonal QL failed to converge at index " << l << " of " << n
             << " after " << max_sweeps << " sweeps (stuck off-diagonal " << e[l] << ")";
          throw std::runtime_error(os.str());
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

SkewSpectrum skew_eigenvalues(const SkewMatrix& a) {
  int n = a.order();
  SkewSpectrum out;
  if (n == 0) return out;
  std::vector<double> b = skew_tridiagonalize(a);
  out.imag_parts = symmetric_tridiagonal_eigenvalues(std::vector<double>(n, 0.0), std::move(b));
  return out;
}

std::vector<double> interlacing_margins(const SkewSpectrum& outer, const SkewSpectrum& inner) {
  int n = static_cast<int>(outer.imag_parts.size());
  if (static_cast<int>(inner.imag_parts.size()) != n - 1)
    throw std::invalid_argument("inner spectrum must have one fewer eigenvalue");
  std::vector<double> margins;
  margins.reserve(2 * (n - 1));
  for (int k = 0; k < n - 1; ++k) {
    margins.push_back(inner.imag_parts[k] - outer.imag_parts[k]);
    margins.push_back(outer.imag_parts[k + 1] - inner.imag_parts[k]);
  }
  return margins;
}

bool check_interlacing(const SkewSpectrum& outer, const SkewSpectrum& inner, bool strict,
                       double tol) {
  for (double m : interlacing_margins(outer, inner)) {
    if (strict ? (m <= tol) : (m < -tol)) return false;
  }
  return true;
}

DuarteVerdict verify_duarte(const SkewMatrix& a, const Tree& t, int w, double tol) {
  if (a.order() != t.n) throw std::invalid_argument("matrix order does not match tree order");
  if (a.nonzero_edges() != t.edges)
    throw std::invalid_argument("matrix sparsity pattern does not match the tree");
  if (w < 1 || w > t.n) throw std::invalid_argument("vertex outside 1.." + std::to_string(t.n));

  auto adj = t.adjacency();
  DuarteVerdict verdict;
  verdict.ok = true;
  verdict.min_margin = std::numeric_limits<double>::infinity();

  // (sorted component, root); components recomputed per node
  std::function<bool(const std::vector<int>&, int)> rec = [&](const std::vector<int>& verts,
                                                              int root) {
    if (verts.size() == 1) return true;
    SkewMatrix sub = a.principal(verts);
    std::vector<int> inner_verts;
    for (int u : verts)
      if (u != root) inner_verts.push_back(u);
    SkewSpectrum outer = skew_eigenvalues(sub);
    SkewSpectrum inner = skew_eigenvalues(a.principal(inner_verts));

    double scale = 1.0;
    for (double v : outer.imag_parts) scale = std::max(scale, std::fabs(v));
    double margin_tol = tol * scale;
    double local_min = std::numeric_limits<double>::infinity();
    for (double m : interlacing_margins(outer, inner)) local_min = std::min(local_min, m);
    verdict.min_margin = std::min(verdict.min_margin, local_min);
    if (local_min <= margin_tol) {
      verdict.ok = false;
      verdict.failing_vertex = root;
      return false;
    }

    // recurse into the branches at root
    std::vector<char> alive(t.n + 1, 0);
    for (int u : verts) alive[u] = 1;
    alive[root] = 0;
    for (int nb : adj[root]) {
      if (!alive[nb]) continue;
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
      for (int u : comp) alive[u] = 0;  // each component visited once
      if (!rec(comp, nb)) return false;
    }
    return true;
  };

  std::vector<int> all(t.n);
  for (int i = 0; i < t.n; ++i) all[i] = i + 1;
  rec(all, w);
  return verdict;
}

}  // namespace skewsiep
