#include "skewsiep/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace skewsiep {

namespace {

Dense matmul_impl(const Dense& a, const Dense& b) {
  int n = a.n();
  Dense c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

}  // namespace

Dense matmul(const Dense& a, const Dense& b) {
  if (a.n() != b.n()) throw std::invalid_argument("matmul: size mismatch");
  return matmul_impl(a, b);
}

SkewMatrix::SkewMatrix(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("matrix order must be nonnegative");
  upper_.assign(static_cast<size_t>(n) * (n - 1) / 2, 0.0);
}

size_t SkewMatrix::index(int i, int j) const {
  // strict upper triangle, row-major: row i (1-based) starts after
  // (i-1) rows of lengths n-1, n-2, ...
  size_t r = static_cast<size_t>(i - 1);
  return r * n_ - r * (r + 1) / 2 + static_cast<size_t>(j - i - 1);
}

double SkewMatrix::at(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("matrix index out of range");
  if (i == j) return 0.0;
  return (i < j) ? upper_[index(i, j)] : -upper_[index(j, i)];
}

void SkewMatrix::set(int i, int j, double value) {
  if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("matrix index out of range");
  if (i == j) throw std::invalid_argument("diagonal of a skew-symmetric matrix is zero");
  if (i < j)
    upper_[index(i, j)] = value;
  else
    upper_[index(j, i)] = -value;
}

SkewMatrix SkewMatrix::deleted(int v) const {
  if (v < 1 || v > n_) throw std::out_of_range("deleted vertex out of range");
  std::vector<int> keep;
  keep.reserve(n_ - 1);
  for (int i = 1; i <= n_; ++i)
    if (i != v) keep.push_back(i);
  return principal(keep);
}

SkewMatrix SkewMatrix::principal(const std::vector<int>& vertices) const {
  int k = static_cast<int>(vertices.size());
  SkewMatrix sub(k);
  for (int a = 0; a < k; ++a) {
    int va = vertices[a];
    if (va < 1 || va > n_) throw std::out_of_range("principal submatrix label out of range");
    if (a > 0 && vertices[a - 1] >= va)
      throw std::invalid_argument("principal submatrix labels must be strictly increasing");
    for (int b = a + 1; b < k; ++b) {
      double val = at(va, vertices[b]);
      if (val != 0.0) sub.set(a + 1, b + 1, val);
    }
  }
  return sub;
}

std::vector<std::pair<int, int>> SkewMatrix::nonzero_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (upper_[index(i, j)] != 0.0) out.emplace_back(i, j);
  return out;
}

std::vector<std::vector<double>> SkewMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_, 0.0));
  for (int i = 1; i <= n_; ++i)
    for (int j = 1; j <= n_; ++j) out[i - 1][j - 1] = at(i, j);
  return out;
}

Dense SkewMatrix::to_dense() const {
  Dense d(n_);
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j) {
      double v = upper_[index(i, j)];
      d.at(i - 1, j - 1) = v;
      d.at(j - 1, i - 1) = -v;
    }
  return d;
}

double SkewMatrix::max_abs() const {
  double m = 0.0;
  for (double v : upper_) m = std::max(m, std::fabs(v));
  return m;
}

SkewMatrix SkewMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  int n = static_cast<int>(rows.size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("matrix rows must be square");
  SkewMatrix a(n);
  for (int i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0)
      throw std::invalid_argument("diagonal entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(i + 1) + ") is nonzero");
    for (int j = i + 1; j < n; ++j) {
      double drift = std::fabs(rows[i][j] + rows[j][i]);
      if (drift > 1e-12 * std::max(1.0, std::fabs(rows[i][j])))
        throw std::invalid_argument("matrix is not skew-symmetric at (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ")");
      if (rows[i][j] != 0.0) a.set(i + 1, j + 1, rows[i][j]);
    }
  }
  return a;
}

}  // namespace skewsiep
