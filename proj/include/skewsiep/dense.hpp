#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace skewsiep {

// Small dense square matrix, row-major, 0-based. Used internally for the
// reductions, matrix powers and linear solves; graph-facing types stay 1-based.
class Dense {
 public:
  Dense() = default;
  explicit Dense(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

  static Dense identity(int n) {
    Dense d(n);
    for (int i = 0; i < n; ++i) d.at(i, i) = 1.0;
    return d;
  }

  int n() const { return n_; }
  double& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::fabs(x));
    return m;
  }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

Dense matmul(const Dense& a, const Dense& b);

// LU factorization with partial pivoting, generic over double / complex<double>.
// min_pivot tracks the smallest |U_kk| seen; an exactly zero pivot marks the
// factorization singular (solve refuses, det is 0).
template <class T>
struct LuFactors {
  int n = 0;
  std::vector<T> lu;      // row-major combined L\U
  std::vector<int> perm;  // row permutation
  int parity = 1;
  double min_pivot = 0.0;
  bool singular = false;

  T det() const {
    if (singular) return T(0);
    T d = T(parity);
    for (int i = 0; i < n; ++i) d *= lu[static_cast<size_t>(i) * n + i];
    return d;
  }

  std::vector<T> solve(std::vector<T> b) const {
    if (singular) throw std::runtime_error("lu solve on singular matrix");
    std::vector<T> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu[static_cast<size_t>(i) * n + j] * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu[static_cast<size_t>(i) * n + j] * x[j];
      x[i] /= lu[static_cast<size_t>(i) * n + i];
    }
    return x;
  }
};

template <class T>
LuFactors<T> lu_factor(int n, std::vector<T> a) {
  LuFactors<T> f;
  f.n = n;
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  f.min_pivot = (n == 0) ? 1.0 : 0.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a[static_cast<size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(a[static_cast<size_t>(i) * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(piv) * n + j]);
      std::swap(f.perm[k], f.perm[piv]);
      f.parity = -f.parity;
    }
    if (k == 0 || best < f.min_pivot) f.min_pivot = best;
    if (best == 0.0) {
      f.singular = true;
      f.min_pivot = 0.0;
      break;
    }
    T pivot = a[static_cast<size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      T m = a[static_cast<size_t>(i) * n + k] / pivot;
      a[static_cast<size_t>(i) * n + k] = m;
      for (int j = k + 1; j < n; ++j)
        a[static_cast<size_t>(i) * n + j] -= m * a[static_cast<size_t>(k) * n + j];
    }
  }
  f.lu = std::move(a);
  return f;
}

}  // namespace skewsiep
