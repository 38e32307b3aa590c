#pragma once

#include <utility>
#include <vector>

#include "skewsiep/dense.hpp"

namespace skewsiep {

// Real skew-symmetric matrix. Only the strict upper triangle is stored and
// reads mirror it with a sign flip, so A = -A^T holds exactly by construction.
// Indices are 1-based vertex labels, matching the graph types.
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(int n);

  int order() const { return n_; }
  double at(int i, int j) const;
  void set(int i, int j, double value);  // requires i != j

  // Principal submatrix with vertex v removed; labels above v shift down.
  SkewMatrix deleted(int v) const;
  // Principal submatrix on the given strictly increasing vertex labels.
  SkewMatrix principal(const std::vector<int>& vertices) const;

  std::vector<std::pair<int, int>> nonzero_edges() const;
  std::vector<std::vector<double>> rows() const;
  Dense to_dense() const;
  double max_abs() const;

  // Rejects non-square input, a nonzero diagonal, and asymmetry beyond
  // roundoff in the mirrored entries.
  static SkewMatrix from_rows(const std::vector<std::vector<double>>& rows);

 private:
  size_t index(int i, int j) const;  // i < j, 1-based
  int n_ = 0;
  std::vector<double> upper_;
};

}  // namespace skewsiep
