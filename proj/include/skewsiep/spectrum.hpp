#pragma once

#include <string>
#include <utility>
#include <vector>

namespace skewsiep {

// Prescribed data for one inverse problem instance: the matrix spectrum is
// {i*lambdas[j]} and the spectrum after deleting the root is {i*mus[k]}.
// Both lists are real, sorted ascending, and negation-symmetric.
struct SpectrumSpec {
  std::vector<double> lambdas;
  std::vector<double> mus;

  int order() const { return static_cast<int>(lambdas.size()); }

  // Builds the full symmetric lists from the strictly positive halves.
  // Sizes decide where the forced zero lives: |mu_pos| == |lambda_pos| means
  // odd order (zero among the lambdas), one less means even order.
  static SpectrumSpec from_positive(const std::vector<double>& lambda_pos,
                                    const std::vector<double>& mu_pos);
};

struct SpectrumCheck {
  bool ok = false;
  std::string error;  // names the first violated inequality
};

// Validates sizes, strict interlacing lambda_1 < mu_1 < lambda_2 < ... with a
// scaled distinctness tolerance, and exact negation symmetry of both lists.
SpectrumCheck validate(const SpectrumSpec& spec);

// max(1, |lambda_n|): the scale used by the relative tolerances.
double spectrum_scale(const SpectrumSpec& spec);

// mu values assigned to the branch rooted at a given neighbor of the root.
// Values are negation-closed and sorted ascending.
struct BranchAssignment {
  int neighbor = 0;
  std::vector<int> mu_indices;     // 0-based positions into spec.mus
  std::vector<double> mu_values;
};

struct BranchPlan {
  std::vector<BranchAssignment> branches;  // sorted by neighbor label
};

// Distributes the mus over the branches: the zero (present iff the order is
// even) goes to the unique odd-size branch, and the positive values, sorted
// ascending, are dealt as conjugate pairs to branches in neighbor-label
// order, floor(size/2) pairs each. Throws on a parity mismatch, which means
// the tree is not NEB at the root.
BranchPlan plan_branches(const SpectrumSpec& spec,
                         const std::vector<std::pair<int, int>>& branch_sizes);

}  // namespace skewsiep
