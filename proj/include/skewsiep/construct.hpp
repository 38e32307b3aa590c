#pragma once

#include <optional>
#include <vector>

#include "skewsiep/graph.hpp"
#include "skewsiep/matrix.hpp"
#include "skewsiep/spectrum.hpp"

namespace skewsiep {

// Record of one branch split during construction.
struct BranchTrace {
  int neighbor = 0;
  double y = 0.0;                // squared edge weight root-to-neighbor
  std::vector<double> g_roots;   // mu values assigned to the branch
  std::vector<double> h_roots;   // prescribed deleted-spectrum for the branch
};

// One node of the construction recursion, in original vertex labels.
struct RecursionNode {
  int vertex = 0;
  std::vector<double> lambdas;
  std::vector<double> mus;
  std::vector<double> residues;
  std::vector<BranchTrace> branch_traces;
  std::vector<RecursionNode> children;
};

struct VerificationSummary {
  double lambda_dev = 0.0;        // max |eig(A) - prescribed|
  double mu_dev = 0.0;            // max |eig(A(v)) - prescribed|
  double identity_residual = 0.0; // worst rational-identity mismatch
  bool duarte_ok = false;
  int duarte_failing_vertex = 0;
  double eig_tol_used = 0.0;      // scaled tolerance the deviations were held to
  bool pass = false;
};

struct ConstructionReport {
  SkewMatrix matrix;
  RecursionNode trace;
  std::optional<VerificationSummary> verification;
};

// Builds A in S^-(t) with spectrum {i*lambdas} and deleted spectrum {i*mus}
// at v. Preconditions: the spectrum validates and t is NEB at v; violations
// throw std::invalid_argument. Edge weights take the positive square root of
// the branch residue sums, so all constructed weights are positive.
ConstructionReport construct(const Tree& t, int v, const SpectrumSpec& spec);

// Independent check of a construction: eigenvalue deviations for A and A(v),
// the rational identity C_A/C_{A(v)} = x + sum_j a_{vj}^2 C_{A_j'(v)}/C_{A_j(v)}
// sampled at imaginary points between consecutive mus (characteristic
// polynomial values come from complex LU determinants, not the eigensolver),
// and the recursive strict-interlacing property. eig_tol is relative and is
// scaled by max(1, |lambda_n|); the identity residual is held to 1e-7.
VerificationSummary verify_construction(const ConstructionReport& report, const Tree& t, int v,
                                        const SpectrumSpec& spec, double eig_tol = 1e-8);

}  // namespace skewsiep
