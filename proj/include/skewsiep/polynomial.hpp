#pragma once

#include <utility>
#include <vector>

#include "skewsiep/spectrum.hpp"

namespace skewsiep {

enum class Parity { Even, Odd };

// Real polynomial whose nonzero coefficients all sit at positions of one
// parity. Every characteristic polynomial in this problem has this shape,
// so the off-parity positions double as a numerical sanity check.
struct ParityPoly {
  std::vector<double> coeffs;  // ascending degree, full vector
  Parity parity = Parity::Even;

  ParityPoly() = default;
  ParityPoly(std::vector<double> c, Parity p);  // verifies off-parity positions

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Evaluates p(it) with the power of i divided back out, i.e. the real number
// sum_k a_{2k} (-1)^k t^{2k} for even parity and the odd analogue otherwise.
double eval_parity(const ParityPoly& p, double t);

// Monic real polynomial with roots {i*v : v in imag_parts}. The list must be
// negation-symmetric; conjugate pairs become x^2 + v^2 factors and a zero
// becomes a factor x.
ParityPoly poly_from_imag_roots(const std::vector<double>& imag_parts);

// Partial fraction residues of C_A / C_{A(v)}: c_k is minus the product of
// (mu_k - lambda_j) over j, divided by the product of (mu_k - mu_j) over
// j != k. Strict interlacing makes every c_k positive, and the palindrome
// c_k = c_{n-k} follows from the negation symmetry.
struct ResidueSet {
  std::vector<double> c;
};

ResidueSet residues(const SpectrumSpec& spec);

// Per-branch output of the decomposition: the branch weight y (a residue
// sum), the roots of the branch characteristic polynomial g (the assigned mu
// values) and the roots of the derived polynomial h, which interlace them.
struct BranchDecompositionEntry {
  int neighbor = 0;
  double y = 0.0;
  std::vector<double> g_roots;
  std::vector<double> h_roots;
};

struct BranchDecomposition {
  std::vector<BranchDecompositionEntry> branches;
};

// Splits the residue expansion across the planned branches. h_j is expanded
// in the coefficient basis from the grouped residues (conjugate pairs
// contribute 2c x g_j/(x^2+mu^2), an assigned zero contributes c0 g_j/x),
// then its roots are isolated by bisection between consecutive g_j roots.
BranchDecomposition branch_decompose(const SpectrumSpec& spec, const BranchPlan& plan);

// One root per bracket, found by sign-change bisection on eval_parity to
// 1e-12 absolute width. A bracket without a sign change is a breakdown.
std::vector<double> roots_by_bisection(const ParityPoly& h,
                                       const std::vector<std::pair<double, double>>& brackets);

}  // namespace skewsiep
