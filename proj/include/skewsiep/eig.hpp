#pragma once

#include <vector>

#include "skewsiep/graph.hpp"
#include "skewsiep/matrix.hpp"

namespace skewsiep {

// Spectrum of a real skew-symmetric matrix: purely imaginary, stored as the
// sorted imaginary parts (negation-symmetric up to solver roundoff).
struct SkewSpectrum {
  std::vector<double> imag_parts;
};

// Householder reduction to skew tridiagonal form; returns the superdiagonal
// (length n-1). When q_out is given it accumulates the orthogonal transform
// so tests can check Q^T A Q against the tridiagonal directly.
std::vector<double> skew_tridiagonalize(const SkewMatrix& a, Dense* q_out = nullptr);

// Eigenvalues of a real symmetric tridiagonal matrix by implicit-shift QL,
// sorted ascending. Throws after the iteration cap.
std::vector<double> symmetric_tridiagonal_eigenvalues(std::vector<double> diag,
                                                      std::vector<double> off);

// The imaginary parts of the eigenvalues of A equal the eigenvalues of the
// real symmetric tridiagonal matrix with zero diagonal and the same
// superdiagonal, so the reduction above feeds straight into the QL solver.
SkewSpectrum skew_eigenvalues(const SkewMatrix& a);

// Margins of the interlacing lambda_1 <= mu_1 <= lambda_2 <= ...:
// alternating mu_k - lambda_k and lambda_{k+1} - mu_k.
std::vector<double> interlacing_margins(const SkewSpectrum& outer, const SkewSpectrum& inner);

// Non-strict mode allows margins down to -tol; strict mode requires every
// margin to exceed +tol.
bool check_interlacing(const SkewSpectrum& outer, const SkewSpectrum& inner, bool strict,
                       double tol);

struct DuarteVerdict {
  bool ok = false;
  int failing_vertex = 0;  // 0 when ok
  double min_margin = 0.0; // smallest interlacing margin seen anywhere
};

// Recursive strict-interlacing check: sigma(A(w)) must strictly interlace
// sigma(A) and every branch submatrix must have the property at its own
// root. tol is relative; it is scaled by max(1, spectral radius) per node.
DuarteVerdict verify_duarte(const SkewMatrix& a, const Tree& t, int w, double tol = 1e-8);

}  // namespace skewsiep
