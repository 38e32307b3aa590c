#pragma once

#include <vector>

#include "skewsiep/graph.hpp"
#include "skewsiep/jacobian.hpp"
#include "skewsiep/matrix.hpp"

namespace skewsiep {

struct HomotopyConfig {
  double epsilon_target = 0.1;
  std::vector<double> per_chord_targets;  // optional; empty means all epsilon_target
  int steps = 10;
  double newton_tol = 1e-12;  // per component, relative to max(1, |target_r|)
  int max_newton_iters = 50;
  int backtrack = 8;
};

struct NewtonResult {
  std::vector<double> x;
  int iterations = 0;
  double residual = 0.0;  // max_r |f_r - target_r| / max(1, |target_r|)
};

// Damped Newton on the tree weights x with the chord weights y held fixed:
// drives trace_map(M(x, y), v) to target. Fails by exception (singular
// linearization, stalled line search, iteration cap); it never returns a
// non-solution.
NewtonResult newton_correct(const TraceMapValue& target, std::vector<double> x0,
                            const std::vector<double>& y_fixed, const Tree& t,
                            const std::vector<Edge>& chords, int v, const HomotopyConfig& cfg);

struct ExtendResult {
  SkewMatrix matrix;
  double residual = 0.0;       // final Newton residual, scaled as above
  int newton_iterations = 0;   // summed over all homotopy steps
  int steps_taken = 0;
};

// Continues A from the tree t to the supergraph t + chords: ramps every
// chord weight linearly to its target over cfg.steps Newton-corrected
// increments, halving the increment on failure up to cfg.backtrack times.
// Both spectra (of the matrix and of the matrix with v deleted) are preserved
// because the trace map is held fixed. Chord entries of the result equal
// their targets exactly; requires a nonsingular Jacobian at A.
ExtendResult extend(const SkewMatrix& a, const Tree& t, int v, const std::vector<Edge>& chords,
                    const HomotopyConfig& cfg = {});

}  // namespace skewsiep
