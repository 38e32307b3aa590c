#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewsiep/graph.hpp"
#include "skewsiep/matrix.hpp"
#include "skewsiep/spectrum.hpp"

namespace skewsiep {

// Deterministic splitmix64-based generator. Each fuzz trial derives its own
// stream from (seed, trial), so trial results do not depend on run order.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  double uniform(double lo, double hi);
  int below(int n);  // uniform in [0, n)

 private:
  uint64_t state_;
};

Tree random_tree(Rng& rng, int n);  // uniform labeled tree (Pruefer decode)

// Valid spectrum pair: n-1 distinct positives in [lo, hi] with pairwise gaps
// at least min_gap, mirrored and interleaved so interlacing and symmetry hold
// by construction.
SpectrumSpec random_spectrum(Rng& rng, int n, double lo = 0.1, double hi = 100.0,
                             double min_gap = 1e-2);

SkewMatrix random_skew_on_tree(Rng& rng, const Tree& t);  // nonzero tree weights
SkewMatrix random_dense_skew(Rng& rng, int n);

struct FuzzConfig {
  int n_max = 9;
  int trials = 200;
  uint64_t seed = 42;
};

struct FuzzViolation {
  int trial = 0;
  std::string check;
  std::string detail;
};

struct FuzzTrialRecord {
  int trial = 0;
  int n = 0;
  int vertex = 0;
  bool neb = false;
  bool extend_attempted = false;
  bool extend_ok = false;
  double extend_epsilon = 0.0;  // largest chord weight actually reached
};

// Extremes over all trials; violations list which bound broke and where.
struct FuzzWorst {
  double lambda_dev = 0.0;
  double mu_dev = 0.0;
  double identity_residual = 0.0;
  double duarte_min_margin = 0.0;
  double jacobian_min_pivot = 0.0;
  double extend_spectrum_dev = 0.0;
  double residue_min = 0.0;
  double palindromy_rel = 0.0;
  double h_interlacing_min_margin = 0.0;
  double cauchy_worst_margin = 0.0;
  bool any = false;
};

struct FuzzReport {
  FuzzConfig config;
  int neb_trials = 0;
  int non_neb_trials = 0;
  int extend_runs = 0;
  int extend_failures = 0;
  FuzzWorst worst;
  std::vector<FuzzViolation> violations;
  std::vector<FuzzTrialRecord> records;  // sorted by trial index
};

// Random trees and vertices; NEB instances are constructed, verified,
// Jacobian-checked and extended across a random chord, non-NEB instances get
// random weights and must fail the recursive interlacing check. Violations
// are recorded, never thrown. Deterministic given the seed.
FuzzReport run_fuzz(const FuzzConfig& cfg);

}  // namespace skewsiep
