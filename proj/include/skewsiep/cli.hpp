#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "skewsiep/graph.hpp"

namespace skewsiep {

enum class Command { NebCheck, Construct, Extend, Verify, Jacobian, Fuzz };

// One CLI invocation, already parsed. run_job validates it (files exist and
// parse, tolerances positive) and maps every failure to an exit code:
// 0 success, 1 domain rejection, 2 numerical failure, 3 I/O error.
struct JobSpec {
  Command command = Command::NebCheck;
  std::string tree_path;
  std::string matrix_path;
  std::string spectrum_path;
  std::string out_path;       // empty: results go to stdout
  std::string format = "json";  // json | csv (matrix payloads only)
  int vertex = 0;
  bool spanning = false;      // neb-check: search spanning trees of a graph
  std::vector<Edge> chords;
  double epsilon = 0.1;
  int steps = 10;
  double newton_tol = 1e-12;
  int max_newton_iters = 50;
  int backtrack = 8;
  double tol = 1e-8;          // verification tolerance (relative)
  bool debug_json = false;    // include residues/roots in construct traces
  int fuzz_n_max = 9;
  int fuzz_trials = 200;
  uint64_t fuzz_seed = 42;
};

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

// Runs the job, writing results to out and machine-readable diagnostic JSON
// to err on failure. Returns the exit code.
int run_job(const JobSpec& job, std::ostream& out, std::ostream& err);

}  // namespace skewsiep
