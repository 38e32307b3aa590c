#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "skewsiep/cli.hpp"
#include "skewsiep/io.hpp"

namespace {

std::vector<skewsiep::Edge> parse_chords(const std::string& text) {
  auto j = skewsiep::Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array())
    throw skewsiep::IoError("chords must be a JSON array of [i, j] pairs");
  std::vector<skewsiep::Edge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw skewsiep::IoError("chords must be a JSON array of [i, j] pairs");
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inverse eigenvalue solver for skew-symmetric matrices on trees"};
  app.require_subcommand(1);

  skewsiep::JobSpec job;
  std::string chords_text;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", job.out_path, "output file (default: stdout)");
  };

  auto* neb = app.add_subcommand(
      "neb-check", "decide whether a tree is nearly even branching at a vertex");
  neb->add_option("--tree", job.tree_path, "tree (or graph, with --spanning) file")->required();
  neb->add_option("--vertex", job.vertex, "root vertex, 1-based");
  neb->add_flag("--spanning", job.spanning,
                "search the spanning trees of a graph for an NEB rooting");
  add_out(neb);

  auto* cons = app.add_subcommand(
      "construct", "build a matrix on a tree realizing prescribed spectra");
  cons->add_option("--tree", job.tree_path, "tree file")->required();
  cons->add_option("--spectrum", job.spectrum_path, "spectrum file")->required();
  cons->add_option("--vertex", job.vertex, "root vertex, 1-based")->required();
  cons->add_option("--format", job.format, "json or csv (default json)");
  cons->add_option("--tol", job.tol, "verification tolerance, relative (default 1e-8)");
  cons->add_flag("--debug-json", job.debug_json, "include residues and root lists in the trace");
  add_out(cons);

  auto* ext = app.add_subcommand(
      "extend", "continue a tree matrix to a supergraph, preserving both spectra");
  ext->add_option("--matrix", job.matrix_path, "matrix file")->required();
  ext->add_option("--tree", job.tree_path, "tree file")->required();
  ext->add_option("--vertex", job.vertex, "root vertex, 1-based")->required();
  ext->add_option("--chords", chords_text, "added edges as a JSON array, e.g. [[1,4]]")
      ->required();
  ext->add_option("--epsilon", job.epsilon, "target chord weight (default 0.1)");
  ext->add_option("--steps", job.steps, "homotopy increments (default 10)");
  ext->add_option("--newton-tol", job.newton_tol, "Newton residual tolerance (default 1e-12)");
  ext->add_option("--max-newton-iters", job.max_newton_iters,
                  "Newton iteration cap per step (default 50)");
  ext->add_option("--backtrack", job.backtrack, "halvings before giving up (default 8)");
  ext->add_option("--format", job.format, "json or csv (default json)");
  add_out(ext);

  auto* ver = app.add_subcommand(
      "verify", "check a matrix against a tree, a vertex and prescribed spectra");
  ver->add_option("--matrix", job.matrix_path, "matrix file")->required();
  ver->add_option("--tree", job.tree_path, "tree file")->required();
  ver->add_option("--spectrum", job.spectrum_path, "spectrum file")->required();
  ver->add_option("--vertex", job.vertex, "root vertex, 1-based")->required();
  ver->add_option("--tol", job.tol, "verification tolerance, relative (default 1e-8)");
  add_out(ver);

  auto* jac = app.add_subcommand(
      "jacobian", "evaluate the trace-map jacobian and test it for singularity");
  jac->add_option("--matrix", job.matrix_path, "matrix file")->required();
  jac->add_option("--tree", job.tree_path, "tree file")->required();
  jac->add_option("--vertex", job.vertex, "root vertex, 1-based")->required();
  add_out(jac);

  auto* fz = app.add_subcommand("fuzz", "run the randomized property suite");
  fz->add_option("--n-max", job.fuzz_n_max, "largest tree order (default 9)");
  fz->add_option("--trials", job.fuzz_trials, "trial count (default 200)");
  fz->add_option("--seed", job.fuzz_seed, "RNG seed (default 42)");
  add_out(fz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? skewsiep::kExitOk : skewsiep::kExitIo;
  }

  if (app.got_subcommand(neb)) job.command = skewsiep::Command::NebCheck;
  if (app.got_subcommand(cons)) job.command = skewsiep::Command::Construct;
  if (app.got_subcommand(ext)) job.command = skewsiep::Command::Extend;
  if (app.got_subcommand(ver)) job.command = skewsiep::Command::Verify;
  if (app.got_subcommand(jac)) job.command = skewsiep::Command::Jacobian;
  if (app.got_subcommand(fz)) job.command = skewsiep::Command::Fuzz;

  if (!chords_text.empty()) {
    try {
      job.chords = parse_chords(chords_text);
    } catch (const skewsiep::IoError& e) {
      std::cerr << skewsiep::Json{{"error", "io"}, {"message", e.what()}}.dump() << "\n";
      return skewsiep::kExitIo;
    }
  }

  return skewsiep::run_job(job, std::cout, std::cerr);
}
