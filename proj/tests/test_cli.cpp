#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "skewsiep/cli.hpp"
#include "skewsiep/eig.hpp"
#include "skewsiep/fuzz.hpp"
#include "skewsiep/io.hpp"

using namespace skewsiep;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const JobSpec& job) {
  std::ostringstream o, e;
  CliResult r;
  r.code = run_job(job, o, e);
  r.out = o.str();
  r.err = e.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "skewsiep-cli-tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream f(p);
  f << content;
  REQUIRE(f.good());
  return p.string();
}

const std::string kStarTree = R"({"n": 4, "edges": [[1, 2], [1, 3], [1, 4]]})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("neb-check certifies the accepted fixture") {
  JobSpec job;
  job.command = Command::NebCheck;
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.vertex = 4;
  CliResult r = run(job);
  CHECK(r.code == kExitOk);
  CHECK(r.err.empty());
  Json j = Json::parse(r.out);
  CHECK(j["verdict"] == true);
  CHECK(j["vertex"] == 4);
  CHECK_FALSE(j.contains("witness"));
}

TEST_CASE("neb-check rejects with a concrete witness") {
  JobSpec job;
  job.command = Command::NebCheck;
  job.tree_path = oracle::fixture_path("h_tree.json");
  job.vertex = 1;
  CliResult r = run(job);
  CHECK(r.code == kExitDomain);
  Json j = Json::parse(r.out);
  CHECK(j["verdict"] == false);
  REQUIRE(j.contains("witness"));
  CHECK(j["witness"]["kind"] == "branch-not-neb");
  CHECK(j["witness"]["branch_root"] == 3);
  CHECK(j["witness"]["vertex"] == 1);

  Json e = Json::parse(r.err);
  CHECK(e["error"] == "domain");
  CHECK(e["message"].get<std::string>().find("rooted at 3") != std::string::npos);
  CHECK(e["witness"] == j["witness"]);
}

TEST_CASE("neb-check --spanning finds a usable spanning tree of a cycle") {
  JobSpec job;
  job.command = Command::NebCheck;
  job.tree_path = oracle::fixture_path("c4_graph.json");
  job.spanning = true;
  CliResult r = run(job);
  CHECK(r.code == kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["found"] == true);

  std::vector<Edge> edges;
  for (const auto& e : j["tree"]["edges"]) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  Tree t(j["tree"]["n"].get<int>(), edges);
  CHECK(t.n == 4);
  CHECK(t.edges.size() == 3);
  CHECK(is_neb(t, j["vertex"].get<int>()).verdict);
}

TEST_CASE("neb-check --spanning reports when no spanning tree works") {
  JobSpec job;
  job.command = Command::NebCheck;
  job.tree_path = temp_file("star_graph.json", kStarTree);
  job.spanning = true;
  CliResult r = run(job);
  CHECK(r.code == kExitDomain);
  CHECK(Json::parse(r.out)["found"] == false);
  CHECK(Json::parse(r.err)["error"] == "domain");
}

TEST_CASE("construct emits matrix, verification and recursion trace") {
  oracle::GoldenP4 gold;
  JobSpec job;
  job.command = Command::Construct;
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.spectrum_path = oracle::fixture_path("p4_spectrum.json");
  job.vertex = 4;
  CliResult r = run(job);
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.empty());

  Json j = Json::parse(r.out);
  CHECK(j["n"] == 4);
  CHECK(j["vertex"] == 4);
  CHECK(j["matrix"][0][1].get<double>() == doctest::Approx(gold.a12).epsilon(1e-9));
  CHECK(j["matrix"][1][2].get<double>() == doctest::Approx(gold.a23).epsilon(1e-9));
  CHECK(j["verification"]["pass"] == true);
  CHECK(j["verification"]["duarte"] == true);
  CHECK(j["trace"]["vertex"] == 4);
  REQUIRE(j["trace"]["branches"].size() == 1);
  CHECK(j["trace"]["branches"][0]["neighbor"] == 3);
  CHECK(j["trace"]["branches"][0]["y"].get<double>() == doctest::Approx(2.75).epsilon(1e-11));
  CHECK_FALSE(j["trace"].contains("residues"));  // debug off

  // the payload round-trips through the matrix reader
  SkewMatrix back = parse_matrix(r.out);
  CHECK(back.at(3, 4) == doctest::Approx(gold.a34).epsilon(1e-12));

  job.debug_json = true;
  Json jd = Json::parse(run(job).out);
  REQUIRE(jd["trace"].contains("residues"));
  CHECK(jd["trace"]["residues"].size() == 3);
  CHECK(jd["trace"]["branches"][0]["g_roots"].size() == 3);
}

TEST_CASE("construct csv payload is a plain dense matrix") {
  oracle::GoldenP4 gold;
  JobSpec job;
  job.command = Command::Construct;
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.spectrum_path = oracle::fixture_path("p4_spectrum.json");
  job.vertex = 4;
  job.format = "csv";
  CliResult r = run(job);
  REQUIRE(r.code == kExitOk);

  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    if (count == 0) {
      std::istringstream cells(line);
      std::string cell;
      std::vector<double> row;
      while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
      REQUIRE(row.size() == 4);
      CHECK(row[0] == 0.0);
      CHECK(row[1] == doctest::Approx(gold.a12).epsilon(1e-12));
    }
    ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("construct rejections carry domain diagnostics") {
  JobSpec job;
  job.command = Command::Construct;
  job.tree_path = temp_file("star_tree.json", kStarTree);
  job.spectrum_path = oracle::fixture_path("p4_spectrum.json");
  job.vertex = 1;
  CliResult r = run(job);
  CHECK(r.code == kExitDomain);
  Json e = Json::parse(r.err);
  CHECK(e["error"] == "domain");
  CHECK(e["message"].get<std::string>().find("not NEB") != std::string::npos);

  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.spectrum_path = temp_file("bad_spectrum.json",
                                R"({"lambda": [-2, -1, 1, 2], "mu": [-1.5, 0.2, 1.5]})");
  job.vertex = 4;
  CliResult r2 = run(job);
  CHECK(r2.code == kExitDomain);
  Json e2 = Json::parse(r2.err);
  CHECK(e2["error"] == "domain");
  CHECK(e2["message"].get<std::string>().find("invalid spectrum") != std::string::npos);
  CHECK(e2["message"].get<std::string>().find("violated") != std::string::npos);
}

TEST_CASE("extend ramps the fixture matrix across a chord") {
  oracle::GoldenP4 gold;
  JobSpec job;
  job.command = Command::Extend;
  job.matrix_path = oracle::fixture_path("p4_matrix.json");
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.vertex = 4;
  job.chords = {{1, 4}};
  CliResult r = run(job);
  REQUIRE(r.code == kExitOk);

  Json j = Json::parse(r.out);
  CHECK(j["steps_taken"] == 10);
  CHECK(j["residual"].get<double>() <= 1e-12);
  CHECK(j["matrix"][0][3].get<double>() == 0.1);

  SkewMatrix ext = parse_matrix(r.out);
  auto lam = skew_eigenvalues(ext).imag_parts;
  CHECK(oracle::max_abs_diff(lam, gold.lambdas) <= 1e-8);
  auto mu = skew_eigenvalues(ext.deleted(4)).imag_parts;
  CHECK(oracle::max_abs_diff(mu, gold.mus) <= 1e-8);
}

TEST_CASE("a hopeless ramp maps to the numerical exit code") {
  JobSpec job;
  job.command = Command::Extend;
  job.matrix_path = oracle::fixture_path("p4_matrix.json");
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.vertex = 4;
  job.chords = {{1, 4}};
  job.epsilon = 1e8;
  job.steps = 1;
  job.max_newton_iters = 2;
  job.backtrack = 0;
  CliResult r = run(job);
  CHECK(r.code == kExitNumerical);
  Json e = Json::parse(r.err);
  CHECK(e["error"] == "numerical");
  CHECK(e["message"].get<std::string>().find("homotopy failed") != std::string::npos);
}

TEST_CASE("extend requires at least one chord") {
  JobSpec job;
  job.command = Command::Extend;
  job.matrix_path = oracle::fixture_path("p4_matrix.json");
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.vertex = 4;
  CliResult r = run(job);
  CHECK(r.code == kExitDomain);
  CHECK(Json::parse(r.err)["message"].get<std::string>().find("chord") != std::string::npos);
}

TEST_CASE("verify passes the fixture and flags a perturbation") {
  JobSpec job;
  job.command = Command::Verify;
  job.matrix_path = oracle::fixture_path("p4_matrix.json");
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.spectrum_path = oracle::fixture_path("p4_spectrum.json");
  job.vertex = 4;
  CliResult r = run(job);
  CHECK(r.code == kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["duarte"] == true);
  CHECK(j["eig_tol"].get<double>() == doctest::Approx(2e-8));

  SkewMatrix bumped = read_matrix_file(job.matrix_path);
  bumped.set(2, 3, bumped.at(2, 3) + 0.01);
  job.matrix_path = temp_file("bumped_matrix.json", matrix_json(bumped).dump());
  CliResult r2 = run(job);
  CHECK(r2.code == kExitDomain);
  Json j2 = Json::parse(r2.out);
  CHECK(j2["pass"] == false);
  CHECK(j2["lambda_dev"].get<double>() > 1e-3);
  Json e2 = Json::parse(r2.err);
  CHECK(e2["error"] == "domain");
  CHECK(e2["message"].get<std::string>().find("does not verify") != std::string::npos);
}

TEST_CASE("jacobian reports the trace map, determinant and verdict") {
  JobSpec job;
  job.command = Command::Jacobian;
  job.matrix_path = oracle::fixture_path("p4_matrix.json");
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.vertex = 4;
  CliResult r = run(job);
  REQUIRE(r.code == kExitOk);
  Json j = Json::parse(r.out);
  CHECK(j["n"] == 4);
  CHECK(j["nonsingular"] == true);
  CHECK(j["abs_det"].get<double>() == doctest::Approx(std::sqrt(385.0) / 4.0).epsilon(1e-9));
  REQUIRE(j["trace_map"].size() == 3);
  CHECK(j["trace_map"][0].get<double>() == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(j["trace_map"][1].get<double>() == doctest::Approx(4.25).epsilon(1e-12));
  CHECK(j["trace_map"][2].get<double>() == doctest::Approx(-1.125).epsilon(1e-12));
  CHECK(j["jacobian"].size() == 3);
}

TEST_CASE("jacobian is singular for every weighting of a star at its center") {
  JobSpec job;
  job.command = Command::Jacobian;
  job.tree_path = temp_file("star_tree.json", kStarTree);
  job.matrix_path = temp_file(
      "star_matrix.json",
      R"({"n": 4, "matrix": [[0, 1, 1, 1], [-1, 0, 0, 0], [-1, 0, 0, 0], [-1, 0, 0, 0]]})");
  job.vertex = 1;
  CliResult r = run(job);
  CHECK(r.code == kExitDomain);
  CHECK(Json::parse(r.out)["nonsingular"] == false);
  Json e = Json::parse(r.err);
  CHECK(e["error"] == "domain");
  CHECK(e["message"].get<std::string>().find("singular") != std::string::npos);
}

TEST_CASE("fuzz runs clean and is byte-for-byte deterministic") {
  JobSpec job;
  job.command = Command::Fuzz;
  job.fuzz_trials = 20;
  job.fuzz_n_max = 6;
  job.fuzz_seed = 7;
  CliResult a = run(job);
  CliResult b = run(job);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);

  Json j = Json::parse(a.out);
  CHECK(j["config"]["n_max"] == 6);
  CHECK(j["config"]["trials"] == 20);
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["violations"].empty());
  CHECK(j["trials"].size() == 20);
  CHECK(j["neb_trials"].get<int>() + j["non_neb_trials"].get<int>() == 20);
}

TEST_CASE("fuzz module bookkeeping is consistent") {
  FuzzConfig cfg;
  cfg.n_max = 5;
  cfg.trials = 10;
  cfg.seed = 3;
  FuzzReport rep = run_fuzz(cfg);
  REQUIRE(rep.records.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(rep.records[i].trial == i);
  CHECK(rep.neb_trials + rep.non_neb_trials == 10);
  CHECK(rep.extend_runs <= rep.neb_trials);
  CHECK(rep.extend_failures <= rep.extend_runs);
  CHECK(rep.violations.empty());
  CHECK(rep.worst.any);

  CHECK_THROWS_AS(run_fuzz({1, 5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(run_fuzz({13, 5, 0}), std::invalid_argument);
  CHECK_THROWS_AS(run_fuzz({5, -1, 0}), std::invalid_argument);
}

TEST_CASE("random helpers draw valid objects deterministically") {
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  for (int i = 0; i < 50; ++i) {
    double u = a.uniform(-1.5, 2.5);
    CHECK(u >= -1.5);
    CHECK(u < 2.5);
    int k = a.below(7);
    CHECK(k >= 0);
    CHECK(k < 7);
  }
  CHECK_THROWS_AS(a.below(0), std::invalid_argument);

  Rng rng(11);
  Tree t = random_tree(rng, 7);
  CHECK(t.n == 7);
  CHECK(t.edges.size() == 6);  // Tree construction already enforced acyclicity

  for (int n = 2; n <= 9; ++n)
    for (int rep = 0; rep < 6; ++rep) CHECK(validate(random_spectrum(rng, n)).ok);

  SkewMatrix w = random_skew_on_tree(rng, t);
  CHECK(w.nonzero_edges() == t.edges);
  for (auto [i, j] : t.edges) {
    CHECK(std::fabs(w.at(i, j)) >= 0.3);
    CHECK(std::fabs(w.at(i, j)) <= 3.0);
  }
}

TEST_CASE("missing and malformed inputs exit through the io code") {
  JobSpec job;
  job.command = Command::Construct;
  job.tree_path = "/nonexistent/nope.json";
  job.spectrum_path = oracle::fixture_path("p4_spectrum.json");
  job.vertex = 4;
  CliResult r = run(job);
  CHECK(r.code == kExitIo);
  Json e = Json::parse(r.err);
  CHECK(e["error"] == "io");
  CHECK(e["message"].get<std::string>().find("nope.json") != std::string::npos);

  job.tree_path = temp_file("malformed.json", "{ this is not json");
  CHECK(run(job).code == kExitIo);

  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.spectrum_path = temp_file("typed_wrong.json", R"({"lambda": 3, "mu": []})");
  CHECK(run(job).code == kExitIo);
}

TEST_CASE("incoherent flags are domain errors") {
  JobSpec job;
  job.command = Command::NebCheck;
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.vertex = 4;
  job.format = "csv";
  CliResult r = run(job);
  CHECK(r.code == kExitDomain);
  CHECK(Json::parse(r.err)["message"].get<std::string>().find("csv output") != std::string::npos);

  job.format = "xml";
  CHECK(run(job).code == kExitDomain);

  job.format = "json";
  job.tol = 0.0;
  CHECK(run(job).code == kExitDomain);
  job.tol = 1e-8;

  job.vertex = 9;
  CliResult r2 = run(job);
  CHECK(r2.code == kExitDomain);
  CHECK(Json::parse(r2.err)["message"].get<std::string>().find("vertex") != std::string::npos);

  JobSpec noVertex;
  noVertex.command = Command::Construct;
  noVertex.tree_path = oracle::fixture_path("p4_tree.json");
  noVertex.spectrum_path = oracle::fixture_path("p4_spectrum.json");
  CHECK(run(noVertex).code == kExitDomain);
}

TEST_CASE("out_path writes the payload to a file and nothing to stdout") {
  namespace fs = std::filesystem;
  JobSpec job;
  job.command = Command::Construct;
  job.tree_path = oracle::fixture_path("p4_tree.json");
  job.spectrum_path = oracle::fixture_path("p4_spectrum.json");
  job.vertex = 4;
  job.out_path = (fs::temp_directory_path() / "skewsiep-cli-tests" / "construct_out.json").string();
  fs::create_directories(fs::path(job.out_path).parent_path());
  std::remove(job.out_path.c_str());

  CliResult r = run(job);
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  Json j = Json::parse(read_text_file(job.out_path));
  CHECK(j["verification"]["pass"] == true);
}

}  // TEST_SUITE
