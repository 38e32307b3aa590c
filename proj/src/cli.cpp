#include "skewsiep/cli.hpp"

#include <sstream>
#include <stdexcept>

#include "skewsiep/construct.hpp"
#include "skewsiep/continuation.hpp"
#include "skewsiep/eig.hpp"
#include "skewsiep/fuzz.hpp"
#include "skewsiep/io.hpp"
#include "skewsiep/jacobian.hpp"
#include "skewsiep/util.hpp"

namespace skewsiep {

namespace {

void diagnose(std::ostream& err, const std::string& kind, const std::string& message,
              Json extra = Json::object()) {
  Json d{{"error", kind}, {"message", message}};
  for (auto& [key, value] : extra.items()) d[key] = value;
  err << d.dump() << "\n";
}

void emit(const JobSpec& job, std::ostream& out, const std::string& payload) {
  if (job.out_path.empty())
    out << payload;
  else
    write_text_file(job.out_path, payload);
}

void emit_json(const JobSpec& job, std::ostream& out, const Json& j) {
  emit(job, out, j.dump(2) + "\n");
}

std::string witness_message(const NebWitness& w) {
  std::ostringstream os;
  if (w.kind == NebFailure::OddComponentCount)
    os << "removing vertex " << w.vertex << " leaves " << w.odd_components
       << " odd components, expected " << w.expected_odd;
  else
    os << "the branch of vertex " << w.vertex << " rooted at " << w.branch_root
       << " is not nearly even branching at its root";
  return os.str();
}

void require_vertex(const JobSpec& job) {
  if (job.vertex < 1) throw std::invalid_argument("a vertex (--vertex) is required");
}

void require_path(const std::string& path, const std::string& what) {
  if (path.empty()) throw std::invalid_argument(what + " is required");
}

HomotopyConfig homotopy_config(const JobSpec& job) {
  HomotopyConfig cfg;
  cfg.epsilon_target = job.epsilon;
  cfg.steps = job.steps;
  cfg.newton_tol = job.newton_tol;
  cfg.max_newton_iters = job.max_newton_iters;
  cfg.backtrack = job.backtrack;
  return cfg;
}

int run_neb_check(const JobSpec& job, std::ostream& out, std::ostream& err) {
  require_path(job.tree_path, "a tree or graph file (--tree)");
  if (job.spanning) {
    Graph g = read_graph_file(job.tree_path);
    auto hit = find_spanning_neb_tree(g);
    if (!hit) {
      emit_json(job, out, Json{{"found", false}});
      diagnose(err, "domain", "no spanning tree of the graph is nearly even branching anywhere");
      return kExitDomain;
    }
    emit_json(job, out,
              Json{{"found", true},
                   {"vertex", hit->second},
                   {"tree", graph_json(hit->first.as_graph())}});
    return kExitOk;
  }

  Tree t = read_tree_file(job.tree_path);
  require_vertex(job);
  if (job.vertex > t.n)
    throw std::invalid_argument("vertex outside 1.." + std::to_string(t.n));
  NebCertificate cert = is_neb(t, job.vertex);
  emit_json(job, out, certificate_json(cert));
  if (!cert.verdict) {
    std::ostringstream os;
    os << "tree is not nearly even branching at vertex " << job.vertex;
    if (cert.witness) os << ": " << witness_message(*cert.witness);
    Json extra;
    if (cert.witness) extra["witness"] = certificate_json(cert)["witness"];
    diagnose(err, "domain", os.str(), extra);
    return kExitDomain;
  }
  return kExitOk;
}

int run_construct(const JobSpec& job, std::ostream& out, std::ostream& err) {
  require_path(job.tree_path, "a tree file (--tree)");
  require_path(job.spectrum_path, "a spectrum file (--spectrum)");
  require_vertex(job);
  Tree t = read_tree_file(job.tree_path);
  SpectrumSpec spec = read_spectrum_file(job.spectrum_path);

  ConstructionReport report = construct(t, job.vertex, spec);
  VerificationSummary summary = verify_construction(report, t, job.vertex, spec, job.tol);

  if (job.format == "csv") {
    emit(job, out, matrix_csv(report.matrix));
  } else {
    Json j = matrix_json(report.matrix);
    j["vertex"] = job.vertex;
    j["verification"] = verification_json(summary);
    j["trace"] = trace_json(report.trace, job.debug_json);
    emit_json(job, out, j);
  }
  if (!summary.pass) {
    diagnose(err, "numerical", "construction finished but failed verification",
             Json{{"verification", verification_json(summary)}});
    return kExitNumerical;
  }
  return kExitOk;
}

int run_extend(const JobSpec& job, std::ostream& out, std::ostream& err) {
  require_path(job.matrix_path, "a matrix file (--matrix)");
  require_path(job.tree_path, "a tree file (--tree)");
  require_vertex(job);
  if (job.chords.empty()) throw std::invalid_argument("at least one chord (--chords) is required");
  SkewMatrix a = read_matrix_file(job.matrix_path);
  Tree t = read_tree_file(job.tree_path);

  ExtendResult er = extend(a, t, job.vertex, job.chords, homotopy_config(job));
  if (job.format == "csv") {
    emit(job, out, matrix_csv(er.matrix));
  } else {
    Json j = matrix_json(er.matrix);
    j["vertex"] = job.vertex;
    j["residual"] = er.residual;
    j["newton_iterations"] = er.newton_iterations;
    j["steps_taken"] = er.steps_taken;
    emit_json(job, out, j);
  }
  (void)err;
  return kExitOk;
}

int run_verify(const JobSpec& job, std::ostream& out, std::ostream& err) {
  require_path(job.matrix_path, "a matrix file (--matrix)");
  require_path(job.tree_path, "a tree file (--tree)");
  require_path(job.spectrum_path, "a spectrum file (--spectrum)");
  require_vertex(job);
  SkewMatrix a = read_matrix_file(job.matrix_path);
  Tree t = read_tree_file(job.tree_path);
  SpectrumSpec spec = read_spectrum_file(job.spectrum_path);

  ConstructionReport report;
  report.matrix = a;
  VerificationSummary summary = verify_construction(report, t, job.vertex, spec, job.tol);
  emit_json(job, out, verification_json(summary));
  if (!summary.pass) {
    diagnose(err, "domain", "matrix does not verify against the prescribed spectra",
             Json{{"verification", verification_json(summary)}});
    return kExitDomain;
  }
  return kExitOk;
}

int run_jacobian(const JobSpec& job, std::ostream& out, std::ostream& err) {
  require_path(job.matrix_path, "a matrix file (--matrix)");
  require_path(job.tree_path, "a tree file (--tree)");
  require_vertex(job);
  SkewMatrix a = read_matrix_file(job.matrix_path);
  Tree t = read_tree_file(job.tree_path);

  Dense j = jacobian_f(a, t, job.vertex);
  NonsingularVerdict verdict = is_nonsingular(j);

  std::vector<std::vector<double>> rows(j.n(), std::vector<double>(j.n()));
  for (int r = 0; r < j.n(); ++r)
    for (int c = 0; c < j.n(); ++c) rows[r][c] = j.at(r, c);

  emit_json(job, out,
            Json{{"n", t.n},
                 {"vertex", job.vertex},
                 {"jacobian", rows},
                 {"trace_map", trace_map(a, job.vertex)},
                 {"abs_det", verdict.abs_det},
                 {"min_pivot", verdict.min_pivot},
                 {"nonsingular", verdict.nonsingular}});
  if (!verdict.nonsingular) {
    diagnose(err, "domain", "trace-map jacobian is singular at this matrix",
             Json{{"min_pivot", verdict.min_pivot}});
    return kExitDomain;
  }
  return kExitOk;
}

Json fuzz_report_json(const FuzzReport& rep) {
  Json worst{{"lambda_dev", rep.worst.lambda_dev},
             {"mu_dev", rep.worst.mu_dev},
             {"identity_residual", rep.worst.identity_residual},
             {"duarte_min_margin", rep.worst.duarte_min_margin},
             {"jacobian_min_pivot", rep.worst.jacobian_min_pivot},
             {"extend_spectrum_dev", rep.worst.extend_spectrum_dev},
             {"residue_min", rep.worst.residue_min},
             {"palindromy_rel", rep.worst.palindromy_rel},
             {"h_interlacing_min_margin", rep.worst.h_interlacing_min_margin},
             {"cauchy_worst_margin", rep.worst.cauchy_worst_margin}};
  Json violations = Json::array();
  for (const auto& v : rep.violations)
    violations.push_back({{"trial", v.trial}, {"check", v.check}, {"detail", v.detail}});
  Json trials = Json::array();
  for (const auto& r : rep.records) {
    Json rec{{"trial", r.trial}, {"n", r.n}, {"vertex", r.vertex}, {"neb", r.neb}};
    if (r.extend_attempted) {
      rec["extend_ok"] = r.extend_ok;
      rec["extend_epsilon"] = r.extend_epsilon;
    }
    trials.push_back(rec);
  }
  return Json{{"config",
               {{"n_max", rep.config.n_max}, {"trials", rep.config.trials},
                {"seed", rep.config.seed}}},
              {"neb_trials", rep.neb_trials},
              {"non_neb_trials", rep.non_neb_trials},
              {"extend_runs", rep.extend_runs},
              {"extend_failures", rep.extend_failures},
              {"worst", worst},
              {"violations", violations},
              {"trials", trials}};
}

int run_fuzz_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
  FuzzConfig cfg;
  cfg.n_max = job.fuzz_n_max;
  cfg.trials = job.fuzz_trials;
  cfg.seed = job.fuzz_seed;
  FuzzReport rep = run_fuzz(cfg);
  emit_json(job, out, fuzz_report_json(rep));
  if (!rep.violations.empty()) {
    std::ostringstream os;
    os << rep.violations.size() << " invariant violation(s) across " << cfg.trials << " trials";
    diagnose(err, "domain", os.str());
    return kExitDomain;
  }
  return kExitOk;
}

int dispatch(const JobSpec& job, std::ostream& out, std::ostream& err) {
  if (job.format != "json" && job.format != "csv")
    throw std::invalid_argument("format must be json or csv");
  if (job.format == "csv" && job.command != Command::Construct && job.command != Command::Extend)
    throw std::invalid_argument("csv output is only available for matrix payloads");
  if (job.tol <= 0.0) throw std::invalid_argument("tol must be positive");

  switch (job.command) {
    case Command::NebCheck:
      return run_neb_check(job, out, err);
    case Command::Construct:
      return run_construct(job, out, err);
    case Command::Extend:
      return run_extend(job, out, err);
    case Command::Verify:
      return run_verify(job, out, err);
    case Command::Jacobian:
      return run_jacobian(job, out, err);
    case Command::Fuzz:
      return run_fuzz_job(job, out, err);
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace

int run_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(job, out, err);
  } catch (const IoError& e) {
    diagnose(err, "io", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    diagnose(err, "domain", e.what());
    return kExitDomain;
  } catch (const std::runtime_error& e) {
    diagnose(err, "numerical", e.what());
    return kExitNumerical;
  }
}

}  // namespace skewsiep
