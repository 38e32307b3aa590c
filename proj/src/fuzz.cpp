#include "skewsiep/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "skewsiep/construct.hpp"
#include "skewsiep/continuation.hpp"
#include "skewsiep/eig.hpp"
#include "skewsiep/jacobian.hpp"
#include "skewsiep/polynomial.hpp"
#include "skewsiep/util.hpp"

namespace skewsiep {

uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  double u = static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + u * (hi - lo);
}

int Rng::below(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::below needs a positive bound");
  return static_cast<int>(next() % static_cast<uint64_t>(n));
}

Tree random_tree(Rng& rng, int n) {
  if (n < 1) throw std::invalid_argument("random_tree needs n >= 1");
  if (n == 1) return Tree(1, {});
  if (n == 2) return Tree(2, {{1, 2}});

  std::vector<int> seq(n - 2);
  for (int& s : seq) s = 1 + rng.below(n);

  // Pruefer decode with an ordered leaf set
  std::vector<int> deg(n + 1, 1);
  for (int s : seq) ++deg[s];
  std::set<int> leaves;
  for (int i = 1; i <= n; ++i)
    if (deg[i] == 1) leaves.insert(i);

  std::vector<Edge> edges;
  for (int s : seq) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, s);
    if (--deg[s] == 1) leaves.insert(s);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return Tree(n, std::move(edges));
}

SpectrumSpec random_spectrum(Rng& rng, int n, double lo, double hi, double min_gap) {
  if (n < 1) throw std::invalid_argument("random_spectrum needs n >= 1");
  if (lo <= 0.0 || hi <= lo) throw std::invalid_argument("random_spectrum needs 0 < lo < hi");
  int k = n - 1;
  if (hi - lo < 2.0 * k * min_gap)
    throw std::invalid_argument("random_spectrum: range too small for the gap constraint");

  std::vector<double> pos;
  int draws = 0;
  while (static_cast<int>(pos.size()) < k) {
    if (++draws > 10000) throw std::runtime_error("random_spectrum: rejection sampling stalled");
    double u = rng.uniform(lo, hi);
    bool clear = true;
    for (double p : pos)
      if (std::fabs(u - p) < min_gap) {
        clear = false;
        break;
      }
    if (clear) pos.push_back(u);
  }
  std::sort(pos.begin(), pos.end());

  // the symmetric ladder -p_k .. -p_1, 0, p_1 .. p_k alternates lambda, mu,
  // lambda, ... so interlacing and negation symmetry hold by construction
  std::vector<double> ladder;
  ladder.reserve(2 * k + 1);
  for (int i = k - 1; i >= 0; --i) ladder.push_back(-pos[i]);
  ladder.push_back(0.0);
  for (int i = 0; i < k; ++i) ladder.push_back(pos[i]);

  SpectrumSpec spec;
  for (size_t i = 0; i < ladder.size(); ++i) {
    if (i % 2 == 0)
      spec.lambdas.push_back(ladder[i]);
    else
      spec.mus.push_back(ladder[i]);
  }
  return spec;
}

SkewMatrix random_skew_on_tree(Rng& rng, const Tree& t) {
  SkewMatrix a(t.n);
  for (auto [i, j] : t.edges) {
    double w = rng.uniform(0.3, 3.0);
    if (rng.below(2) == 1) w = -w;
    a.set(i, j, w);
  }
  return a;
}

SkewMatrix random_dense_skew(Rng& rng, int n) {
  SkewMatrix a(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) a.set(i, j, rng.uniform(-2.0, 2.0));
  return a;
}

namespace {

double max_abs_dev(const std::vector<double>& got, const std::vector<double>& want) {
  double d = 0.0;
  for (size_t i = 0; i < got.size() && i < want.size(); ++i)
    d = std::max(d, std::fabs(got[i] - want[i]));
  return d;
}

// smallest interlacing margin across every node of the construction trace
void h_margin_walk(const RecursionNode& node, double& min_margin) {
  for (const auto& bt : node.branch_traces) {
    if (bt.h_roots.empty()) continue;
    SkewSpectrum outer{bt.g_roots};
    SkewSpectrum inner{bt.h_roots};
    for (double m : interlacing_margins(outer, inner)) min_margin = std::min(min_margin, m);
  }
  for (const auto& c : node.children) h_margin_walk(c, min_margin);
}

}  // namespace

FuzzReport run_fuzz(const FuzzConfig& cfg) {
  if (cfg.n_max < 2 || cfg.n_max > 12)
    throw std::invalid_argument("fuzz n_max must lie in 2..12");
  if (cfg.trials < 0) throw std::invalid_argument("fuzz trials must be nonnegative");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  FuzzReport rep;
  rep.config = cfg;
  rep.worst.duarte_min_margin = kInf;
  rep.worst.jacobian_min_pivot = kInf;
  rep.worst.residue_min = kInf;
  rep.worst.h_interlacing_min_margin = kInf;
  rep.worst.cauchy_worst_margin = kInf;

  for (int trial = 0; trial < cfg.trials; ++trial) {
    // each trial owns a splitmix stream, so results are order-independent
    Rng rng(cfg.seed + 0x9E3779B97F4A7C15ull * static_cast<uint64_t>(trial + 1));

    FuzzTrialRecord recd;
    recd.trial = trial;
    int n = 2 + rng.below(cfg.n_max - 1);
    Tree t = random_tree(rng, n);
    int v = 1 + rng.below(n);
    recd.n = n;
    recd.vertex = v;

    auto violation = [&](const std::string& check, const std::string& detail) {
      rep.violations.push_back({trial, check, detail});
    };

    NebCertificate cert = is_neb(t, v);
    recd.neb = cert.verdict;

    if (cert.verdict) {
      ++rep.neb_trials;

      int match = matching_number(t.as_graph());
      if (match != n / 2) {
        std::ostringstream os;
        os << "matching number " << match << " for an NEB tree of order " << n;
        violation("matching", os.str());
      }

      SpectrumSpec spec = random_spectrum(rng, n);
      double scale = spectrum_scale(spec);
      try {
        ConstructionReport report = construct(t, v, spec);

        if (n >= 2) {
          ResidueSet rs = residues(spec);
          double cmin = kInf, cmax = 0.0;
          for (double c : rs.c) {
            cmin = std::min(cmin, c);
            cmax = std::max(cmax, std::fabs(c));
          }
          rep.worst.residue_min = std::min(rep.worst.residue_min, cmin);
          if (cmin <= 0.0) {
            std::ostringstream os;
            os << "residue " << cmin << " is not positive";
            violation("residue-positivity", os.str());
          }
          double pal = 0.0;
          size_t nc = rs.c.size();
          for (size_t kk = 0; kk < nc; ++kk)
            pal = std::max(pal, std::fabs(rs.c[kk] - rs.c[nc - 1 - kk]));
          double pal_rel = (cmax > 0.0) ? pal / cmax : 0.0;
          rep.worst.palindromy_rel = std::max(rep.worst.palindromy_rel, pal_rel);
          if (pal_rel > 1e-9) {
            std::ostringstream os;
            os << "residue palindromy off by " << pal_rel << " relative";
            violation("residue-palindromy", os.str());
          }
        }

        double h_min = kInf;
        h_margin_walk(report.trace, h_min);
        if (h_min < kInf) {
          rep.worst.h_interlacing_min_margin = std::min(rep.worst.h_interlacing_min_margin, h_min);
          if (h_min <= 0.0) {
            std::ostringstream os;
            os << "h-root interlacing margin " << h_min;
            violation("h-interlacing", os.str());
          }
        }

        VerificationSummary vs = verify_construction(report, t, v, spec);
        rep.worst.lambda_dev = std::max(rep.worst.lambda_dev, vs.lambda_dev);
        rep.worst.mu_dev = std::max(rep.worst.mu_dev, vs.mu_dev);
        rep.worst.identity_residual = std::max(rep.worst.identity_residual, vs.identity_residual);
        if (vs.lambda_dev > vs.eig_tol_used || vs.mu_dev > vs.eig_tol_used) {
          std::ostringstream os;
          os << "spectrum deviations " << vs.lambda_dev << " / " << vs.mu_dev << " exceed "
             << vs.eig_tol_used;
          violation("spectra", os.str());
        }
        if (vs.identity_residual > 1e-7) {
          std::ostringstream os;
          os << "rational identity residual " << vs.identity_residual;
          violation("identity", os.str());
        }

        DuarteVerdict dv = verify_duarte(report.matrix, t, v);
        rep.worst.duarte_min_margin = std::min(rep.worst.duarte_min_margin, dv.min_margin);
        if (!dv.ok) {
          std::ostringstream os;
          os << "constructed matrix failed the interlacing recursion at vertex "
             << dv.failing_vertex;
          violation("duarte-constructed", os.str());
        }

        NonsingularVerdict jv = is_nonsingular(jacobian_f(report.matrix, t, v));
        rep.worst.jacobian_min_pivot = std::min(rep.worst.jacobian_min_pivot, jv.min_pivot);
        if (!jv.nonsingular) {
          std::ostringstream os;
          os << "trace-map jacobian near-singular, min pivot " << jv.min_pivot;
          violation("jacobian-nonsingular", os.str());
        }

        Graph tg = t.as_graph();
        std::vector<Edge> pool;
        for (int i = 1; i <= n; ++i)
          for (int j = i + 1; j <= n; ++j)
            if (!tg.has_edge(i, j)) pool.emplace_back(i, j);
        if (!pool.empty()) {
          Edge chord = pool[rng.below(static_cast<int>(pool.size()))];
          recd.extend_attempted = true;
          ++rep.extend_runs;
          double eps = 0.05;
          std::string last_err;
          SkewMatrix ext;
          bool ok = false;
          for (int attempt = 0; attempt < 5; ++attempt) {
            HomotopyConfig hc;
            hc.epsilon_target = eps;
            try {
              ext = extend(report.matrix, t, v, {chord}, hc).matrix;
              ok = true;
              break;
            } catch (const std::runtime_error& e) {
              last_err = e.what();
              eps *= 0.5;
            }
          }
          recd.extend_ok = ok;
          if (ok) {
            recd.extend_epsilon = eps;
            double dev = max_abs_dev(skew_eigenvalues(ext).imag_parts, spec.lambdas);
            dev = std::max(dev, max_abs_dev(skew_eigenvalues(ext.deleted(v)).imag_parts, spec.mus));
            rep.worst.extend_spectrum_dev = std::max(rep.worst.extend_spectrum_dev, dev);
            if (dev > 1e-8 * scale) {
              std::ostringstream os;
              os << "extension moved the spectra by " << dev << " (scale " << scale << ")";
              violation("extend-spectra", os.str());
            }
          } else {
            ++rep.extend_failures;
            std::ostringstream os;
            os << "no chord weight down to " << eps * 2.0 << " converged: " << last_err;
            violation("extend", os.str());
          }
        }
      } catch (const std::exception& e) {
        violation("construct", e.what());
      }
    } else {
      ++rep.non_neb_trials;
      for (int sample = 0; sample < 5; ++sample) {
        SkewMatrix w = random_skew_on_tree(rng, t);
        DuarteVerdict dv = verify_duarte(w, t, v);
        if (dv.ok) {
          std::ostringstream os;
          os << "random weighting " << sample << " of a non-NEB instance passed the "
             << "interlacing recursion (margin " << dv.min_margin << ")";
          violation("duarte-non-neb", os.str());
        }
      }
    }

    // Cauchy interlacing on an unstructured dense skew matrix of the same
    // order, for every deleted vertex
    {
      SkewMatrix d = random_dense_skew(rng, n);
      SkewSpectrum outer = skew_eigenvalues(d);
      double dscale = 1.0;
      for (double b : outer.imag_parts) dscale = std::max(dscale, std::fabs(b));
      for (int u = 1; u <= n; ++u) {
        SkewSpectrum inner = skew_eigenvalues(d.deleted(u));
        for (double m : interlacing_margins(outer, inner)) {
          rep.worst.cauchy_worst_margin = std::min(rep.worst.cauchy_worst_margin, m);
          if (m < -1e-9 * dscale) {
            std::ostringstream os;
            os << "interlacing margin " << m << " after deleting vertex " << u;
            violation("cauchy", os.str());
          }
        }
      }
    }

    if (log_level() >= LogLevel::Debug) {
      std::ostringstream os;
      os << "trial " << trial << ": n = " << n << ", v = " << v
         << (recd.neb ? ", neb" : ", non-neb");
      log_debug(os.str());
    }
    rep.records.push_back(recd);
  }

  rep.worst.any = cfg.trials > 0;
  for (double* field : {&rep.worst.duarte_min_margin, &rep.worst.jacobian_min_pivot,
                        &rep.worst.residue_min, &rep.worst.h_interlacing_min_margin,
                        &rep.worst.cauchy_worst_margin})
    if (*field == kInf) *field = 0.0;
  return rep;
}

}  // namespace skewsiep
