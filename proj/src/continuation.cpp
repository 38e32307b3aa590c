#include "skewsiep/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "skewsiep/util.hpp"

namespace skewsiep {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_config(const HomotopyConfig& cfg, size_t chord_count) {
  if (cfg.steps < 1) throw std::invalid_argument("steps must be at least 1");
  if (cfg.newton_tol <= 0.0) throw std::invalid_argument("newton_tol must be positive");
  if (cfg.max_newton_iters < 1) throw std::invalid_argument("max_newton_iters must be positive");
  if (cfg.backtrack < 0) throw std::invalid_argument("backtrack must be nonnegative");
  if (!cfg.per_chord_targets.empty() && cfg.per_chord_targets.size() != chord_count)
    throw std::invalid_argument("per_chord_targets size does not match chord count");
}

}  // namespace

NewtonResult newton_correct(const TraceMapValue& target, std::vector<double> x0,
                            const std::vector<double>& y_fixed, const Tree& t,
                            const std::vector<Edge>& chords, int v, const HomotopyConfig& cfg) {
  check_config(cfg, chords.size());
  EdgeIndexing idx = EdgeIndexing::for_supergraph(t, chords);
  if (x0.size() != static_cast<size_t>(idx.tree_edge_count))
    throw std::invalid_argument("x0 must hold one weight per tree edge");
  if (y_fixed.size() != chords.size())
    throw std::invalid_argument("y_fixed must hold one weight per chord");
  if (target.size() != static_cast<size_t>(t.n - 1))
    throw std::invalid_argument("target length must be n - 1");

  // the residual is measured per component, relative to the component's own
  // magnitude: trace components of different powers differ by many orders
  // (the r-th scales like |lambda|^(2r)), so a single absolute or max-scaled
  // tolerance either never converges or lets the low-power components drift
  std::vector<double> scales(target.size());
  for (size_t rr = 0; rr < target.size(); ++rr) scales[rr] = std::max(1.0, std::fabs(target[rr]));
  auto scaled_norm = [&](const std::vector<double>& res) {
    double m = 0.0;
    for (size_t rr = 0; rr < res.size(); ++rr) m = std::max(m, std::fabs(res[rr]) / scales[rr]);
    return m;
  };

  auto residual = [&](const std::vector<double>& x) {
    TraceMapValue f = trace_map(matrix_from_weights(idx, concat(x, y_fixed)), v);
    for (size_t r = 0; r < f.size(); ++r) f[r] -= target[r];
    return f;
  };

  std::vector<double> x = std::move(x0);
  std::vector<double> r = residual(x);
  double rnorm = scaled_norm(r);
  int n = t.n;

  for (int iter = 0; iter <= cfg.max_newton_iters; ++iter) {
    if (rnorm <= cfg.newton_tol) return {x, iter, rnorm};
    if (iter == cfg.max_newton_iters) break;

    SkewMatrix m = matrix_from_weights(idx, concat(x, y_fixed));
    Dense j = trace_map_jacobian(m, idx, v);

    // row equilibration: trace rows of different powers differ wildly in scale
    std::vector<double> rowscale(n - 1, 1.0);
    std::vector<double> a = j.data();
    for (int rr = 0; rr < n - 1; ++rr) {
      double s = 0.0;
      for (int c = 0; c < n - 1; ++c) s = std::max(s, std::fabs(a[static_cast<size_t>(rr) * (n - 1) + c]));
      if (s > 0.0) {
        rowscale[rr] = s;
        for (int c = 0; c < n - 1; ++c) a[static_cast<size_t>(rr) * (n - 1) + c] /= s;
      }
    }
    auto lu = lu_factor(n - 1, std::move(a));
    if (lu.singular || lu.min_pivot < 1e-13) {
      std::ostringstream os;
      os << "newton linearization is singular (min pivot " << lu.min_pivot << ")";
      throw std::runtime_error(os.str());
    }
    std::vector<double> rhs(n - 1);
    for (int rr = 0; rr < n - 1; ++rr) rhs[rr] = -r[rr] / rowscale[rr];
    std::vector<double> d = lu.solve(std::move(rhs));

    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt <= cfg.backtrack; ++bt) {
      std::vector<double> x_try = x;
      for (size_t i = 0; i < x.size(); ++i) x_try[i] += step * d[i];
      std::vector<double> r_try = residual(x_try);
      double rn_try = scaled_norm(r_try);
      if (rn_try < rnorm) {
        x = std::move(x_try);
        r = std::move(r_try);
        rnorm = rn_try;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      std::ostringstream os;
      os << "newton stalled after " << cfg.backtrack << " halvings (residual " << rnorm << ")";
      throw std::runtime_error(os.str());
    }
  }
  std::ostringstream os;
  os << "newton diverged: scaled residual " << rnorm << " after " << cfg.max_newton_iters
     << " iterations (tolerance " << cfg.newton_tol << ")";
  throw std::runtime_error(os.str());
}

ExtendResult extend(const SkewMatrix& a, const Tree& t, int v, const std::vector<Edge>& chords,
                    const HomotopyConfig& cfg) {
  if (a.order() != t.n) throw std::invalid_argument("matrix order does not match tree order");
  if (a.nonzero_edges() != t.edges)
    throw std::invalid_argument("matrix sparsity pattern does not match the tree");
  if (v < 1 || v > t.n) throw std::invalid_argument("vertex outside 1.." + std::to_string(t.n));
  check_config(cfg, chords.size());

  EdgeIndexing idx = EdgeIndexing::for_supergraph(t, chords);  // validates the chords
  std::vector<double> targets =
      cfg.per_chord_targets.empty()
          ? std::vector<double>(chords.size(), cfg.epsilon_target)
          : cfg.per_chord_targets;

  ExtendResult result;
  bool trivial = true;
  for (double e : targets)
    if (e != 0.0) trivial = false;
  if (trivial || chords.empty()) {
    result.matrix = a;
    return result;
  }

  TraceMapValue target = trace_map(a, v);
  {
    auto verdict = is_nonsingular(trace_map_jacobian(a, idx, v));
    if (!verdict.nonsingular) {
      std::ostringstream os;
      os << "trace-map jacobian is singular at the base matrix (min pivot " << verdict.min_pivot
         << ")";
      throw std::runtime_error(os.str());
    }
  }

  std::vector<double> x(idx.tree_edge_count);
  for (int l = 0; l < idx.tree_edge_count; ++l)
    x[l] = a.at(idx.edges[l].first, idx.edges[l].second);

  double warn_scale = 10.0 * inf_norm(targets) / cfg.steps;
  // progress is the exact fraction steps_done / den, with den doubled on each
  // halving; accumulating s += ds in doubles drifts below 1.0 after the last
  // planned step and sneaks in a phantom extra one
  long long steps_done = 0;
  long long den = cfg.steps;
  int halvings = 0;
  while (steps_done < den) {
    double s_next = static_cast<double>(steps_done + 1) / static_cast<double>(den);
    std::vector<double> y(targets.size());
    for (size_t c = 0; c < targets.size(); ++c) y[c] = s_next * targets[c];
    try {
      NewtonResult nr = newton_correct(target, x, y, t, chords, v, cfg);
      double dx = 0.0;
      for (size_t i = 0; i < x.size(); ++i) dx = std::max(dx, std::fabs(nr.x[i] - x[i]));
      if (dx > warn_scale) {
        std::ostringstream os;
        os << "homotopy step at s = " << s_next << " moved the weights by " << dx
           << ", above 10x the expected step scale";
        log_info(os.str());
      }
      x = std::move(nr.x);
      result.newton_iterations += nr.iterations;
      result.residual = nr.residual;
      ++result.steps_taken;
      ++steps_done;
    } catch (const std::runtime_error& e) {
      if (++halvings > cfg.backtrack || den > (1LL << 52)) {
        std::ostringstream os;
        os << "homotopy failed at parameter " << s_next << ": " << e.what()
           << "; try a smaller epsilon or more steps";
        throw std::runtime_error(os.str());
      }
      steps_done *= 2;
      den *= 2;
      warn_scale *= 0.5;
    }
  }

  result.matrix = matrix_from_weights(idx, concat(x, targets));
  return result;
}

}  // namespace skewsiep
