#include "skewsiep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace skewsiep {

namespace {

// distinctness and symmetry tolerances share the same scale
constexpr double kTieTolFactor = 1e-9;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

SpectrumSpec SpectrumSpec::from_positive(const std::vector<double>& lambda_pos,
                                         const std::vector<double>& mu_pos) {
  size_t m = lambda_pos.size();
  bool odd_order;
  if (mu_pos.size() == m)
    odd_order = true;  // the zero sits among the lambdas
  else if (m >= 1 && mu_pos.size() == m - 1)
    odd_order = false;
  else
    throw std::invalid_argument("positive-half sizes must satisfy |mu_pos| in {|lambda_pos|-1, |lambda_pos|}");

  auto mirror = [](const std::vector<double>& pos, bool with_zero) {
    std::vector<double> full;
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) full.push_back(-*it);
    if (with_zero) full.push_back(0.0);
    for (double v : pos) full.push_back(v);
    return full;
  };

  SpectrumSpec spec;
  spec.lambdas = mirror(lambda_pos, odd_order);
  spec.mus = mirror(mu_pos, !odd_order);
  return spec;
}

double spectrum_scale(const SpectrumSpec& spec) {
  double m = 0.0;
  for (double v : spec.lambdas) m = std::max(m, std::fabs(v));
  return std::max(1.0, m);
}

SpectrumCheck validate(const SpectrumSpec& spec) {
  SpectrumCheck out;
  int n = spec.order();
  if (n < 1) {
    out.error = "lambda list is empty";
    return out;
  }
  if (static_cast<int>(spec.mus.size()) != n - 1) {
    out.error = "size mismatch: |mu| must be |lambda| - 1";
    return out;
  }
  double tol = kTieTolFactor * spectrum_scale(spec);

  // strict interlacing lambda_1 < mu_1 < lambda_2 < ... < mu_{n-1} < lambda_n,
  // with gaps below tol treated as ties
  for (int k = 0; k < n - 1; ++k) {
    if (spec.mus[k] - spec.lambdas[k] < tol) {
      out.error = "lambda[" + std::to_string(k + 1) + "] < mu[" + std::to_string(k + 1) +
                  "] violated: " + num(spec.lambdas[k]) + " vs " + num(spec.mus[k]);
      return out;
    }
    if (spec.lambdas[k + 1] - spec.mus[k] < tol) {
      out.error = "mu[" + std::to_string(k + 1) + "] < lambda[" + std::to_string(k + 2) +
                  "] violated: " + num(spec.mus[k]) + " vs " + num(spec.lambdas[k + 1]);
      return out;
    }
  }

  for (int j = 0; j < n; ++j) {
    double drift = std::fabs(spec.lambdas[j] + spec.lambdas[n - 1 - j]);
    if (drift > tol) {
      out.error = "lambda[" + std::to_string(j + 1) + "] = -lambda[" + std::to_string(n - j) +
                  "] violated: " + num(spec.lambdas[j]) + " vs " + num(spec.lambdas[n - 1 - j]);
      return out;
    }
  }
  for (int k = 0; k < n - 1; ++k) {
    double drift = std::fabs(spec.mus[k] + spec.mus[n - 2 - k]);
    if (drift > tol) {
      out.error = "mu[" + std::to_string(k + 1) + "] = -mu[" + std::to_string(n - 1 - k) +
                  "] violated: " + num(spec.mus[k]) + " vs " + num(spec.mus[n - 2 - k]);
      return out;
    }
  }
  out.ok = true;
  return out;
}

BranchPlan plan_branches(const SpectrumSpec& spec,
                         const std::vector<std::pair<int, int>>& branch_sizes) {
  auto check = validate(spec);
  if (!check.ok) throw std::invalid_argument("invalid spectrum: " + check.error);
  int n = spec.order();

  int total = 0;
  int odd = 0;
  for (auto [neighbor, size] : branch_sizes) {
    if (size < 1) throw std::invalid_argument("branch size must be positive");
    total += size;
    odd += size % 2;
  }
  if (total != n - 1)
    throw std::invalid_argument("branch sizes sum to " + std::to_string(total) + ", expected " +
                                std::to_string(n - 1));
  int expected_odd = (n % 2 == 0) ? 1 : 0;
  if (odd != expected_odd)
    throw std::invalid_argument("branch size parity mismatch (" + std::to_string(odd) +
                                " odd branches, expected " + std::to_string(expected_odd) +
                                "): the tree is not NEB at the root");

  // positive mus ascending occupy the top half of the sorted list
  int pairs_total = (n - 1) / 2;
  int zero_index = (n % 2 == 0) ? (n - 2) / 2 : -1;

  std::vector<std::pair<int, int>> order = branch_sizes;
  std::sort(order.begin(), order.end());

  BranchPlan plan;
  int next_pair = 0;  // 0-based among positive mus, smallest first
  for (auto [neighbor, size] : order) {
    BranchAssignment asg;
    asg.neighbor = neighbor;
    int pairs = size / 2;
    std::vector<double> pos;
    for (int p = 0; p < pairs; ++p) {
      int pos_index = (n - 1) - pairs_total + next_pair;  // into spec.mus
      ++next_pair;
      asg.mu_indices.push_back(n - 2 - pos_index);  // the mirrored partner
      asg.mu_indices.push_back(pos_index);
      pos.push_back(spec.mus[pos_index]);
    }
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) asg.mu_values.push_back(-*it);
    if (size % 2 == 1) {
      asg.mu_indices.push_back(zero_index);
      asg.mu_values.push_back(0.0);
    }
    for (double v : pos) asg.mu_values.push_back(v);
    std::sort(asg.mu_indices.begin(), asg.mu_indices.end());
    plan.branches.push_back(std::move(asg));
  }
  return plan;
}

}  // namespace skewsiep
