#include "skewsiep/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace skewsiep {

namespace {

double coeff_norm(const std::vector<double>& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::fabs(v));
  return m;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

ParityPoly::ParityPoly(std::vector<double> c, Parity p) : coeffs(std::move(c)), parity(p) {
  if (coeffs.empty()) throw std::invalid_argument("empty coefficient list");
  double bound = 1e-12 * coeff_norm(coeffs);
  int forbidden = (parity == Parity::Even) ? 1 : 0;
  for (size_t k = forbidden; k < coeffs.size(); k += 2)
    if (std::fabs(coeffs[k]) > bound)
      throw std::invalid_argument("coefficient at position " + std::to_string(k) +
                                  " breaks the declared parity");
}

double eval_parity(const ParityPoly& p, double t) {
  // Horner in -t^2 over the stored parity positions; odd parity carries one
  // extra factor of t. This is p(it) with the i's collapsed out.
  int start = (p.parity == Parity::Odd) ? 1 : 0;
  int top = p.degree();
  while (top >= 0 && (top - start) % 2 != 0) --top;
  if (top < start) return 0.0;
  double w = -(t * t);
  double acc = p.coeffs[top];
  for (int k = top - 2; k >= start; k -= 2) acc = acc * w + p.coeffs[k];
  return (start == 1) ? acc * t : acc;
}

ParityPoly poly_from_imag_roots(const std::vector<double>& imag_parts) {
  int d = static_cast<int>(imag_parts.size());
  std::vector<double> sorted = imag_parts;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> c{1.0};
  for (int k = 0; k < d / 2; ++k) {
    double lo = sorted[k], hi = sorted[d - 1 - k];
    if (std::fabs(lo + hi) > 1e-9 * std::max(1.0, std::fabs(hi)))
      throw std::invalid_argument("root list is not negation-symmetric");
    c = poly_mul(c, {hi * hi, 0.0, 1.0});
  }
  if (d % 2 == 1) {
    if (std::fabs(sorted[d / 2]) > 1e-9)
      throw std::invalid_argument("odd-length root list needs a zero in the middle");
    c.insert(c.begin(), 0.0);
  }
  return ParityPoly(std::move(c), (d % 2 == 1) ? Parity::Odd : Parity::Even);
}

ResidueSet residues(const SpectrumSpec& spec) {
  auto check = validate(spec);
  if (!check.ok) throw std::invalid_argument("invalid spectrum: " + check.error);
  int n = spec.order();
  ResidueSet out;
  out.c.resize(n - 1);
  for (int k = 0; k < n - 1; ++k) {
    double num = 1.0;
    for (int j = 0; j < n; ++j) num *= spec.mus[k] - spec.lambdas[j];
    double den = 1.0;
    for (int j = 0; j < n - 1; ++j)
      if (j != k) den *= spec.mus[k] - spec.mus[j];
    out.c[k] = -num / den;
  }
  return out;
}

BranchDecomposition branch_decompose(const SpectrumSpec& spec, const BranchPlan& plan) {
  auto rs = residues(spec);
  int n = spec.order();
  int zero_index = (n % 2 == 0) ? (n - 2) / 2 : -1;

  BranchDecomposition out;
  for (const auto& asg : plan.branches) {
    BranchDecompositionEntry entry;
    entry.neighbor = asg.neighbor;
    entry.g_roots = asg.mu_values;

    double y = 0.0;
    for (int idx : asg.mu_indices) y += rs.c[idx];
    entry.y = y;
    if (!(y > 0.0)) {
      std::ostringstream os;
      os << "branch weight y = " << y << " at neighbor " << asg.neighbor
         << " is not positive: numerical breakdown";
      throw std::runtime_error(os.str());
    }

    bool has_zero = false;
    std::vector<std::pair<double, double>> pairs;  // (positive mu, grouped residue c + c')
    for (int idx : asg.mu_indices) {
      if (idx == zero_index) {
        has_zero = true;
      } else if (spec.mus[idx] > 0.0) {
        pairs.emplace_back(spec.mus[idx], rs.c[idx] + rs.c[n - 2 - idx]);
      }
    }

    // y*h = sum over conjugate pairs of (c + c') x g/(x^2+mu^2), plus the
    // assigned zero's c0 g/x. The quotients are rebuilt from the remaining
    // factors instead of divided out.
    int d = static_cast<int>(asg.mu_values.size());
    std::vector<double> accum(d, 0.0);  // degree d-1
    for (size_t r = 0; r < pairs.size(); ++r) {
      std::vector<double> term{pairs[r].second};
      for (size_t s = 0; s < pairs.size(); ++s) {
        if (s == r) continue;
        term = poly_mul(term, {pairs[s].first * pairs[s].first, 0.0, 1.0});
      }
      term = poly_mul(term, has_zero ? std::vector<double>{0.0, 0.0, 1.0}
                                     : std::vector<double>{0.0, 1.0});
      for (size_t k = 0; k < term.size(); ++k) accum[k] += term[k];
    }
    if (has_zero) {
      double c0 = rs.c[zero_index];
      std::vector<double> term{c0};
      for (const auto& [mu, c] : pairs) term = poly_mul(term, {mu * mu, 0.0, 1.0});
      for (size_t k = 0; k < term.size(); ++k) accum[k] += term[k];
    }

    if (d >= 2 && std::fabs(accum[d - 1] - y) > 1e-9 * std::fabs(y))
      throw std::runtime_error("branch numerator leading coefficient disagrees with y: breakdown");

    if (d >= 2) {
      for (double& v : accum) v /= y;
      accum[d - 1] = 1.0;  // monic by construction, clamp roundoff
      ParityPoly h(std::move(accum), (d - 1) % 2 == 0 ? Parity::Even : Parity::Odd);
      std::vector<std::pair<double, double>> brackets;
      for (int k = 0; k + 1 < d; ++k) brackets.emplace_back(entry.g_roots[k], entry.g_roots[k + 1]);
      entry.h_roots = roots_by_bisection(h, brackets);
    }
    out.branches.push_back(std::move(entry));
  }
  return out;
}

std::vector<double> roots_by_bisection(const ParityPoly& h,
                                       const std::vector<std::pair<double, double>>& brackets) {
  std::vector<double> roots;
  roots.reserve(brackets.size());
  for (auto [lo, hi] : brackets) {
    if (!(lo < hi)) throw std::invalid_argument("bracket endpoints out of order");
    double flo = eval_parity(h, lo);
    double fhi = eval_parity(h, hi);
    if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) == (fhi < 0.0)) {
      std::ostringstream os;
      os << "no sign change in bracket [" << lo << ", " << hi << "]: numerical breakdown";
      throw std::runtime_error(os.str());
    }
    double width_tol = std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() *
                                           std::max(std::fabs(lo), std::fabs(hi)));
    while (hi - lo > width_tol) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // interval at floating resolution
      double fmid = eval_parity(h, mid);
      if (fmid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fmid < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

}  // namespace skewsiep
