#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "focklab/analytics.hpp"
#include "focklab/fock.hpp"
#include "focklab/hermite.hpp"
#include "focklab/states.hpp"

namespace focklab {

// Studies accept states whose truncation leak would fail the strict builder
// guard; rows record the leak instead (norm_check) and mark whether the row
// still sits inside the trusted regime.
inline constexpr double kStudyGuardTol = 1e-2;
inline constexpr double kRowTrustTol = 1e-8;

struct LimitStudyRow {
  double r = 0.0;
  double center_x = 0.0;            // <x_op> of the state
  double fidelity_to_target = 0.0;  // against the study's reference state
  double norm_check = 0.0;          // norm of the constructed vector
  bool guard_ok = false;            // norm deficit within kRowTrustTol
};

/// <x_op> with x_op = (a + a^dag)/sqrt2, normalized by the state's norm.
inline double position_center(const VecC& v) {
  const int n = static_cast<int>(v.size());
  Complex acc = 0.0;
  for (int k = 0; k + 1 < n; ++k)
    acc += std::conj(v[k]) * std::sqrt(double(k + 1)) * v[k + 1];
  return 2.0 * acc.real() / std::sqrt(2.0) / v.squaredNorm();
}

/// Displace-then-squeeze states at fixed x across r: the center collapses as
/// e^{-r} x while the overlap with the x-independent limit expression stays
/// constant, which is the precise content of that limit's failure.
inline std::vector<LimitStudyRow> yuen_limit_study(double x, const std::vector<double>& r_list,
                                                   FockDim dim) {
  std::vector<LimitStudyRow> rows;
  rows.reserve(r_list.size());
  for (double r : r_list) {
    VecC v;
    try {
      v = yuen_state(Complex(x / std::sqrt(2.0), 0.0), r, dim, kStudyGuardTol);
    } catch (const truncation_error& e) {
      throw truncation_error("yuen_limit_study at r=" + std::to_string(r) + ": " + e.what());
    }
    const VecC target = yuen_limit_state(r, dim);
    LimitStudyRow row;
    row.r = r;
    row.center_x = position_center(v);
    row.fidelity_to_target = fidelity(v, target);
    row.norm_check = v.norm();
    row.guard_ok = std::abs(1.0 - v.squaredNorm()) <= kRowTrustTol;
    rows.push_back(row);
  }
  return rows;
}

/// Squeeze-then-displace states at fixed x across r: the center stays at x
/// and the fidelity to the normalized truncated position kernel grows with r
/// until truncation takes over (guard_ok marks the trusted rows).
inline std::vector<LimitStudyRow> caves_limit_study(double x, const std::vector<double>& r_list,
                                                    FockDim dim) {
  const VecC target = normalize(position_eigenstate(x, dim));
  std::vector<LimitStudyRow> rows;
  rows.reserve(r_list.size());
  for (double r : r_list) {
    VecC v;
    try {
      v = caves_state(Complex(x / std::sqrt(2.0), 0.0), r, dim, kStudyGuardTol);
    } catch (const truncation_error& e) {
      throw truncation_error("caves_limit_study at r=" + std::to_string(r) + ": " + e.what());
    }
    LimitStudyRow row;
    row.r = r;
    row.center_x = position_center(v);
    row.fidelity_to_target = fidelity(v, target);
    row.norm_check = v.norm();
    row.guard_ok = std::abs(1.0 - v.squaredNorm()) <= kRowTrustTol;
    rows.push_back(row);
  }
  return rows;
}

/// |<state(x1) | state(x2)>| in displace-then-squeeze order; unitarity makes
/// this e^{-(x1-x2)^2/4}, independent of r.
inline double yuen_pairwise_overlap(double x1, double x2, double r, FockDim dim) {
  const VecC a = yuen_state(Complex(x1 / std::sqrt(2.0), 0.0), r, dim, kStudyGuardTol);
  const VecC b = yuen_state(Complex(x2 / std::sqrt(2.0), 0.0), r, dim, kStudyGuardTol);
  return std::abs(inner_product(a, b)) / (a.norm() * b.norm());
}

struct ResidualRow {
  double x = 0.0;
  Complex probe_beta;
  double weak_residual = 0.0;  // |<beta| (x_op - x) |x>_N|
};

/// Weak eigenvalue residuals of the position kernel against coherent probes.
/// The hard cutoff makes (x_op - x)|x>_N exactly -sqrt(N/2) psi_N(x) |N-1>,
/// so coherent probes suppress the residual factorially.
inline std::vector<ResidualRow> weak_eigenvalue_check(double x, const std::vector<Complex>& beta_list,
                                                      FockDim dim) {
  const VecC pos = position_eigenstate(x, dim);
  const MatC xop = std::sqrt(2.0) * quadrature_x(FockDim(dim.n_levels));
  const VecC defect = (xop * pos - x * pos).eval();
  std::vector<ResidualRow> rows;
  rows.reserve(beta_list.size());
  for (Complex beta : beta_list) {
    const VecC probe = coherent_state(beta, dim);
    rows.push_back({x, beta, std::abs(inner_product(probe, defect))});
  }
  return rows;
}

/// ||(x_op - x) v|| / ||v|| for the truncated kernel; O(1) by construction
/// (the boundary term sqrt(N/2) psi_N against a norm growing only like
/// N^{1/4}), reported but never asserted small.
inline double strong_residual(double x, FockDim dim) {
  const VecC pos = position_eigenstate(x, dim);
  const MatC xop = std::sqrt(2.0) * quadrature_x(dim);
  return (xop * pos - x * pos).norm() / pos.norm();
}

/// Reproducing kernel sum_{n<N} psi_n(x') psi_n(x) along a grid of x'.
inline std::vector<std::pair<double, double>> localization_profile(
    double x, const std::vector<double>& x_prime_grid, FockDim dim) {
  const VectorR<double> base = hermite_functions(x, dim.n_levels);
  std::vector<std::pair<double, double>> out;
  out.reserve(x_prime_grid.size());
  for (double xp : x_prime_grid) {
    const VectorR<double> other = hermite_functions(xp, dim.n_levels);
    out.emplace_back(xp, base.dot(other));
  }
  return out;
}

}  // namespace focklab
