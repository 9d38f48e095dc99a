#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "focklab/expm.hpp"
#include "focklab/fock.hpp"
#include "focklab/ladder.hpp"
#include "focklab/states.hpp"

namespace focklab {

struct VerificationReport {
  std::string identity_name;
  int n_levels = 0;
  int interior = 0;   // interior-block size used for the comparison
  double param = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;   // abs_dev / max interior entry of the reference side
  double threshold = 0.0;
  bool passed = false;
};

namespace detail {

inline VerificationReport make_report(std::string name, FockDim dim, int keep, double param,
                                      const MatC& reference, const MatC& other, double threshold) {
  VerificationReport rep;
  rep.identity_name = std::move(name);
  rep.n_levels = dim.n_levels;
  rep.interior = keep;
  rep.param = param;
  rep.abs_dev = interior_deviation(reference, other, keep);
  const double scale = max_abs<double>(interior_block(reference, keep).eval());
  rep.rel_dev = scale > 0.0 ? rep.abs_dev / scale : rep.abs_dev;
  rep.threshold = threshold;
  rep.passed = rep.rel_dev <= threshold;
  return rep;
}

inline VerificationReport worse_of(VerificationReport a, const VerificationReport& b) {
  if (b.rel_dev > a.rel_dev) return b;
  a.passed = a.passed && b.passed;
  return a;
}

}  // namespace detail

/// Interior size for identities that conjugate by the squeeze operator.
///
/// Squeezing scales number support by e^{2|r|}, so a column n of the
/// truncated exponential is only faithful while n e^{2|r|} stays well inside
/// N.  A fixed fraction of that scaled range isolates the edge.
inline int squeeze_interior(FockDim dim, double r) {
  const int keep = static_cast<int>(0.35 * dim.n_levels * std::exp(-2.0 * std::abs(r)));
  return std::clamp(keep, 4, dim.n_levels / 2);
}

/// S^dag a S = mu a - nu a^dag and S^dag X S = e^{-r} X, checked on the
/// interior block against the generic matrix exponential of the generator.
inline VerificationReport verify_bogoliubov(double r, FockDim dim, double threshold = 1e-8,
                                            double expm_tol = 1e-13) {
  if (std::abs(r) > 1.5)
    throw truncation_error("verify_bogoliubov: |r| > 1.5 needs more than 256 levels");
  const MatC s = squeeze_operator(r, dim, SqueezeForm::exponential, expm_tol);
  const MatC a = annihilation(dim);
  auto [mu, nu] = mu_nu(r);
  const int keep = squeeze_interior(dim, r);

  const MatC lhs_a = s.adjoint() * a * s;
  const MatC rhs_a = mu * a - nu * a.adjoint();
  VerificationReport rep =
      detail::make_report("bogoliubov", dim, keep, r, lhs_a, rhs_a, threshold);

  const MatC x = quadrature_x(dim);
  const MatC lhs_x = s.adjoint() * x * s;
  const MatC rhs_x = std::exp(-r) * x;
  return detail::worse_of(rep, detail::make_report("bogoliubov", dim, keep, r, lhs_x, rhs_x, threshold));
}

/// Ordered factorization of the squeeze operator versus its exponential form.
inline VerificationReport verify_squeeze_factorization(double r, FockDim dim,
                                                       double threshold = 1e-8,
                                                       double expm_tol = 1e-13) {
  const MatC expo = squeeze_operator(r, dim, SqueezeForm::exponential, expm_tol);
  const MatC fact = squeeze_operator(r, dim, SqueezeForm::factored);
  const int keep = squeeze_interior(dim, r);
  return detail::make_report("squeeze_factorization", dim, keep, r, expo, fact, threshold);
}

/// e^{-g a} (a^dag)^k e^{g a} = (a^dag - g)^k for k = 1..degree.
/// interior_keep = 0 picks N/2; explicit values are capped below N - degree,
/// where the raising monomial is not yet clipped.
inline VerificationReport verify_shift_identity(double gamma, int degree, FockDim dim,
                                                double threshold = 1e-8, int interior_keep = 0,
                                                double expm_tol = 1e-13) {
  if (degree < 1 || degree > 6)
    throw std::invalid_argument("verify_shift_identity: degree must be in 1..6");
  const MatC a = annihilation(dim);
  const MatC ad = a.adjoint();
  const MatC left = matrix_exponential<double>((-gamma * a).eval(), expm_tol);
  const MatC right = matrix_exponential<double>((gamma * a).eval(), expm_tol);
  const MatC shifted = ad - gamma * MatC::Identity(dim.n_levels, dim.n_levels);
  const int keep = interior_keep > 0 ? std::min(interior_keep, dim.n_levels - degree - 2)
                                     : dim.n_levels / 2;

  MatC lhs_pow = MatC::Identity(dim.n_levels, dim.n_levels);
  MatC rhs_pow = lhs_pow;
  VerificationReport worst;
  worst.rel_dev = -1.0;
  for (int k = 1; k <= degree; ++k) {
    lhs_pow = (lhs_pow * ad).eval();
    rhs_pow = (rhs_pow * shifted).eval();
    const MatC lhs = left * lhs_pow * right;
    auto rep = detail::make_report("shift_identity", dim, keep, gamma, lhs, rhs_pow, threshold);
    if (rep.rel_dev > worst.rel_dev) worst = rep;
  }
  return worst;
}

/// e^{f n_op} a^2 e^{-f n_op} = e^{-2f} a^2.
inline VerificationReport verify_similarity_scaling(double f, FockDim dim,
                                                    double threshold = 1e-8,
                                                    int interior_keep = 0,
                                                    double expm_tol = 1e-13) {
  if (std::abs(f) > 1.0)
    throw std::invalid_argument("verify_similarity_scaling: |f| must be <= 1");
  const MatC a = annihilation(dim);
  const MatC a2 = a * a;
  const MatC n = number_operator(dim);
  const MatC lhs = matrix_exponential<double>((f * n).eval(), expm_tol) * a2 *
                   matrix_exponential<double>((-f * n).eval(), expm_tol);
  const MatC rhs = std::exp(-2.0 * f) * a2;
  const int keep = interior_keep > 0 ? interior_keep : dim.n_levels / 2;
  return detail::make_report("similarity_scaling", dim, keep, f, lhs, rhs, threshold);
}

/// e^{-(r/2) a^2 + r n_op} = e^{r n_op} e^{((1-e^{2r})/4) a^2}, the ordered
/// product found by integrating the factor ODEs.
inline VerificationReport verify_disentangle(double r, FockDim dim, double threshold = 1e-8,
                                             double expm_tol = 1e-13) {
  if (std::abs(r) > 0.75)
    throw truncation_error("verify_disentangle: |r| > 0.75 overflows the diagonal factor");
  const MatC a = annihilation(dim);
  const MatC gen = (-(r / 2.0) * (a * a) + r * number_operator(dim)).eval();
  const MatC direct = matrix_exponential<double>(gen, expm_tol);
  const double g = (1.0 - std::exp(2.0 * r)) / 4.0;
  const MatC fact = diagonal_power(std::exp(r), dim) * exp_lowering2(Complex(g, 0.0), dim);
  return detail::make_report("disentangle", dim, dim.n_levels / 2, r, direct, fact, threshold);
}

struct VariantAdjudication {
  VerificationReport report;      // the winning variant's report
  std::string winner;             // "derived" or "textbook"
  double rel_dev_textbook = 0.0;  // coefficient (1-e^{2r})/4
  double rel_dev_derived = 0.0;   // coefficient (1-e^{-2r})/4
};

/// Adjudicates the two candidate coefficients for the mirrored ordering
/// e^{(r/2) a^2 - r n_op} = e^{-r n_op} e^{g(r) a^2}: the textbook candidate
/// g = (1-e^{2r})/4 versus the r -> -r substitution of the derived result,
/// g = (1-e^{-2r})/4.
inline VariantAdjudication verify_disentangle_variant(double r, FockDim dim,
                                                      double threshold = 1e-8,
                                                      double expm_tol = 1e-13) {
  if (std::abs(r) > 0.75)
    throw truncation_error("verify_disentangle_variant: |r| > 0.75 overflows the diagonal factor");
  const MatC a = annihilation(dim);
  const MatC gen = ((r / 2.0) * (a * a) - r * number_operator(dim)).eval();
  const MatC direct = matrix_exponential<double>(gen, expm_tol);
  const MatC diag = diagonal_power(std::exp(-r), dim);
  const double g_textbook = (1.0 - std::exp(2.0 * r)) / 4.0;
  const double g_derived = (1.0 - std::exp(-2.0 * r)) / 4.0;
  const int keep = dim.n_levels / 2;
  auto rep_textbook = detail::make_report(
      "disentangle_variant", dim, keep, r, direct,
      (diag * exp_lowering2(Complex(g_textbook, 0.0), dim)).eval(), threshold);
  auto rep_derived = detail::make_report(
      "disentangle_variant", dim, keep, r, direct,
      (diag * exp_lowering2(Complex(g_derived, 0.0), dim)).eval(), threshold);
  VariantAdjudication adj;
  adj.rel_dev_textbook = rep_textbook.rel_dev;
  adj.rel_dev_derived = rep_derived.rel_dev;
  if (rep_derived.rel_dev <= rep_textbook.rel_dev) {
    adj.winner = "derived";
    adj.report = rep_derived;
  } else {
    adj.winner = "textbook";
    adj.report = rep_textbook;
  }
  return adj;
}

/// Fixed-step RK4 integration of the factor ODEs f' = 1, g' = -e^{2f}/2 from
/// 0 to r_max; returns (f, g).  Closed forms: f = r, g = (1-e^{2r})/4.
inline std::pair<double, double> integrate_disentangle_ode(double r_max, double step) {
  if (!(step > 0.0) || step > 1e-2)
    throw std::invalid_argument("integrate_disentangle_ode: step must be in (0, 1e-2]");
  if (!(r_max >= 0.0) || r_max > 2.0)
    throw std::invalid_argument("integrate_disentangle_ode: r_max must be in [0, 2]");
  double f = 0.0, g = 0.0, t = 0.0;
  auto slope_g = [](double fv) { return -0.5 * std::exp(2.0 * fv); };
  while (t < r_max) {
    const double h = std::min(step, r_max - t);
    // f' = 1 integrates exactly; RK4 stages only matter for g
    const double k1 = slope_g(f);
    const double k2 = slope_g(f + h / 2.0);
    const double k3 = k2;
    const double k4 = slope_g(f + h);
    g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    f += h;
    t += h;
  }
  return {f, g};
}

}  // namespace focklab
