#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "focklab/expm.hpp"
#include "focklab/fock.hpp"
#include "focklab/hermite.hpp"
#include "focklab/ladder.hpp"

namespace focklab {

/// (cosh r, sinh r) with the squeeze-parameter guard applied.
inline std::pair<double, double> mu_nu(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("mu_nu: r must be finite");
  if (std::abs(r) > 5.0)
    throw std::invalid_argument("mu_nu: |r| > 5 is outside the supported range");
  return {std::cosh(r), std::sinh(r)};
}

namespace detail {

// log of the last retained coherent amplitude, e^{-|a|^2/2} |a|^{N-1}/sqrt((N-1)!)
inline double coherent_tail_log(double alpha_abs, int n_levels) {
  if (alpha_abs == 0.0) return -std::numeric_limits<double>::infinity();
  return -alpha_abs * alpha_abs / 2.0 + (n_levels - 1) * std::log(alpha_abs) -
         0.5 * std::lgamma(double(n_levels));
}

inline void check_coherent_guard(Complex alpha, FockDim dim, const char* what) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw std::invalid_argument(std::string(what) + ": alpha must be finite");
  // mean population must sit well below the cutoff, and the last retained
  // amplitude must already be negligible
  if (std::norm(alpha) > dim.n_levels / 2.0 ||
      coherent_tail_log(std::abs(alpha), dim.n_levels) >= std::log(1e-12))
    throw truncation_error(std::string(what) +
                           ": |alpha| too large for n_levels (tail above 1e-12)");
}

inline void check_squeeze_guard(double r, FockDim dim, const char* what) {
  auto [mu, nu] = mu_nu(r);
  (void)mu;
  if (nu * nu > dim.n_levels / 8.0)
    throw truncation_error(std::string(what) + ": sinh^2(r) too large for n_levels");
}

inline void check_state_norm(const VecC& v, double guard_tol, const char* what) {
  const double deficit = std::abs(1.0 - v.squaredNorm());
  if (deficit > guard_tol)
    throw truncation_error(std::string(what) + ": truncation leaks " + std::to_string(deficit) +
                           " of the norm (guard " + std::to_string(guard_tol) + ")");
}

inline VecC vacuum(FockDim dim) {
  VecC v = VecC::Zero(dim.n_levels);
  v[0] = 1.0;
  return v;
}

}  // namespace detail

/// Coherent state |alpha> as the truncated series sum_n alpha^n/sqrt(n!) |n>.
inline VecC coherent_state(Complex alpha, FockDim dim) {
  detail::check_coherent_guard(alpha, dim, "coherent_state");
  const int n = dim.n_levels;
  VecC v(n);
  v[0] = 1.0;
  for (int k = 1; k < n; ++k) v[k] = v[k - 1] * alpha / std::sqrt(double(k));
  v *= std::exp(-std::norm(alpha) / 2.0);
  return v;
}

enum class DisplacementForm { exponential, antinormal };

/// Glauber displacement operator, either exp(alpha a^dag - alpha* a) or the
/// antinormally ordered product e^{|alpha|^2/2} e^{-alpha* a} e^{alpha a^dag}.
/// The ordered product multiplies factors with entries far above the unitary
/// result, so it is accumulated in extended precision.
inline MatC displacement_operator(Complex alpha, FockDim dim,
                                  DisplacementForm form = DisplacementForm::exponential) {
  detail::check_coherent_guard(alpha, dim, "displacement_operator");
  if (form == DisplacementForm::exponential) {
    const MatC a = annihilation(dim);
    return matrix_exponential<double>((alpha * a.adjoint() - std::conj(alpha) * a).eval());
  }
  using LD = long double;
  const std::complex<LD> al(alpha.real(), alpha.imag());
  const MatrixC<LD> low = exp_lowering<LD>(-std::conj(al), dim);
  const MatrixC<LD> up = exp_raising<LD>(al, dim);
  const MatrixC<LD> prod =
      (std::exp(std::norm(al) / (LD)2.0) * (low * up)).eval();
  MatC out(dim.n_levels, dim.n_levels);
  for (int j = 0; j < dim.n_levels; ++j)
    for (int i = 0; i < dim.n_levels; ++i)
      out(i, j) = Complex(double(prod(i, j).real()), double(prod(i, j).imag()));
  return out;
}

enum class SqueezeForm { exponential, factored };

/// Squeeze operator S(r) = exp[(a^2 - a^dag^2) r/2], or its ordered
/// factorization (1/sqrt(mu)) e^{-(nu/2mu) a^dag^2} mu^{-n_op} e^{(nu/2mu) a^2}.
inline MatC squeeze_operator(double r, FockDim dim, SqueezeForm form = SqueezeForm::exponential,
                             double expm_tol = 1e-13) {
  detail::check_squeeze_guard(r, dim, "squeeze_operator");
  auto [mu, nu] = mu_nu(r);
  if (form == SqueezeForm::exponential) {
    const MatC a = annihilation(dim);
    const MatC a2 = a * a;
    return matrix_exponential<double>(((a2 - a2.adjoint()) * (r / 2.0)).eval(), expm_tol);
  }
  const Complex up_coeff(-nu / (2.0 * mu), 0.0);
  const Complex low_coeff(nu / (2.0 * mu), 0.0);
  MatC out = exp_raising2(up_coeff, dim) * diagonal_power(1.0 / mu, dim);
  out = out * exp_lowering2(low_coeff, dim);
  return out / std::sqrt(mu);
}

/// Squeezed state in displace-then-squeeze order: S(r) D(alpha) |0>.
///
/// Built by pushing the factored squeeze through the coherent series, which
/// reproduces the untruncated amplitudes up to the retained level.
inline VecC yuen_state(Complex alpha, double r, FockDim dim, double guard_tol = 1e-8) {
  detail::check_coherent_guard(alpha, dim, "yuen_state");
  detail::check_squeeze_guard(r, dim, "yuen_state");
  auto [mu, nu] = mu_nu(r);
  const double c = nu / (2.0 * mu);
  VecC v = coherent_state(alpha, dim);
  v = apply_exp_lowering2(Complex(c, 0.0), v);
  double p = 1.0;
  for (int k = 0; k < dim.n_levels; ++k) {
    v[k] *= p;
    p /= mu;
  }
  v = apply_exp_raising2(Complex(-c, 0.0), v);
  v /= std::sqrt(mu);
  detail::check_state_norm(v, guard_tol, "yuen_state");
  return v;
}

/// Amplitude map between the two orderings: alpha' = mu alpha - nu alpha*.
inline Complex caves_amplitude(Complex alpha, double r) {
  auto [mu, nu] = mu_nu(r);
  return mu * alpha - nu * std::conj(alpha);
}

/// Squeezed state in squeeze-then-displace order: D(alpha') S(r) |0>.
///
/// Evaluated in closed normal-ordered form.  Commuting the lowering part of
/// D through e^{c a^dag^2} with the shift rule e^{-g a} f(a^dag) e^{g a} =
/// f(a^dag - g) leaves only raising exponentials on the vacuum:
///   D(a') S(r)|0> = mu^{-1/2} e^{-|a'|^2/2 + c conj(a')^2}
///                   e^{(a' - 2 c conj(a')) a^dag} e^{c a^dag^2} |0>,
/// with c = -nu/(2 mu).  The effective raising coefficient never exceeds
/// 2|a'|, so the series stays well conditioned at large squeezing.
inline VecC caves_state(Complex alpha_prime, double r, FockDim dim, double guard_tol = 1e-8) {
  detail::check_coherent_guard(alpha_prime, dim, "caves_state");
  detail::check_squeeze_guard(r, dim, "caves_state");
  auto [mu, nu] = mu_nu(r);
  const Complex c(-nu / (2.0 * mu), 0.0);
  const Complex ac = std::conj(alpha_prime);
  VecC v = apply_exp_raising2(c, detail::vacuum(dim));
  v = apply_exp_raising(alpha_prime - 2.0 * c * ac, v);
  v *= std::exp(-std::norm(alpha_prime) / 2.0 + c * ac * ac) / std::sqrt(mu);
  detail::check_state_norm(v, guard_tol, "caves_state");
  return v;
}

/// Finite-r closed form of the squeezed-then-displaced state at position x:
/// mu^{-1/2} exp[-(x^2/4)(1+nu/mu)] exp[-(nu/2mu) a^dag^2 + (x/sqrt2)(1+nu/mu) a^dag] |0>.
inline VecC caves_closed_form_state(double x, double r, FockDim dim, double guard_tol = 1e-8) {
  if (!std::isfinite(x)) throw std::invalid_argument("caves_closed_form_state: x must be finite");
  detail::check_squeeze_guard(r, dim, "caves_closed_form_state");
  auto [mu, nu] = mu_nu(r);
  const double ratio = 1.0 + nu / mu;
  // the two terms in the exponent commute, so the factors may be applied in turn
  VecC v = apply_exp_raising2(Complex(-nu / (2.0 * mu), 0.0), detail::vacuum(dim));
  v = apply_exp_raising(Complex(x / std::sqrt(2.0) * ratio, 0.0), v);
  v *= std::exp(-(x * x / 4.0) * ratio) / std::sqrt(mu);
  detail::check_state_norm(v, guard_tol, "caves_closed_form_state");
  return v;
}

/// The x-independent large-squeezing expression: normalized e^{-(nu/2mu) a^dag^2} |0>.
inline VecC yuen_limit_state(double r, FockDim dim) {
  detail::check_squeeze_guard(r, dim, "yuen_limit_state");
  auto [mu, nu] = mu_nu(r);
  VecC v = apply_exp_raising2(Complex(-nu / (2.0 * mu), 0.0), detail::vacuum(dim));
  return normalize(v);
}

enum class PositionForm { hermite, operator_on_vacuum, coherent };

/// Truncated position-eigenstate approximant, intentionally UNNORMALIZED:
/// amplitude n is exactly psi_n(x).
///
/// Three equivalent constructions: the Hermite-function series; the operator
/// pi^{-1/4} e^{-x^2/2} exp(-a^dag^2/2 + sqrt2 x a^dag) applied to the vacuum
/// (one generic matrix exponential, no ordering steps); and
/// pi^{-1/4} e^{x^2/2} e^{-a^dag^2/2} |sqrt2 x>.  The coherent form is summed
/// in extended precision: its alternating series loses about five digits at
/// |x| = 2 in plain double.
inline VecC position_eigenstate(double x, FockDim dim, PositionForm form = PositionForm::hermite) {
  if (!std::isfinite(x)) throw std::invalid_argument("position_eigenstate: x must be finite");
  const int n = dim.n_levels;
  const double quarter_root_pi = std::pow(std::numbers::pi, -0.25);
  switch (form) {
    case PositionForm::hermite: {
      VectorR<double> psi = hermite_functions(x, n);
      return psi.cast<Complex>();
    }
    case PositionForm::operator_on_vacuum: {
      const MatC ad = creation(dim);
      const MatC gen = (-0.5 * (ad * ad) + std::sqrt(2.0) * x * ad).eval();
      const MatC e = matrix_exponential<double>(gen);
      return quarter_root_pi * std::exp(-x * x / 2.0) * e.col(0);
    }
    case PositionForm::coherent: {
      using LD = long double;
      const LD beta = std::sqrt((LD)2.0) * (LD)x;
      detail::check_coherent_guard(Complex(double(beta), 0.0), dim, "position_eigenstate");
      VectorC<LD> v(n);
      v[0] = std::exp(-beta * beta / (LD)2.0);
      for (int k = 1; k < n; ++k) v[k] = v[k - 1] * beta / std::sqrt((LD)k);
      v = apply_exp_raising2<LD>(std::complex<LD>((LD)-0.5, (LD)0.0), v);
      const LD scale = std::exp((LD)x * (LD)x / (LD)2.0) * std::pow(std::numbers::pi_v<LD>, (LD)-0.25);
      VecC out(n);
      for (int k = 0; k < n; ++k) out[k] = Complex(double(scale * v[k].real()), double(scale * v[k].imag()));
      return out;
    }
  }
  throw std::invalid_argument("position_eigenstate: unknown form");
}

/// Momentum counterpart, fixed by the weak-eigenvalue oracle for
/// p_op = (a - a^dag)/(i sqrt2): amplitude n is i^n psi_n(p), equivalently
/// pi^{-1/4} e^{-p^2/2} exp(+a^dag^2/2 + i sqrt2 p a^dag) |0>.  UNNORMALIZED.
inline VecC momentum_eigenstate(double p, FockDim dim) {
  if (!std::isfinite(p)) throw std::invalid_argument("momentum_eigenstate: p must be finite");
  const int n = dim.n_levels;
  VectorR<double> psi = hermite_functions(p, n);
  static const Complex phase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  VecC v(n);
  for (int k = 0; k < n; ++k) v[k] = phase[k % 4] * psi[k];
  return v;
}

}  // namespace focklab
