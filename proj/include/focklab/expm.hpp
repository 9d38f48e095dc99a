#pragma once

#include <cmath>
#include <stdexcept>

#include "focklab/fock.hpp"

namespace focklab {

/// Raised when the scaling/series truncation bound cannot be met.
class expm_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
template <class Real>
Real one_norm(const MatrixC<Real>& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}
}  // namespace detail

/// Dense matrix exponential by scaling and squaring of a Taylor series.
///
/// The matrix is scaled by 2^-s so its 1-norm is at most 1/2, the series is
/// summed until the remainder bound sum_{j>k} theta^j/j! drops below tol,
/// and the result is squared s times.  exp(0) is the identity exactly.
template <class Real = double>
MatrixC<Real> matrix_exponential(const MatrixC<Real>& a, double tol = 1e-13) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: matrix not square");
  if (!(tol > 0.0)) throw std::invalid_argument("matrix_exponential: tol must be positive");
  if (!a.allFinite()) throw expm_error("matrix_exponential: non-finite input");

  const Eigen::Index n = a.rows();
  const Real eta = detail::one_norm(a);
  if (eta == Real(0)) return MatrixC<Real>::Identity(n, n);

  const Real theta = Real(0.5);
  int squarings = 0;
  if (eta > theta) squarings = static_cast<int>(std::ceil(std::log2(double(eta / theta))));
  if (squarings > 64) throw expm_error("matrix_exponential: scaling bound cannot be met");

  const MatrixC<Real> b = a / Real(std::ldexp(1.0, squarings));

  MatrixC<Real> term = MatrixC<Real>::Identity(n, n);
  MatrixC<Real> sum = term;
  // tail_k = theta^{k+1}/(k+1)!, a bound on the dropped series remainder
  // up to the geometric factor 1/(1 - theta/(k+2)) < 2 absorbed below.
  double tail = double(theta);
  bool converged = false;
  constexpr int max_terms = 48;
  for (int k = 1; k <= max_terms; ++k) {
    term = (term * b) / Real(k);
    sum += term;
    tail *= double(theta) / (k + 1);
    if (2.0 * tail <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw expm_error("matrix_exponential: series bound cannot be met");

  for (int i = 0; i < squarings; ++i) sum = (sum * sum).eval();
  return sum;
}

}  // namespace focklab
