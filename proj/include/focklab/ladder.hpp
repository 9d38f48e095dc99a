#pragma once

#include <cmath>
#include <complex>

#include "focklab/fock.hpp"

namespace focklab {

// Exponentials of pure raising/lowering monomials have closed-form matrix
// elements (the generators are nilpotent on the truncated basis), so they can
// be evaluated entrywise without any matrix products.  These serve as the
// factored counterparts to the generic matrix_exponential route.

/// exp(c a^dag): entry (m+k, m) = c^k sqrt((m+k)!/m!) / k!
template <class Real = double>
MatrixC<Real> exp_raising(std::complex<Real> c, FockDim dim) {
  const int n = dim.n_levels;
  MatrixC<Real> out = MatrixC<Real>::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    std::complex<Real> term(Real(1), Real(0));
    out(m, m) = term;
    for (int k = 1; m + k < n; ++k) {
      term *= c * std::sqrt(Real(m + k)) / Real(k);
      out(m + k, m) = term;
    }
  }
  return out;
}

/// exp(c a): entry (m, m+k) = c^k sqrt((m+k)!/m!) / k!
template <class Real = double>
MatrixC<Real> exp_lowering(std::complex<Real> c, FockDim dim) {
  return exp_raising<Real>(std::conj(c), dim).adjoint();
}

/// exp(c a^dag^2): entry (m+2k, m) = c^k sqrt((m+2k)!/m!) / k!
template <class Real = double>
MatrixC<Real> exp_raising2(std::complex<Real> c, FockDim dim) {
  const int n = dim.n_levels;
  MatrixC<Real> out = MatrixC<Real>::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    std::complex<Real> term(Real(1), Real(0));
    out(m, m) = term;
    for (int k = 1; m + 2 * k < n; ++k) {
      term *= c * std::sqrt(Real(m + 2 * k) * Real(m + 2 * k - 1)) / Real(k);
      out(m + 2 * k, m) = term;
    }
  }
  return out;
}

/// exp(c a^2)
template <class Real = double>
MatrixC<Real> exp_lowering2(std::complex<Real> c, FockDim dim) {
  return exp_raising2<Real>(std::conj(c), dim).adjoint();
}

/// base^{n_op} = diag(1, base, base^2, ...)
template <class Real = double>
MatrixC<Real> diagonal_power(Real base, FockDim dim) {
  const int n = dim.n_levels;
  MatrixC<Real> out = MatrixC<Real>::Zero(n, n);
  Real p = Real(1);
  for (int k = 0; k < n; ++k) {
    out(k, k) = p;
    p *= base;
  }
  return out;
}

// Vector appliers: same closed forms contracted against a state, O(N^2).

template <class Real = double>
VectorC<Real> apply_exp_raising(std::complex<Real> c, const VectorC<Real>& v) {
  const int n = static_cast<int>(v.size());
  VectorC<Real> out(n);
  for (int m = 0; m < n; ++m) {
    std::complex<Real> acc = v[m];
    std::complex<Real> term(Real(1), Real(0));
    for (int k = 1; k <= m; ++k) {
      term *= c * std::sqrt(Real(m - k + 1)) / Real(k);
      acc += term * v[m - k];
    }
    out[m] = acc;
  }
  return out;
}

template <class Real = double>
VectorC<Real> apply_exp_lowering(std::complex<Real> c, const VectorC<Real>& v) {
  const int n = static_cast<int>(v.size());
  VectorC<Real> out(n);
  for (int m = 0; m < n; ++m) {
    std::complex<Real> acc = v[m];
    std::complex<Real> term(Real(1), Real(0));
    for (int k = 1; m + k < n; ++k) {
      term *= c * std::sqrt(Real(m + k)) / Real(k);
      acc += term * v[m + k];
    }
    out[m] = acc;
  }
  return out;
}

template <class Real = double>
VectorC<Real> apply_exp_raising2(std::complex<Real> c, const VectorC<Real>& v) {
  const int n = static_cast<int>(v.size());
  VectorC<Real> out(n);
  for (int m = 0; m < n; ++m) {
    std::complex<Real> acc = v[m];
    std::complex<Real> term(Real(1), Real(0));
    for (int k = 1; m - 2 * k >= 0; ++k) {
      term *= c * std::sqrt(Real(m - 2 * k + 2) * Real(m - 2 * k + 1)) / Real(k);
      acc += term * v[m - 2 * k];
    }
    out[m] = acc;
  }
  return out;
}

template <class Real = double>
VectorC<Real> apply_exp_lowering2(std::complex<Real> c, const VectorC<Real>& v) {
  const int n = static_cast<int>(v.size());
  VectorC<Real> out(n);
  for (int m = 0; m < n; ++m) {
    std::complex<Real> acc = v[m];
    std::complex<Real> term(Real(1), Real(0));
    for (int k = 1; m + 2 * k < n; ++k) {
      term *= c * std::sqrt(Real(m + 2 * k) * Real(m + 2 * k - 1)) / Real(k);
      acc += term * v[m + 2 * k];
    }
    out[m] = acc;
  }
  return out;
}

}  // namespace focklab
