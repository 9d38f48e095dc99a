#pragma once

#include <cmath>
#include <numbers>

#include "focklab/fock.hpp"

namespace focklab {

/// Harmonic-oscillator eigenfunctions psi_0(x) .. psi_{count-1}(x).
///
/// Uses the normalized recurrence
///   psi_n = x sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2},
/// seeded with psi_0 = pi^{-1/4} exp(-x^2/2); factorials never appear, so the
/// evaluation stays finite for any n.
template <class Real = double>
VectorR<Real> hermite_functions(Real x, int count) {
  if (count < 1) throw std::invalid_argument("hermite_functions: count must be >= 1");
  VectorR<Real> psi(count);
  const Real quarter_root_pi = std::pow(std::numbers::pi_v<Real>, Real(-0.25));
  psi[0] = quarter_root_pi * std::exp(-x * x / Real(2));
  if (count > 1) psi[1] = std::sqrt(Real(2)) * x * psi[0];
  for (int n = 2; n < count; ++n)
    psi[n] = x * std::sqrt(Real(2) / Real(n)) * psi[n - 1] -
             std::sqrt(Real(n - 1) / Real(n)) * psi[n - 2];
  return psi;
}

}  // namespace focklab
