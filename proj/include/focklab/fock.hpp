#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace focklab {

template <class Real>
using MatrixC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Real>
using VectorC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <class Real>
using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using MatC = MatrixC<double>;
using VecC = VectorC<double>;

/// Raised when a requested state or operator does not fit the truncated basis.
class truncation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size of the truncated number basis |0>..|N-1>.
struct FockDim {
  int n_levels;
  explicit FockDim(int n) : n_levels(n) {
    if (n < 2) throw std::invalid_argument("FockDim: n_levels must be >= 2");
  }
};

struct Tolerances {
  double expm_tol = 1e-13;
  double compare_tol = 0.0;  // 0 means: use per-check defaults
  int interior_buffer = 0;   // 0 means: n_levels/4 at point of use

  void validate(FockDim dim) const {
    if (!(expm_tol > 0.0)) throw std::invalid_argument("Tolerances: expm_tol must be positive");
    if (compare_tol < 0.0) throw std::invalid_argument("Tolerances: compare_tol must be >= 0");
    if (interior_buffer < 0 || 2 * interior_buffer > dim.n_levels)
      throw std::invalid_argument("Tolerances: interior_buffer out of range");
  }
};

// --- operator builders -------------------------------------------------

template <class Real = double>
MatrixC<Real> annihilation(FockDim dim) {
  const int n = dim.n_levels;
  MatrixC<Real> a = MatrixC<Real>::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(Real(k));
  return a;
}

template <class Real = double>
MatrixC<Real> creation(FockDim dim) {
  return annihilation<Real>(dim).adjoint();
}

/// Number operator, built as the exact diagonal (0, 1, ..., N-1).
template <class Real = double>
MatrixC<Real> number_operator(FockDim dim) {
  const int n = dim.n_levels;
  MatrixC<Real> m = MatrixC<Real>::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = Real(k);
  return m;
}

template <class Real = double>
MatrixC<Real> quadrature_x(FockDim dim) {
  MatrixC<Real> a = annihilation<Real>(dim);
  return ((a + a.adjoint()) / Real(2)).eval();
}

template <class Real = double>
MatrixC<Real> quadrature_y(FockDim dim) {
  MatrixC<Real> a = annihilation<Real>(dim);
  const std::complex<Real> half_over_i(Real(0), Real(-0.5));
  return (half_over_i * (a - a.adjoint())).eval();
}

// --- state-vector primitives -------------------------------------------

inline void check_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

/// Sesquilinear inner product, conjugate-linear in the first argument.
template <class Real = double>
std::complex<Real> inner_product(const VectorC<Real>& u, const VectorC<Real>& v) {
  check_same_dim(u.size(), v.size(), "inner_product");
  return u.dot(v);
}

template <class Real = double>
Real norm_of(const VectorC<Real>& v) {
  return v.norm();
}

template <class Real = double>
bool is_normalized(const VectorC<Real>& v) {
  return std::abs(v.norm() - Real(1)) <= Real(1e-12);
}

template <class Real = double>
VectorC<Real> normalize(const VectorC<Real>& v) {
  const Real n = v.norm();
  if (!(n > Real(0))) throw std::invalid_argument("normalize: zero-norm vector");
  return v / n;
}

/// |<u|v>|^2 / (|u|^2 |v|^2); 1 exactly when u and v are parallel.
template <class Real = double>
Real fidelity(const VectorC<Real>& u, const VectorC<Real>& v) {
  check_same_dim(u.size(), v.size(), "fidelity");
  const Real nu = u.squaredNorm(), nv = v.squaredNorm();
  if (!(nu > Real(0)) || !(nv > Real(0)))
    throw std::invalid_argument("fidelity: zero-norm vector");
  const std::complex<Real> ip = u.dot(v);
  return std::norm(ip) / (nu * nv);
}

template <class Real = double>
VectorC<Real> apply(const MatrixC<Real>& op, const VectorC<Real>& v) {
  check_same_dim(op.cols(), v.size(), "apply");
  return op * v;
}

// --- interior-block comparison helpers ----------------------------------

template <class Real = double>
MatrixC<Real> interior_block(const MatrixC<Real>& m, int keep) {
  if (keep < 1 || keep > m.rows() || keep > m.cols())
    throw std::invalid_argument("interior_block: keep out of range");
  return m.topLeftCorner(keep, keep);
}

template <class Real = double>
Real max_abs(const MatrixC<Real>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// Max-entry deviation between the keep x keep top-left blocks.
template <class Real = double>
Real interior_deviation(const MatrixC<Real>& a, const MatrixC<Real>& b, int keep) {
  check_same_dim(a.rows(), b.rows(), "interior_deviation");
  check_same_dim(a.cols(), b.cols(), "interior_deviation");
  return max_abs<Real>((interior_block(a, keep) - interior_block(b, keep)).eval());
}

}  // namespace focklab
