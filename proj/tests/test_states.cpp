#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "focklab/expm.hpp"
#include "focklab/fock.hpp"
#include "focklab/hermite.hpp"
#include "focklab/states.hpp"

using namespace focklab;

namespace {

// the slow route everything else is checked against: exp of the full
// displacement/squeeze generators applied to |0>
VecC yuen_expm_route(Complex alpha, double r, FockDim dim) {
  const MatC s = squeeze_operator(r, dim, SqueezeForm::exponential);
  const MatC d = displacement_operator(alpha, dim, DisplacementForm::exponential);
  VecC vac = VecC::Zero(dim.n_levels);
  vac[0] = 1.0;
  return s * (d * vac);
}

VecC caves_expm_route(Complex alpha_prime, double r, FockDim dim) {
  const MatC s = squeeze_operator(r, dim, SqueezeForm::exponential);
  const MatC d = displacement_operator(alpha_prime, dim, DisplacementForm::exponential);
  VecC vac = VecC::Zero(dim.n_levels);
  vac[0] = 1.0;
  return d * (s * vac);
}

// raw three-term recurrence H_{n+1} = 2x H_n - 2n H_{n-1}; fine for small n
std::vector<double> hermite_polynomials(double x, int count) {
  std::vector<double> h(count);
  h[0] = 1.0;
  if (count > 1) h[1] = 2.0 * x;
  for (int n = 1; n + 1 < count; ++n) h[n + 1] = 2.0 * x * h[n] - 2.0 * n * h[n - 1];
  return h;
}

constexpr double kQuarterRootPi = 0.75112554446494248;

}  // namespace

TEST_CASE("mu_nu") {
  auto [mu0, nu0] = mu_nu(0.0);
  CHECK(mu0 == 1.0);
  CHECK(nu0 == 0.0);

  auto [mu1, nu1] = mu_nu(1.0);
  CHECK(mu1 == doctest::Approx(1.5430806348152437).epsilon(1e-14));
  CHECK(nu1 == doctest::Approx(1.1752011936438014).epsilon(1e-14));

  auto [mu, nu] = mu_nu(0.7);
  CHECK(std::abs((mu - nu) - std::exp(-0.7)) < 1e-14);

  std::mt19937 rng(19);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double r = dist(rng);
    auto [m, n] = mu_nu(r);
    CHECK(std::abs(m * m - n * n - 1.0) < 1e-12 * m * m);
    CHECK(m >= 1.0);
  }
  CHECK_THROWS_AS(mu_nu(5.5), std::invalid_argument);
  CHECK_THROWS_AS(mu_nu(std::nan("")), std::invalid_argument);
}

TEST_CASE("coherent state") {
  const FockDim dim(64);
  const VecC vac = coherent_state(Complex(0.0, 0.0), dim);
  CHECK(std::abs(vac[0] - 1.0) < 1e-15);
  CHECK(vac.tail(63).norm() == 0.0);

  const VecC one = coherent_state(Complex(1.0, 0.0), dim);
  CHECK(std::abs(one[0] - std::exp(-0.5)) < 1e-15);
  CHECK(std::abs(one.norm() - 1.0) <= 1e-12);

  // eigenvector residual ||(a - 0.8)|alpha>||
  const VecC v = coherent_state(Complex(0.8, 0.0), dim);
  const MatC a = annihilation(dim);
  CHECK((a * v - 0.8 * v).norm() <= 1e-10);

  CHECK_THROWS_AS(coherent_state(Complex(10.0, 0.0), FockDim(16)), truncation_error);
  CHECK_THROWS_AS(coherent_state(Complex(5.0, 0.0), FockDim(16)), truncation_error);
}

TEST_CASE("displacement operator forms") {
  const FockDim dim(64);
  const MatC id = MatC::Identity(64, 64);
  CHECK(max_abs<double>((displacement_operator(Complex(0, 0), dim) - id).eval()) < 1e-14);
  CHECK(max_abs<double>(
            (displacement_operator(Complex(0, 0), dim, DisplacementForm::antinormal) - id)
                .eval()) < 1e-14);

  VecC vac = VecC::Zero(64);
  vac[0] = 1.0;
  const VecC displaced = displacement_operator(Complex(1.0, 0.0), dim) * vac;
  CHECK((displaced - coherent_state(Complex(1.0, 0.0), dim)).cwiseAbs().maxCoeff() < 1e-10);

  // the two orderings agree away from the truncation edge
  const FockDim dim96(96);
  const MatC de = displacement_operator(Complex(1.2, 0.0), dim96, DisplacementForm::exponential);
  const MatC da = displacement_operator(Complex(1.2, 0.0), dim96, DisplacementForm::antinormal);
  CHECK(interior_deviation(de, da, 48) <= 1e-9);

  // unitary on the interior block
  const MatC gram = de.adjoint() * de;
  CHECK(max_abs<double>((interior_block(gram, 48) - MatC::Identity(48, 48)).eval()) < 1e-12);
}

TEST_CASE("squeeze operator forms") {
  const FockDim dim(64);
  const MatC id = MatC::Identity(64, 64);
  CHECK(max_abs<double>((squeeze_operator(0.0, dim, SqueezeForm::exponential) - id).eval()) <
        1e-14);
  CHECK(max_abs<double>((squeeze_operator(0.0, dim, SqueezeForm::factored) - id).eval()) < 1e-14);

  const MatC s = squeeze_operator(0.5, dim, SqueezeForm::exponential);
  VecC vac = VecC::Zero(64);
  vac[0] = 1.0;
  const VecC sv = s * vac;
  CHECK(std::abs(sv.norm() - 1.0) <= 1e-8);
  for (int n = 1; n < 64; n += 2) CHECK(std::abs(sv[n]) <= 1e-14);  // pair creation only

  // vacuum matrix element of the ordered factorization is 1/sqrt(mu)
  CHECK(std::abs(s(0, 0) - 1.0 / std::sqrt(std::cosh(0.5))) < 1e-10);

  // the two forms agree on spread-aware interiors for |r| <= 1
  for (double r : {-1.0, -0.5, 0.25, 0.5, 1.0}) {
    const FockDim d128(128);
    const MatC lhs = squeeze_operator(r, d128, SqueezeForm::exponential);
    const MatC rhs = squeeze_operator(r, d128, SqueezeForm::factored);
    const int keep = static_cast<int>(0.35 * 128 * std::exp(-2.0 * std::abs(r)));
    const double scale = max_abs<double>(interior_block(lhs, keep).eval());
    CHECK(interior_deviation(lhs, rhs, keep) / scale <= 1e-9);
  }

  CHECK_THROWS_AS(squeeze_operator(2.0, FockDim(16)), truncation_error);
}

TEST_CASE("yuen state") {
  const FockDim dim(128);
  const Complex alpha(1.0, 0.0);

  // r = 0 reduces to the coherent state
  CHECK((yuen_state(alpha, 0.0, dim) - coherent_state(alpha, dim)).norm() < 1e-12);

  // alpha = 0 is the squeezed vacuum
  const VecC sv = yuen_state(Complex(0, 0), 0.5, dim);
  const MatC s = squeeze_operator(0.5, dim, SqueezeForm::exponential);
  VecC vac = VecC::Zero(128);
  vac[0] = 1.0;
  CHECK(fidelity<double>(sv, (s * vac).eval()) >= 1.0 - 1e-10);

  CHECK(std::abs(yuen_state(alpha, 0.5, dim).norm() - 1.0) <= 1e-8);

  // <X> = e^{-r} (alpha + alpha*)/2
  const VecC y = yuen_state(alpha, 0.5, dim);
  const MatC x = quadrature_x(dim);
  CHECK(std::abs(y.dot(x * y).real() - std::exp(-0.5)) <= 1e-8);

  // against the generic-exponential route at moderate parameters
  const VecC via_expm = yuen_expm_route(alpha, 0.5, dim);
  CHECK(fidelity(y, via_expm) >= 1.0 - 1e-12);
}

TEST_CASE("caves amplitude map") {
  CHECK(std::abs(caves_amplitude(Complex(0.7, 0.0), 0.9) - Complex(std::exp(-0.9) * 0.7, 0.0)) <
        1e-14);
  // alpha = i flips the sign of the conjugate term: alpha' = i(mu + nu) = i e^r
  const Complex ap = caves_amplitude(Complex(0.0, 1.0), 1.0);
  CHECK(std::abs(ap - Complex(0.0, std::exp(1.0))) < 1e-14);
  CHECK(std::abs(ap - Complex(0.0, 2.718281828459045)) < 1e-9);
}

TEST_CASE("yuen and caves orderings agree through the amplitude map") {
  const FockDim dim(128);
  const double r = 0.8;
  const Complex alpha(1.0, 0.0);
  const VecC y = yuen_state(alpha, r, dim);
  const VecC c = caves_state(caves_amplitude(alpha, r), r, dim);
  CHECK(fidelity(y, c) >= 1.0 - 1e-10);
  CHECK(std::abs(caves_amplitude(alpha, r).real() - std::exp(-r)) < 1e-14);
}

TEST_CASE("caves state against the operator-product route") {
  const FockDim dim(96);
  const Complex ap(0.9, 0.4);
  const double r = 0.6;
  const VecC closed = caves_state(ap, r, dim);
  const VecC product = caves_expm_route(ap, r, dim);
  CHECK(fidelity(closed, product) >= 1.0 - 1e-10);
  CHECK((closed - product).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(closed.norm() - 1.0) <= 1e-8);
}

TEST_CASE("caves closed-form state") {
  const FockDim dim(128);

  // r = 0, x = 0 is the vacuum
  const VecC vac = caves_closed_form_state(0.0, 0.0, dim);
  CHECK(std::abs(vac[0] - 1.0) < 1e-14);

  // r = 0, x = 1 collapses to a displaced vacuum
  const VecC disp = caves_closed_form_state(1.0, 0.0, dim);
  CHECK((disp - coherent_state(Complex(1.0 / std::sqrt(2.0), 0.0), dim)).cwiseAbs().maxCoeff() <
        1e-12);

  // finite-r closed form matches both construction routes
  const VecC cf = caves_closed_form_state(1.0, 1.0, dim);
  CHECK(std::abs(cf.norm() - 1.0) <= 1e-6);
  CHECK(fidelity(cf, caves_state(Complex(1.0 / std::sqrt(2.0), 0.0), 1.0, dim)) >= 1.0 - 1e-8);
  CHECK(fidelity(cf, caves_expm_route(Complex(1.0 / std::sqrt(2.0), 0.0), 1.0, dim)) >=
        1.0 - 1e-8);
}

TEST_CASE("large-squeezing limit expression is x-independent by construction") {
  const FockDim dim(128);
  const VecC l0 = yuen_limit_state(0.0, dim);
  CHECK(std::abs(l0[0] - 1.0) < 1e-14);

  const VecC l1 = yuen_limit_state(1.0, dim);
  CHECK(std::abs(l1.norm() - 1.0) < 1e-12);
  for (int n = 1; n < 128; n += 2) CHECK(std::abs(l1[n]) <= 1e-14);

  const MatC s = squeeze_operator(1.0, dim, SqueezeForm::exponential);
  VecC vac = VecC::Zero(128);
  vac[0] = 1.0;
  CHECK(fidelity<double>(l1, normalize((s * vac).eval())) >= 1.0 - 1e-8);
}

TEST_CASE("position kernel: values at x = 0") {
  const FockDim dim(64);
  const VecC v = position_eigenstate(0.0, dim);
  CHECK(std::abs(v[0].real() - kQuarterRootPi) < 1e-12);
  CHECK(std::abs(v[0].real() - std::pow(std::numbers::pi, -0.25)) < 1e-15);
  for (int n = 1; n < 64; n += 2) CHECK(std::abs(v[n]) == 0.0);
  // H_2(0) = -2 pins the sign and scale of amplitude 2
  CHECK(v[2].real() == doctest::Approx(-kQuarterRootPi / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("position kernel matches the raw Hermite-polynomial sum for small n") {
  const FockDim dim(16);
  for (double x : {0.0, 0.5, 1.0, -1.3}) {
    const VecC v = position_eigenstate(x, dim);
    const auto h = hermite_polynomials(x, 10);
    for (int n = 0; n < 10; ++n) {
      const double norm =
          std::sqrt(std::pow(2.0, n) * std::sqrt(std::numbers::pi) * std::tgamma(n + 1.0));
      const double expected = h[n] * std::exp(-x * x / 2.0) / norm;
      CHECK(std::abs(v[n].real() - expected) < 1e-13);
    }
  }
}

TEST_CASE("position kernel: three forms agree elementwise") {
  const FockDim dim(64);
  for (double x : {0.0, 1.0, -1.0, 2.0, -2.0}) {
    const VecC h = position_eigenstate(x, dim, PositionForm::hermite);
    const VecC op = position_eigenstate(x, dim, PositionForm::operator_on_vacuum);
    const VecC coh = position_eigenstate(x, dim, PositionForm::coherent);
    CHECK((h - op).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((h - coh).cwiseAbs().maxCoeff() <= 1e-10);
  }
  // the coherent form carries its own displacement guard
  CHECK_THROWS_AS(position_eigenstate(6.0, FockDim(16), PositionForm::coherent),
                  truncation_error);
}

TEST_CASE("momentum kernel") {
  const FockDim dim(64);

  // p = 0: position amplitudes with an i^n phase ladder
  const VecC m0 = momentum_eigenstate(0.0, dim);
  const VecC x0 = position_eigenstate(0.0, dim);
  for (int n = 0; n < 64; ++n) {
    const int mod = n % 4;
    if (mod == 0) CHECK(std::abs(m0[n] - x0[n]) < 1e-15);
    if (mod == 2) CHECK(std::abs(m0[n] + x0[n]) < 1e-15);
    if (mod % 2 == 1) CHECK(std::abs(m0[n]) == 0.0);
  }

  // operator-on-vacuum route: pi^{-1/4} e^{-p^2/2} exp(a^dag^2/2 + i sqrt2 p a^dag)|0>
  for (double p : {0.0, 0.7}) {
    const MatC ad = creation(dim);
    const MatC gen = (0.5 * (ad * ad) + Complex(0.0, std::sqrt(2.0) * p) * ad).eval();
    const VecC via_op = std::pow(std::numbers::pi, -0.25) * std::exp(-p * p / 2.0) *
                        matrix_exponential<double>(gen).col(0);
    CHECK((momentum_eigenstate(p, dim) - via_op).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("momentum kernel against the Fourier-transform oracle") {
  // <n|p> must equal (2 pi)^{-1/2} integral psi_n(x) e^{ipx} dx = i^n psi_n(p);
  // Simpson quadrature over [-12, 12] supplies the independent value.
  const FockDim dim(16);
  const double a = -12.0, b = 12.0;
  const int pairs = 2400;
  const double h = (b - a) / (2 * pairs);
  for (double p : {0.0, 0.7}) {
    const VecC mom = momentum_eigenstate(p, dim);
    for (int n : {0, 1, 2, 5, 8}) {
      Complex acc = 0.0;
      for (int k = 0; k <= 2 * pairs; ++k) {
        const double x = a + k * h;
        const double w = (k == 0 || k == 2 * pairs) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        const double psi = hermite_functions(x, n + 1)[n];
        acc += w * psi * std::exp(Complex(0.0, p * x));
      }
      acc *= h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
      CHECK(std::abs(acc - mom[n]) < 1e-8);
    }
  }
}

TEST_CASE("momentum-position overlap grows with the basis size") {
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const FockDim dim(n);
    const double overlap =
        std::abs(inner_product(momentum_eigenstate(0.0, dim), position_eigenstate(0.0, dim)));
    CHECK(overlap > prev);
    prev = overlap;
  }
}
