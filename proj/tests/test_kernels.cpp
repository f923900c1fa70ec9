#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynr/kernels.hpp"
#include "dynr/series.hpp"
#include "oracles.hpp"

using namespace dynr;

namespace {
const cplx kTau{0, 0.75};
const ModularParams P = ModularParams::make(kTau, 0.05);

cplx sample(SampleRng& r, double d = 0.1) { return oracle::cell_point(r, kTau, d, lattice_distance); }

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }
}  // namespace

TEST_CASE("primal basis: pole part theta(l) (-1)^j j! z^{-j-1}") {
  const cplx l(0.31, 0.12);
  const auto e = basis_L_lambda(l, 8, P);
  REQUIRE(e.size() == 8);
  for (int j = 0; j < 8; ++j) {
    CHECK(e[j].pole_order() == j + 1);
    CHECK(e[j].order_valid() >= 8);
    const double sign = j % 2 ? -1.0 : 1.0;
    CHECK(std::abs(e[j].coeff(-j - 1) - sign * factorial(j) * theta(l, P)) < 1e-12 * factorial(j));
  }
  const auto z = basis_L0(6, P);
  CHECK(std::abs(z[0].coeff(-1) - 1.0) < 1e-14);
}

TEST_CASE("primal Laurent coefficients agree with values of theta(l+z)/theta(z) on a small circle") {
  const cplx l(-0.2, 0.27);
  const auto e = basis_L_lambda(l, 4, P);
  // F(z) = theta(l+z)/theta(z); its Laurent coefficient of z^k equals (1/2 pi i) oint F z^{-k-1}
  for (int k = -1; k <= 6; ++k) {
    const cplx c = oracle::contour_residue(
        [&](cplx z) { return theta(l + z, P) / theta(z, P) * std::pow(z, -k - 1); }, 0.3);
    CHECK(oracle::rel(e[0].coeff(k), c) < 1e-12);
  }
}

TEST_CASE("dual basis pairs to the identity, also by contour quadrature") {
  for (int s = 0; s < 10; ++s) {
    SampleRng r(42, "dual", s);
    const cplx l = sample(r);
    const KernelBasis b = dual_basis(Sector::at(l), 12, P);
    CHECK(duality_deviation(b) < 1e-9);
    CHECK(b.condition < kMaxDualCondition);
    if (s < 2) {
      // <e^i, e_j> = res_0(e^i e_j) with e_j evaluated from theta derivatives on |z| = 0.25
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          const cplx v = oracle::contour_residue(
              [&](cplx z) { return b.dual[i].evaluate(z) * evaluate_primal(b.sector, z, 6, P)[j]; }, 0.25, 128);
          CHECK(std::abs(v - (i == j ? 1.0 : 0.0)) < 1e-9);
        }
    }
  }
  const KernelBasis z = dual_basis(Sector::zero(), 12, P);
  CHECK(duality_deviation(z) < 1e-12);
}

TEST_CASE("dual elements are (-1)^i z^i / (i! theta(l))") {
  const cplx l(0.14, -0.2);
  const KernelBasis b = dual_basis(Sector::at(l), 6, P);
  for (int i = 0; i < 6; ++i) {
    const double sign = i % 2 ? -1.0 : 1.0;
    CHECK(oracle::rel(b.dual[i].coeff(i), sign / (factorial(i) * theta(l, P))) < 1e-12);
    for (int m = 0; m < 6 + kDualGuardColumns; ++m)
      if (m != i) CHECK(std::abs(b.dual[i].coeff(m)) < 1e-12);
  }
}

TEST_CASE("N = 1 duality") {
  const KernelBasis b = dual_basis(Sector::at({0.3, 0.1}), 1, P);
  CHECK(duality_deviation(b) < 1e-12);
}

TEST_CASE("kernel sums reproduce the theta-ratio kernels") {
  for (int s = 0; s < 20; ++s) {
    SampleRng r(42, "kernel", s);
    const cplx z = sample(r), l = sample(r);
    if (lattice_distance(z + l, kTau) < 0.05) continue;
    CHECK(kernel_sum_residual(Sector::at(l), z, 12, P) < 1e-8);
    CHECK(kernel_sum_residual(Sector::zero(), z, 12, P) < 1e-8);
  }
}

TEST_CASE("kernel right-hand side against contour coefficients in w") {
  const cplx z(0.33, 0.21), l(-0.18, 0.1);
  const auto rhs = kernel_rhs_taylor(Sector::at(l), z, 8, P);
  const double r = 0.75 * lattice_distance(z, kTau);
  const auto c = oracle::cauchy_coeffs([&](cplx w) { return theta(z - w + l, P) / (theta(z - w, P) * theta(l, P)); }, 7, r, 256);
  for (int k = 0; k < 8; ++k) CHECK(oracle::rel(rhs[k], c[k]) < 1e-11);
  const auto rz = kernel_rhs_taylor(Sector::zero(), z, 8, P);
  const auto cz = oracle::cauchy_coeffs([&](cplx w) { return log_deriv(z - w, P); }, 7, r, 256);
  for (int k = 0; k < 8; ++k) CHECK(oracle::rel(rz[k], cz[k]) < 1e-11);
}

TEST_CASE("near-lattice lambda is rejected as ill-conditioned") {
  for (cplx l : {cplx(1e-7, 0), cplx(1e-7, 0) + kTau, cplx(1.0 - 1e-7, 0)}) {
    try {
      dual_basis(Sector::at(l), 12, P);
      FAIL("expected a conditioning error");
    } catch (const ConditioningError& e) {
      CHECK(e.condition() > kMaxDualCondition);
    }
  }
  CHECK_THROWS_AS(dual_basis(Sector::at(0.0), 4, P), DomainError);
  CHECK_THROWS_AS(dual_basis(Sector::at({0.3, 0.1}), 0, P), CapabilityError);
}

TEST_CASE("projection onto L_{-mu} along regular series") {
  const cplx mu(0.23, -0.15);
  const auto e = basis_L_lambda(-mu, 6, P);
  // eps = 2 e_0 - 0.5i e_2 + a regular polynomial
  const LaurentSeries reg = LaurentSeries::polynomial({1.0, cplx(0, 2), -3.0});
  const LaurentSeries eps = 2.0 * e[0] + cplx(0, -0.5) * e[2] + reg;
  const Projection pr = project_minus(eps, mu, 6, P);
  CHECK(std::abs(pr.weights[0] - 2.0) < 1e-12);
  CHECK(std::abs(pr.weights[1]) < 1e-12);
  CHECK(std::abs(pr.weights[2] - cplx(0, -0.5)) < 1e-12);
  CHECK(pr.rho.pole_order() == 0);
  for (int k = 0; k <= 2; ++k) CHECK(std::abs(pr.rho.coeff(k) - reg.coeff(k)) < 1e-11);
  // pi + rho reconstructs eps
  for (int k = -3; k <= 5; ++k) CHECK(std::abs((pr.pi + pr.rho).coeff(k) - eps.coeff(k)) < 1e-11);

  // idempotence: projecting pi again leaves nothing regular
  const Projection again = project_minus(pr.pi, mu, 6, P);
  for (int k = 0; k <= 5; ++k) CHECK(std::abs(again.rho.coeff(k)) < 1e-10);

  // regular input is its own remainder
  const Projection r0 = project_minus(reg, mu, 6, P);
  CHECK(r0.pi.is_zero());
  CHECK(r0.rho.coeff(1) == cplx(0, 2));

  CHECK_THROWS_AS(project_minus(LaurentSeries::monomial(1.0, -7), mu, 6, P), CapabilityError);
}

TEST_CASE("evaluate_primal matches the Laurent basis away from the origin") {
  const cplx l(0.3, 0.1), z(0.12, 0.05);
  const auto vals = evaluate_primal(Sector::at(l), z, 4, P);
  const auto e = basis_L_lambda(l, 4, P);
  for (int i = 0; i < 4; ++i) CHECK(oracle::rel(vals[i], e[i].evaluate(z)) < 1e-8);
}
