#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynr/dybe.hpp"
#include "dynr/rmatrix.hpp"
#include "dynr/series.hpp"
#include "oracles.hpp"

using namespace dynr;
using Mat = Eigen::Matrix4cd;

namespace {
const cplx kTau{0, 0.75};
const ModularParams P = ModularParams::make(kTau, 0.05);

// E_{ab} on C^2 with v1 -> index 0, v-1 -> index 1
Eigen::Matrix2cd E(int a, int b) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(a == 1 ? 0 : 1, b == 1 ? 0 : 1) = 1.0;
  return m;
}

Mat kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Mat m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

// Six-vertex matrices assembled from E_ij (x) E_kl with product-formula theta values.
struct Oracle {
  cplx tau;
  cplx th(cplx x) const { return oracle::theta_product(x, tau); }
  Mat r_minus(cplx z, cplx l, cplx g) const {
    const cplx w = th(z) / th(z + g);
    return kron(E(1, 1), E(1, 1)) + kron(E(-1, -1), E(-1, -1)) + w * kron(E(1, 1), E(-1, -1)) +
           th(l - g) * th(l + g) / (th(l) * th(l)) * w * kron(E(-1, -1), E(1, 1)) +
           th(z + l) * th(g) / (th(z + g) * th(l)) * kron(E(1, -1), E(-1, 1)) -
           th(z - l) * th(g) / (th(z + g) * th(l)) * kron(E(-1, 1), E(1, -1));
  }
  Mat r_plus(cplx z, cplx l, cplx g) const {
    const cplx w = th(z) / th(z - g);
    return kron(E(1, 1), E(1, 1)) + kron(E(-1, -1), E(-1, -1)) + th(l - g) * th(l + g) / (th(l) * th(l)) * w * kron(E(1, 1), E(-1, -1)) +
           w * kron(E(-1, -1), E(1, 1)) - th(z + l) * th(g) / (th(z - g) * th(l)) * kron(E(1, -1), E(-1, 1)) +
           th(z - l) * th(g) / (th(z - g) * th(l)) * kron(E(-1, 1), E(1, -1));
  }
  Mat r_bar(cplx z, cplx l, cplx g) const {
    return kron(E(1, 1), E(1, 1)) + kron(E(-1, -1), E(-1, -1)) + th(l + g) * th(z) / (th(l) * th(z - g)) * kron(E(1, 1), E(-1, -1)) +
           th(l - g) * th(z) / (th(l) * th(z - g)) * kron(E(-1, -1), E(1, 1)) -
           th(l + z) * th(g) / (th(l) * th(z - g)) * kron(E(1, -1), E(-1, 1)) -
           th(-l + z) * th(g) / (th(-l) * th(z - g)) * kron(E(-1, 1), E(1, -1));
  }
};

struct Point {
  cplx z, l;
};

Point sample(SampleRng& r, cplx g = P.gamma()) {
  for (;;) {
    const cplx z = r.in_cell(kTau), l = r.in_cell(kTau);
    bool ok = true;
    for (cplx a : {z, z + g, z - g, l, l + g, l - g, z + l, z - l}) ok = ok && lattice_distance(a, kTau) >= 0.05;
    if (ok) return {z, l};
  }
}

Mat swap() {
  Mat m = Mat::Zero();
  m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1.0;
  return m;
}
}  // namespace

TEST_CASE("R- matches a Kronecker-product re-implementation at the reference point") {
  const ModularParams p = ModularParams::make(kTau, 0.02);
  const cplx z = 0.31, l(0.17, 0.05);
  CHECK(max_abs(r_minus(z, l, p).m - Oracle{kTau}.r_minus(z, l, 0.02)) < 1e-13);
}

TEST_CASE("all three R-matrices match their Kronecker re-implementations") {
  const Oracle o{kTau};
  for (int s = 0; s < 30; ++s) {
    SampleRng r(42, "kron", s);
    const Point x = sample(r);
    CHECK(max_abs(r_minus(x.z, x.l, P).m - o.r_minus(x.z, x.l, P.gamma())) < 1e-12);
    CHECK(max_abs(r_plus(x.z, x.l, P).m - o.r_plus(x.z, x.l, P.gamma())) < 1e-12);
    CHECK(max_abs(r_bar(x.z, x.l, P).m - o.r_bar(x.z, x.l, P.gamma())) < 1e-12);
  }
}

TEST_CASE("R+ is the inverse of R-, entry by entry") {
  for (int s = 0; s < 50; ++s) {
    SampleRng r(42, "inverse", s);
    const Point x = sample(r);
    CHECK(unitarity_residual(x.z, x.l, P) < 1e-10);
    CHECK(rplus_inverse_residual(x.z, x.l, P) < 1e-10);
  }
}

TEST_CASE("corner entry is 1 and gamma = 0 gives the identity") {
  const ModularParams p0 = P.with_gamma(0.0);
  const cplx z(0.2, 0.1), l(0.35, -0.05);
  for (RKind k : {RKind::Rminus, RKind::Rplus, RKind::Rbar}) {
    CHECK(RFamily{k, P}(z, l)(0, 0) == cplx(1.0));
    CHECK(max_abs(RFamily{k, p0}(z, l).m - Mat::Identity()) < 1e-15);
  }
}

TEST_CASE("weight conservation") {
  for (int s = 0; s < 20; ++s) {
    SampleRng r(1, "weight", s);
    const Point x = sample(r);
    for (RKind k : {RKind::Rminus, RKind::Rplus, RKind::Rbar, RKind::Classical})
      CHECK(weight_violation(RFamily{k, P}(x.z, x.l)) < 1e-14);
  }
}

TEST_CASE("t-matrix") {
  CHECK(max_abs(t_matrix(0.0).m - Eigen::Matrix2cd::Identity()) == 0.0);
  const cplx l(0.3, -0.2);
  CHECK(max_abs((t_matrix(l) * t_matrix(-l)).m - Eigen::Matrix2cd::Identity()) < 1e-15);
  CHECK(std::abs(t_matrix(l).m.determinant() - 1.0) < 1e-15);
}

TEST_CASE("classical r-matrix entries") {
  const ModularParams p = ModularParams::make({0, 0.8}, 0.05);
  const cplx z = 0.3, l(0.1, 0.2);
  const Mat r = classical_r(z, l, p).m;
  const cplx half_g = 0.5 * log_deriv(z, p);
  CHECK(std::abs(r(0, 0) - half_g) < 1e-15);
  CHECK(std::abs(r(1, 1) + half_g) < 1e-15);
  CHECK(std::abs(r(3, 3) - half_g) < 1e-15);
  CHECK(std::abs(r(1, 2) - theta(z + l, p) / (theta(z, p) * theta(l, p))) < 1e-14);
  CHECK(std::abs(r(2, 1) - theta(z - l, p) / (theta(z, p) * theta(-l, p))) < 1e-14);
}

TEST_CASE("classical r is antisymmetric under z -> -z with the factors swapped") {
  const Mat S = swap();
  for (int s = 0; s < 20; ++s) {
    SampleRng r(2, "anti", s);
    const Point x = sample(r);
    CHECK(max_abs(classical_r(x.z, x.l, P).m + S * classical_r(-x.z, x.l, P).m * S) < 1e-12);
  }
}

TEST_CASE("periodicity: z + 1 exactly, z + tau up to the scalar exp(-i pi gamma)") {
  for (int s = 0; s < 30; ++s) {
    SampleRng r(3, "period", s);
    const Point x = sample(r);
    for (RKind k : {RKind::Rminus, RKind::Rplus, RKind::Rbar})
      CHECK(periodicity_residual(k, PeriodShift::One, x.z, x.l, P) < 1e-10);
    for (RKind k : {RKind::Rplus, RKind::Rbar}) {
      const auto t = periodicity(k, PeriodShift::Tau, x.z, x.l, P);
      CHECK(t.projective < 1e-10);
      CHECK(std::abs(t.scale - std::exp(-kI * kPi * P.gamma())) < 1e-12);
    }
  }
}

TEST_CASE("semiclassical limit: (R- - 1)/gamma -> classical r + identity term") {
  for (int s = 0; s < 20; ++s) {
    SampleRng r(4, "semi", s);
    const Point x = sample(r);
    const auto res = semiclassical(x.z, x.l, P);
    CHECK(res.residual < 1e-6);
    // the identity part is -G(z)/2
    CHECK(std::abs(res.identity_coeff + 0.5 * log_deriv(x.z, P)) < 1e-6 * std::max(1.0, std::abs(log_deriv(x.z, P))));
  }
}

TEST_CASE("phi ratios") {
  const cplx l(0.31, 0.12);
  const Jet one = phi_ratio(0.7, 0.7, l, 6, P);
  CHECK(one[0] == cplx(1.0));
  for (int k = 1; k <= 6; ++k) CHECK(one[k] == cplx(0.0));

  // (u, u') = (-1, 1): theta(l)/theta(l - g)
  const double r = 0.75 * lattice_distance(l, kTau);
  auto expect = oracle::cauchy_coeffs([&](cplx g) { return theta(l, P) / theta(l - g, P); }, 8, r, 256);
  const Jet j = phi_ratio(-1.0, 1.0, l, 8, P);
  for (int k = 0; k <= 8; ++k) CHECK(oracle::rel(j[k], expect[k]) < 1e-11);

  // a step of two in u reduces to theta ratios: phi(x + 2g)/phi(x) = theta(x + g)/theta(x), x = l - g u'
  for (double up : {0.5, 1.3, -0.4}) {
    const Jet jj = phi_ratio(up - 2.0, up, l, 8, P);
    auto c = oracle::cauchy_coeffs([&](cplx g) { return theta(l - g * up + g, P) / theta(l - g * up, P); }, 8,
                                   r / (std::abs(up) + 1.0), 256);
    for (int k = 0; k <= 8; ++k) CHECK(oracle::rel(jj[k], c[k]) < 1e-10);
  }

  // cocycle: ratio(u, u') = ratio(u, w) ratio(w, u')
  const Jet a = phi_ratio(0.3, -1.1, l, 6, P);
  const Jet b = phi_ratio(0.3, 0.9, l, 6, P) * phi_ratio(0.9, -1.1, l, 6, P);
  CHECK(max_rel_coeff_diff(a, b) < 1e-13);
}

TEST_CASE("gauge conjugation of R+ by phi gives Rbar") {
  const cplx z(0.21, 0.1), l(0.31, 0.12);
  const JetOperator g = gauge_conjugate(z, l, 6, P);
  CHECK(max_abs(g.coefficient(0) - Mat::Identity()) < 1e-15);
  // slot E11 (x) E-1-1 picks up phi(l + g)/phi(l - g)
  const Jet slot = r_plus_jet(z, l, 6, P).at(1, 1) * phi_ratio(-1.0, 1.0, l, 6, P);
  CHECK(max_rel_coeff_diff(slot, r_bar_jet(z, l, 6, P).at(1, 1)) < 1e-12);
  for (int s = 0; s < 20; ++s) {
    SampleRng r(5, "gauge", s);
    const Point x = sample(r);
    CHECK(gauge_residual(x.z, x.l, 6, P) < 1e-8);
  }
}

TEST_CASE("gamma-jets sum back to the matrices") {
  const cplx z(0.21, 0.1), l(0.31, 0.12);
  const JetOperator j = r_bar_jet(z, l, 22, P);
  Mat sum = Mat::Zero();
  cplx gk = 1.0;
  for (int k = 0; k <= 22; ++k, gk *= P.gamma()) sum += gk * j.coefficient(k);
  CHECK(max_abs(sum - r_bar(z, l, P).m) < 1e-12);
}

TEST_CASE("lambda-Taylor coefficients resum to shifted matrices") {
  const cplx z(0.21, 0.1), l(0.31, 0.12), d(0.02, -0.01);
  for (RKind k : {RKind::Rminus, RKind::Rplus, RKind::Rbar}) {
    const auto c = lambda_taylor(k, z, l, 12, P);
    Mat sum = Mat::Zero();
    cplx dk = 1.0;
    for (int i = 0; i <= 12; ++i, dk *= d) sum += dk * c[i];
    CHECK(max_abs(sum - RFamily{k, P}(z, l + d).m) < 1e-12);
  }
  CHECK_THROWS_AS(lambda_taylor(RKind::Classical, z, l, 4, P), CapabilityError);
}

TEST_CASE("singular factors are named") {
  auto factor_of = [](auto f) -> std::string {
    try {
      f();
    } catch (const SingularityError& e) {
      return e.factor();
    }
    return "";
  };
  CHECK(factor_of([] { r_minus(-P.gamma(), 0.3, P); }) == "theta(z+gamma)");
  CHECK(factor_of([] { r_plus(P.gamma(), 0.3, P); }) == "theta(z-gamma)");
  CHECK(factor_of([] { r_bar(0.2, 1.0, P); }) == "theta(lambda)");
  CHECK(factor_of([] { r_minus(0.0, 0.3, P); }) == "theta(z)");
  CHECK(factor_of([] { classical_r(0.0, 0.3, P); }) == "theta(z)");
}

TEST_CASE("kinds and operator plumbing") {
  for (RKind k : {RKind::Rminus, RKind::Rplus, RKind::Rbar, RKind::Classical}) CHECK(parse_kind(kind_name(k)) == k);
  CHECK_THROWS_AS(parse_kind("rfoo"), ParameterError);
  CHECK_THROWS_AS(TensorOperator::identity(1) * TensorOperator::identity(2), DomainError);
  for (int b = 0; b < 8; ++b) CHECK(site_weight(b, 1, 3) == (b < 4 ? 1 : -1));
  CHECK(total_weight(0, 3) == 3);
  CHECK(total_weight(7, 3) == -3);
}

TEST_CASE("exploratory: Rbar(z) P Rbar(-z) P") {
  // recorded by the verify suite, not part of the contract; it happens to be the identity
  const cplx z(0.21, 0.1), l(0.31, 0.12);
  MESSAGE("rbar unitarity-like residual: " << rbar_unitarity_residual(z, l, P));
  CHECK(rbar_unitarity_residual(z, l, P) >= 0.0);
}
