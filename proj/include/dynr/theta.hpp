#pragma once

#include <vector>

#include "dynr/common.hpp"
#include "dynr/laurent.hpp"

namespace dynr {

/// Modular parameter tau and dynamical step gamma, with the derived
/// conventions hbar = -gamma, eta = gamma / 2, q = exp(2 pi i tau).
class ModularParams {
public:
  /// Throws ParameterError unless Im(tau) > 0.
  static ModularParams make(cplx tau, cplx gamma);

  cplx tau() const noexcept { return tau_; }
  cplx gamma() const noexcept { return gamma_; }
  cplx hbar() const noexcept { return -gamma_; }
  cplx eta() const noexcept { return gamma_ / 2.0; }
  cplx q_nome() const noexcept { return std::exp(2.0 * kPi * kI * tau_); }

  ModularParams with_gamma(cplx gamma) const { return make(tau_, gamma); }

  friend bool operator==(const ModularParams&, const ModularParams&) = default;

private:
  ModularParams(cplx tau, cplx gamma) : tau_(tau), gamma_(gamma) {}
  cplx tau_;
  cplx gamma_;
};

struct ThetaConfig {
  int series_terms = 200;   ///< cap on sine-series terms; the tail bound decides the actual count
  bool reduce_domain = true;
  int deriv_max = 16;
};

/// Distance below which log_deriv and wp refuse to evaluate.
inline constexpr double kPoleGuard = 1e-6;

/// Distance from z to the nearest point of Z + tau Z.
double lattice_distance(cplx z, cplx tau);

/// The odd entire function with theta'(0) = 1, zeros exactly on Z + tau Z,
/// theta(z + 1) = -theta(z) and theta(z + tau) = -exp(-i pi tau) exp(-2 i pi z) theta(z).
cplx theta(cplx z, const ModularParams& p, const ThetaConfig& cfg = {});

/// n-th derivative, by term-wise differentiation of the series.
cplx theta_deriv(cplx z, int n, const ModularParams& p, const ThetaConfig& cfg = {});

/// theta^(k)(z) for k = 0..n in one pass.
std::vector<cplx> theta_derivs(cplx z, int n, const ModularParams& p, const ThetaConfig& cfg = {});

/// theta'/theta. Throws SingularityError within kPoleGuard of the lattice.
cplx log_deriv(cplx z, const ModularParams& p, const ThetaConfig& cfg = {});

/// Weierstrass-type wp = -(theta'/theta)'.
cplx wp(cplx z, const ModularParams& p, const ThetaConfig& cfg = {});

/// Taylor coefficients theta^(n)(a)/n!, n = 0..order, as a series in the local variable.
LaurentSeries taylor_at(cplx a, int order, const ModularParams& p, const ThetaConfig& cfg = {});

/// Throws SingularityError naming `factor` when arg is within `guard` of the lattice.
void require_off_lattice(cplx arg, const ModularParams& p, const char* factor, double guard = kPoleGuard);

}  // namespace dynr
