#pragma once

#include <vector>

#include "dynr/jet.hpp"
#include "dynr/laurent.hpp"
#include "dynr/theta.hpp"

namespace dynr {

/// Default truncations used across the solvers.
inline constexpr int kDefaultLaurentOrder = 24;
inline constexpr int kDefaultJetOrder = 8;

/// Taylor series of theta'/theta around a (a off the lattice), trusted through `order`.
LaurentSeries log_deriv_taylor(cplx a, int order, const ModularParams& p, const ThetaConfig& cfg = {});

/// Jet of log theta(a + s t) - log theta(a) in t, i.e. sum_{m>=1} s^m G^(m-1)(a) t^m / m!  with G = theta'/theta.
Jet log_theta_shift(cplx a, cplx s, int order, const ModularParams& p, std::string param = "gamma");

/// Taylor coefficients of (1/(2x)) tanh(x/2) = sum_k t_k x^(2k-2), k = 1..count.
std::vector<double> phi_tanh_coefficients(int count);

/// Jet in gamma of phi(lambda) / theta^(1/2)(lambda):
///   exp(-sum_k t_k gamma^(2k-1) G^(2k-2)(lambda)).
Jet solve_phi(cplx lambda, int order, const ModularParams& p);

/// Jet in gamma of log phi(lambda + s gamma) - (1/2) log theta(lambda).
/// The half-power enters only through log theta differences, so no square root is taken.
Jet phi_log_shift(cplx lambda, cplx s, int order, const ModularParams& p);

/// Per-order relative gap between phi(l+g)/phi(l-g) and theta(l)/theta(l-g), orders 0..order.
std::vector<double> phi_functional_residuals(cplx lambda, int order, const ModularParams& p);

/// A function of zeta expanded as a jet in hbar whose coefficients are Taylor
/// series in (zeta - base).
struct HbarSeries {
  cplx base;
  std::vector<LaurentSeries> coeffs;  ///< coeffs[m]: hbar^m coefficient

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  /// hbar-jet of F(base + s hbar).
  Jet jet_at_shift(cplx s, int order) const;
  Jet jet_at_base() const { return jet_at_shift(0.0, order()); }
};

/// Exponential of an hbar-series (coefficientwise in zeta).
HbarSeries hbar_exp(const HbarSeries& log_series);

/// Solves a(zeta) + a(zeta + s hbar) = rhs(zeta) order by order; rhs must be O(hbar).
HbarSeries solve_shift_equation(const HbarSeries& rhs, cplx s);

/// log of the right-hand side [theta(z+h)/theta(z)] / [theta(z+h+hK)/theta(z+hK)] as an hbar-series.
HbarSeries fk_rhs_log(cplx K, cplx base, int zeta_order, int hbar_order, const ModularParams& p);

/// log f_K solving log f(z) + log f(z - hbar) = log rhs, normalized in 1 + hbar C[[z - base]][[hbar]].
HbarSeries solve_fk_log_series(cplx K, int zeta_order, int hbar_order, const ModularParams& p, cplx base);
HbarSeries solve_fk_series(cplx K, int zeta_order, int hbar_order, const ModularParams& p, cplx base);

/// theta(z) (prod_{k=1}^{p-1} theta(z-2k h))^2 theta(z-2p h) / (prod_{k=0}^{p-1} theta(z-(2k+1)h))^2, h = hbar.
cplx fk_closed(int p, cplx zeta, const ModularParams& params);
/// hbar-jet of fk_closed(zeta + offset hbar) at fixed zeta.
Jet fk_closed_jet(int p, cplx zeta, int order, const ModularParams& params, double offset = 0.0);

/// [theta(zeta+hbar)/theta(zeta)] / [theta(zeta+hbar+hbar K)/theta(zeta+hbar K)]
cplx fk_rhs(cplx K, cplx zeta, const ModularParams& params);

/// |f(zeta) f(zeta + neighbour hbar) - rhs| / |rhs| for the closed form with K = -2p.
/// neighbour = -1 is the functional equation as written; +1 is the forward-shifted variant.
double fk_functional_residual(int p, cplx zeta, const ModularParams& params, int neighbour = -1);

/// log A(x) as an hbar-series solving a(x) + a(x + hbar) = log theta(x) - log theta(x + hbar).
HbarSeries solve_a_log_series(cplx x, int zeta_order, int order, const ModularParams& p);
/// hbar-jet of log A at x.
Jet solve_a_series(cplx x, int order, const ModularParams& p);

/// Relative gap between log A(x - K hbar) - log A(x) and -log f_K(-x - hbar), as hbar-jets.
double a_fk_link_residual(cplx x, cplx K, int order, const ModularParams& p);

/// Per-order discrepancy between exp(((q^d - 1)/d) G)(x) and theta(x + hbar)/theta(x), orders 0..order.
std::vector<double> shift_operator_residuals(cplx x, int order, const ModularParams& p);
double shift_operator_identity_check(cplx x, int order, const ModularParams& p);

}  // namespace dynr
