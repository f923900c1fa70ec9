#pragma once

#include <vector>

#include "dynr/rmatrix.hpp"

namespace dynr {

/// Projector onto the h^(k) = sign eigenspace of an n-site space.
TensorOperator weight_projector(int n, int k, int sign);

/// h^(k) = (E11 - E-1-1) on site k.
TensorOperator h_operator(int n, int k);

/// Places a two-site operator on sites (i, j) of n; its first factor goes to site i.
TensorOperator embed(const TensorOperator& two_site, int i, int j, int n);

/// Places a one-site operator on site k of n.
TensorOperator embed_one(const TensorOperator& one_site, int k, int n);

/// lambda -> lambda - gamma * multiplier * h^(site)
struct DynShift {
  int site = 1;
  cplx multiplier = 1.0;
};

/// family(z, lambda - gamma sum_s multiplier_s h^(site_s)) on sites (i, j),
/// evaluated exactly on the joint weight eigenspaces of the shift sites.
TensorOperator shifted_embed(const RFamily& family, int i, int j, cplx z, cplx lambda, const std::vector<DynShift>& shifts, int n);

/// Same operator from the lambda-Taylor series of the family truncated at `order`.
TensorOperator shifted_embed_taylor(const RFamily& family, int i, int j, cplx z, cplx lambda, const std::vector<DynShift>& shifts,
                                    int n, int order);

/// Standard:  R12(l) R13(l - g h2) R23(l)      = R23(l - g h1) R13(l) R12(l - g h3)
/// Exchange:  R12(l - g h3) R13(l) R23(l - g h1) = R23(l) R13(l - g h2) R12(l)
enum class DybeForm { Standard, Exchange };

/// The form each family satisfies: Standard for R-, Exchange for R+ and Rbar.
DybeForm default_form(RKind kind);

struct Sides {
  TensorOperator lhs, rhs;
  double residual() const { return max_abs(lhs.m - rhs.m); }
};

Sides dybe_sides(const RFamily& family, cplx z1, cplx z2, cplx z3, cplx lambda, DybeForm form);
double dybe_residual(const RFamily& family, cplx z1, cplx z2, cplx z3, cplx lambda, DybeForm form);
double dybe_residual(const RFamily& family, cplx z1, cplx z2, cplx z3, cplx lambda);

enum class RllKind { PlusFundamental, BarFundamental };

/// Sites (aux1, aux2, quantum); L^(a) = family(z_a - w, .) on (aux_a, quantum).
///   R12(z1-z2, l - g h3) L13(z1-w, l) L23(z2-w, l - g h1) = L23(z2-w, l) L13(z1-w, l - g h2) R12(z1-z2, l)
Sides rll_sides(RllKind kind, cplx z1, cplx z2, cplx w, cplx lambda, const ModularParams& p);
double rll_residual(RllKind kind, cplx z1, cplx z2, cplx w, cplx lambda, const ModularParams& p);

enum class DetKind { Plus, Bar };

/// d(z+g,l) a(z,l+g) - b(z+g,l) c(z,l+g) theta(l-g h-g)/theta(l-g h) for L = R+(z-w, .);
/// the bar form is theta(l)/theta(l-g h) (d a - b c) with L = Rbar(z-w, .).
TensorOperator quantum_det(DetKind kind, cplx z, cplx w, cplx lambda, const ModularParams& p);

/// Largest off-diagonal entry, and the spread of the diagonal.
double det_offdiag(const TensorOperator& det);
double det_spread(const TensorOperator& det);

enum class PeriodShift { One, Tau };

struct PeriodicityResult {
  double residual = 0.0;     ///< |R(z+shift) - twisted R(z)|_max
  cplx scale = 1.0;          ///< best scalar c in R(z+shift) ~ c * twisted R(z)
  double projective = 0.0;   ///< |R(z+shift) - c * twisted R(z)|_max
};

/// One: R(z+1) vs R(z). Tau: R(z+tau) vs t^(1)_{l - g h2} R(z) (t^(1)_l)^{-1}.
PeriodicityResult periodicity(RKind kind, PeriodShift shift, cplx z, cplx lambda, const ModularParams& p);
double periodicity_residual(RKind kind, PeriodShift shift, cplx z, cplx lambda, const ModularParams& p);

/// |R+ R- - Id|_max
double unitarity_residual(cplx z, cplx lambda, const ModularParams& p);
/// |R+ - (R-)^{-1}|_max
double rplus_inverse_residual(cplx z, cplx lambda, const ModularParams& p);
/// |Rbar(z, l) P Rbar(-z, l) P - Id|_max (exploratory)
double rbar_unitarity_residual(cplx z, cplx lambda, const ModularParams& p);

struct SemiclassicalResult {
  double residual = 0.0;      ///< Frobenius norm of the traceless part of D
  cplx identity_coeff = 0.0;  ///< tr(D)/4
  double one_sided = 0.0;     ///< same norm from one-sided differences with Richardson
};

/// D = first-order gamma coefficient of R-(z, l) minus classical_r(z, l), extracted from
/// symmetric differences at steps h and h/2 followed by Richardson extrapolation.
SemiclassicalResult semiclassical(cplx z, cplx lambda, const ModularParams& p, double h = 1e-3);

}  // namespace dynr
