#pragma once

#include <optional>
#include <vector>

#include "dynr/laurent.hpp"
#include "dynr/theta.hpp"

namespace dynr {

/// Which space L_lambda the basis spans: a generic lambda off the lattice,
/// or the zero sector L_0 spanned by derivatives of theta'/theta.
struct Sector {
  std::optional<cplx> lambda;  ///< empty for the zero sector

  static Sector zero() { return {}; }
  static Sector at(cplx l) { return {l}; }
  bool is_zero() const { return !lambda.has_value(); }
};

/// Number of extra pairing conditions used in the dual solve beyond N.
inline constexpr int kDualGuardColumns = 4;

/// Reported condition numbers above this abort the dual solve.
inline constexpr double kMaxDualCondition = 1e6;

/// lambda counts as a lattice point below this distance.
inline constexpr double kLatticeTolerance = 1e-12;

/// Paired bases: primal e_{i;lambda} (Laurent at 0) and dual e^i (polynomials),
/// with pairing(e^i, e_{j;lambda}) = delta_ij.
struct KernelBasis {
  Sector sector;
  int order = 0;                         ///< N
  std::vector<LaurentSeries> primal;     ///< e_{i;lambda}, i < N
  std::vector<LaurentSeries> dual;       ///< e^i, i < N, exact polynomials of degree < N + guard
  double condition = 1.0;
};

/// d^i/dz^i (theta(lambda + z)/theta(z)) at z = 0, i < N, each trusted through degree >= N.
std::vector<LaurentSeries> basis_L_lambda(cplx lambda, int N, const ModularParams& p);

/// (theta'/theta)^(j) at z = 0, j < N.
std::vector<LaurentSeries> basis_L0(int N, const ModularParams& p);

std::vector<LaurentSeries> basis(const Sector& s, int N, const ModularParams& p);

KernelBasis dual_basis(const Sector& s, int N, const ModularParams& p);

/// N x N matrix of pairing(e^i, e_{j;lambda}), row-major.
std::vector<cplx> duality_matrix(const KernelBasis& b);
/// max |duality_matrix - Id|
double duality_deviation(const KernelBasis& b);

/// e_{i;lambda}(z) for i < N, evaluated through theta derivatives at z.
std::vector<cplx> evaluate_primal(const Sector& s, cplx z, int N, const ModularParams& p);

/// Taylor coefficients in w (orders < N) of theta(z-w+lambda)/(theta(z-w) theta(lambda)),
/// or of (theta'/theta)(z - w) in the zero sector.
std::vector<cplx> kernel_rhs_taylor(const Sector& s, cplx z, int N, const ModularParams& p);

/// Coefficients in w of sum_{i<N} e_{i;lambda}(z) e^i(w), orders < N.
std::vector<cplx> kernel_sum(const KernelBasis& b, cplx z, const ModularParams& p);

/// max over k of |kernel_sum_k - rhs_k| / max(1, |rhs_k|); high-order coefficients grow like |z|^-k.
double kernel_sum_residual(const Sector& s, cplx z, int N, const ModularParams& p);

struct Projection {
  LaurentSeries pi;               ///< component in L_{-mu}
  LaurentSeries rho;              ///< regular remainder
  std::vector<cplx> weights;      ///< pi = sum_j weights[j] e_{j;-mu}
};

/// Decomposes eps = pi + rho with pi in L_{-mu} and rho in C[[z]].
Projection project_minus(const LaurentSeries& eps, cplx mu, int N, const ModularParams& p);

}  // namespace dynr
