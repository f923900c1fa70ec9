#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dynr/jet.hpp"
#include "dynr/laurent.hpp"
#include "dynr/theta.hpp"

namespace dynr {

/// Operator on (C^2)^{tensor n} in the weight basis (v1...v1), ..., (v-1...v-1),
/// lexicographic with v1 first. Basis index b has site k (1-based) equal to v-1 iff bit n-k is set.
struct TensorOperator {
  int sites = 0;
  Eigen::MatrixXcd m;

  static TensorOperator identity(int n);
  static TensorOperator zero(int n);
  int dim() const { return static_cast<int>(m.rows()); }
  cplx operator()(int row, int col) const { return m(row, col); }

  friend TensorOperator operator*(const TensorOperator& a, const TensorOperator& b);
  friend TensorOperator operator+(const TensorOperator& a, const TensorOperator& b);
  friend TensorOperator operator-(const TensorOperator& a, const TensorOperator& b);
  friend TensorOperator operator*(cplx s, const TensorOperator& a);
};

/// Weight (+1 or -1) of site k (1-based) in basis vector b of an n-site space.
int site_weight(int b, int k, int n);

/// Sum of all weights of basis vector b.
int total_weight(int b, int n);

/// Largest |entry| connecting different total-weight sectors.
double weight_violation(const TensorOperator& op);

double max_abs(const Eigen::MatrixXcd& m);

enum class RKind { Rminus, Rplus, Rbar, Classical };

std::string kind_name(RKind k);
RKind parse_kind(const std::string& name);  ///< rminus|rplus|rbar|classical, throws ParameterError

TensorOperator r_minus(cplx z, cplx lambda, const ModularParams& p);
TensorOperator r_plus(cplx z, cplx lambda, const ModularParams& p);
TensorOperator r_bar(cplx z, cplx lambda, const ModularParams& p);
/// Finite part 1/2 G(z) h(x)h + (e(x)f) theta(z+l)/(theta(z)theta(l)) + (f(x)e) theta(z-l)/(theta(z)theta(-l)).
TensorOperator classical_r(cplx z, cplx lambda, const ModularParams& p);
/// diag(e^{-i pi l}, e^{i pi l})
TensorOperator t_matrix(cplx lambda);

/// A kind bound to its modular parameters; evaluable at (z, lambda).
struct RFamily {
  RKind kind;
  ModularParams params;
  TensorOperator operator()(cplx z, cplx lambda) const;
};

/// 4x4 matrix of jets (row-major).
struct JetOperator {
  std::vector<Jet> entries;
  const Jet& at(int row, int col) const { return entries[static_cast<std::size_t>(row * 4 + col)]; }
  /// Coefficient matrix of gamma^k.
  Eigen::Matrix4cd coefficient(int k) const;
};

/// gamma-expansions at fixed (z, lambda, tau).
JetOperator r_plus_jet(cplx z, cplx lambda, int order, const ModularParams& p);
JetOperator r_bar_jet(cplx z, cplx lambda, int order, const ModularParams& p);

/// Jet in gamma of phi(lambda - gamma u) / phi(lambda - gamma u').
Jet phi_ratio(cplx u, cplx u_prime, cplx lambda, int order, const ModularParams& p);

/// phi(lambda - gamma h2) R+(z, lambda) phi(lambda - gamma h1)^{-1} as a gamma-jet:
/// entry (t, s) picks up phi_ratio(weight of site 2 in t, weight of site 1 in s).
JetOperator gauge_conjugate(cplx z, cplx lambda, int order, const ModularParams& p);

/// Largest relative coefficient gap between gauge_conjugate and r_bar_jet.
double gauge_residual(cplx z, cplx lambda, int order, const ModularParams& p);

/// Taylor coefficients in delta of family(z, lambda + delta), orders 0..order, as matrices.
std::vector<Eigen::Matrix4cd> lambda_taylor(RKind kind, cplx z, cplx lambda, int order, const ModularParams& p);

}  // namespace dynr
