#include "dynr/kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "dynr/series.hpp"

namespace dynr {

namespace {

int laurent_order_for(int N) { return std::max(kDefaultLaurentOrder, 2 * N); }

ThetaConfig config_for(int order) {
  ThetaConfig cfg;
  cfg.deriv_max = std::max(cfg.deriv_max, order);
  return cfg;
}

void require_order(int N) {
  if (N < 1) throw CapabilityError("kernel basis order must be >= 1, got " + std::to_string(N));
}

void require_generic(cplx lambda, const ModularParams& p) {
  if (lattice_distance(lambda, p.tau()) < kLatticeTolerance)
    throw DomainError("lambda = " + format_complex(lambda) + " lies on the period lattice; use the zero sector");
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

std::vector<LaurentSeries> basis_L_lambda(cplx lambda, int N, const ModularParams& p) {
  require_order(N);
  require_generic(lambda, p);
  const int L = laurent_order_for(N);
  const ThetaConfig cfg = config_for(L + 2);
  const LaurentSeries quotient = taylor_at(lambda, L + 1, p, cfg) * laurent_invert(taylor_at(0.0, L + 2, p, cfg));
  std::vector<LaurentSeries> out;
  out.reserve(static_cast<std::size_t>(N));
  out.push_back(quotient);
  for (int i = 1; i < N; ++i) out.push_back(laurent_derive(out.back()));
  return out;
}

std::vector<LaurentSeries> basis_L0(int N, const ModularParams& p) {
  require_order(N);
  const int L = laurent_order_for(N);
  const LaurentSeries t0 = taylor_at(0.0, L + 2, p, config_for(L + 2));
  std::vector<LaurentSeries> out;
  out.reserve(static_cast<std::size_t>(N));
  out.push_back(laurent_derive(t0) * laurent_invert(t0));
  for (int j = 1; j < N; ++j) out.push_back(laurent_derive(out.back()));
  return out;
}

std::vector<LaurentSeries> basis(const Sector& s, int N, const ModularParams& p) {
  return s.is_zero() ? basis_L0(N, p) : basis_L_lambda(*s.lambda, N, p);
}

KernelBasis dual_basis(const Sector& s, int N, const ModularParams& p) {
  require_order(N);
  const int Np = N + kDualGuardColumns;
  auto primal = basis(s, Np, p);

  // pairing(z^m, e_j) = coefficient of z^(-m-1) in e_j
  Eigen::MatrixXcd M(Np, Np);
  std::vector<double> size(static_cast<std::size_t>(Np));
  for (int j = 0; j < Np; ++j) {
    const LaurentSeries& ej = primal[static_cast<std::size_t>(j)];
    double col = 0.0;
    for (int d = -j - 1; d <= 0; ++d) col = std::max(col, std::abs(ej.coeff(d)));
    size[static_cast<std::size_t>(j)] = col;
    for (int m = 0; m < Np; ++m) M(m, j) = ej.coeff(-m - 1);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  const Eigen::MatrixXcd C = lu.inverse();

  // Balance of the biorthogonal pair: max_i |e^i| |e_i|, with |e_i| taken over the pole part and
  // constant term. It is 1-ish for generic lambda and grows like 1/theta(lambda) near the lattice,
  // where the pole part of every e_i degenerates while the regular part does not.
  double cond = 0.0;
  for (int i = 0; i < Np; ++i) cond = std::max(cond, C.row(i).cwiseAbs().maxCoeff() * size[static_cast<std::size_t>(i)]);
  if (!std::isfinite(cond) || cond > kMaxDualCondition)
    throw ConditioningError(cond, "dual basis system is ill-conditioned (condition number " + format_short(cond) +
                                      "); lambda is too close to the lattice");

  KernelBasis out;
  out.sector = s;
  out.order = N;
  out.condition = cond;
  for (int i = 0; i < N; ++i) {
    std::vector<cplx> c(static_cast<std::size_t>(Np));
    for (int m = 0; m < Np; ++m) c[static_cast<std::size_t>(m)] = C(i, m);
    out.dual.push_back(LaurentSeries::polynomial(std::move(c)));
  }
  primal.resize(static_cast<std::size_t>(N));
  out.primal = std::move(primal);
  return out;
}

std::vector<cplx> duality_matrix(const KernelBasis& b) {
  const int N = b.order;
  std::vector<cplx> m(static_cast<std::size_t>(N * N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      m[static_cast<std::size_t>(i * N + j)] = pairing(b.dual[static_cast<std::size_t>(i)], b.primal[static_cast<std::size_t>(j)]);
  return m;
}

double duality_deviation(const KernelBasis& b) {
  const auto m = duality_matrix(b);
  double dev = 0.0;
  for (int i = 0; i < b.order; ++i)
    for (int j = 0; j < b.order; ++j)
      dev = std::max(dev, std::abs(m[static_cast<std::size_t>(i * b.order + j)] - (i == j ? 1.0 : 0.0)));
  return dev;
}

std::vector<cplx> evaluate_primal(const Sector& s, cplx z, int N, const ModularParams& p) {
  require_order(N);
  require_off_lattice(z, p, "theta(z)");
  LaurentSeries local;
  if (s.is_zero()) {
    local = log_deriv_taylor(z, N - 1, p);
  } else {
    require_generic(*s.lambda, p);
    const ThetaConfig cfg = config_for(N);
    local = taylor_at(z + *s.lambda, N - 1, p, cfg) * laurent_invert(taylor_at(z, N - 1, p, cfg));
  }
  std::vector<cplx> out(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(i)] = factorial(i) * local.coeff(i);
  return out;
}

std::vector<cplx> kernel_rhs_taylor(const Sector& s, cplx z, int N, const ModularParams& p) {
  require_order(N);
  require_off_lattice(z, p, "theta(z)");
  // expand in w directly: numerator and denominator as series in w with argument z - w
  const ThetaConfig cfg = config_for(N);
  auto flip = [&](const LaurentSeries& t) {
    std::vector<cplx> c(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) c[static_cast<std::size_t>(k)] = (k % 2 ? -1.0 : 1.0) * t.coeff(k);
    return LaurentSeries(0, std::move(c), N - 1);
  };
  LaurentSeries rhs;
  if (s.is_zero()) {
    rhs = flip(log_deriv_taylor(z, N - 1, p));
  } else {
    const cplx l = *s.lambda;
    require_generic(l, p);
    const cplx th_l = theta(l, p);
    rhs = (1.0 / th_l) * (flip(taylor_at(z + l, N - 1, p, cfg)) * laurent_invert(flip(taylor_at(z, N - 1, p, cfg))));
  }
  std::vector<cplx> out(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) out[static_cast<std::size_t>(k)] = rhs.coeff(k);
  return out;
}

std::vector<cplx> kernel_sum(const KernelBasis& b, cplx z, const ModularParams& p) {
  const int N = b.order;
  const auto e = evaluate_primal(b.sector, z, N, p);
  std::vector<cplx> out(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i) out[static_cast<std::size_t>(k)] += e[static_cast<std::size_t>(i)] * b.dual[static_cast<std::size_t>(i)].coeff(k);
  return out;
}

double kernel_sum_residual(const Sector& s, cplx z, int N, const ModularParams& p) {
  const KernelBasis b = dual_basis(s, N, p);
  const auto lhs = kernel_sum(b, z, p);
  const auto rhs = kernel_rhs_taylor(s, z, N, p);
  double r = 0.0;
  for (int k = 0; k < N; ++k) {
    const auto i = static_cast<std::size_t>(k);
    r = std::max(r, std::abs(lhs[i] - rhs[i]) / std::max(1.0, std::abs(rhs[i])));
  }
  return r;
}

Projection project_minus(const LaurentSeries& eps, cplx mu, int N, const ModularParams& p) {
  const int P = eps.pole_order();
  if (P >= N)
    throw CapabilityError("project_minus: pole order " + std::to_string(P) + " needs a basis of order > " + std::to_string(P) +
                          ", got N = " + std::to_string(N));
  Projection out{LaurentSeries::zero(), eps, std::vector<cplx>(static_cast<std::size_t>(N))};
  if (P == 0) return out;
  const auto e = basis_L_lambda(-mu, N, p);
  LaurentSeries rem = eps;
  for (int d = P; d >= 1; --d) {
    const LaurentSeries& ej = e[static_cast<std::size_t>(d - 1)];
    const cplx w = rem.coeff(-d) / ej.coeff(-d);
    out.weights[static_cast<std::size_t>(d - 1)] = w;
    out.pi = out.pi + w * ej;
    rem = rem - w * ej;
  }
  out.rho = rem.regular_part();
  return out;
}

}  // namespace dynr
