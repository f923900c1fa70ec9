#include "dynr/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dynr {

namespace {

ThetaConfig config_for(int order) {
  ThetaConfig cfg;
  cfg.deriv_max = std::max(cfg.deriv_max, order);
  return cfg;
}

// exp of a Taylor series (min_degree >= 0) via b' = a' b.
LaurentSeries taylor_exp(const LaurentSeries& a) {
  if (a.min_degree() < 0) throw DomainError("exp of a series with a pole");
  const int n = a.order_valid();
  if (a.is_exact() && a.is_zero()) return LaurentSeries::polynomial({1.0});
  std::vector<cplx> ac(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) ac[static_cast<std::size_t>(k)] = a.coeff(k);
  std::vector<cplx> b(static_cast<std::size_t>(n + 1));
  b[0] = std::exp(ac[0]);
  for (int k = 1; k <= n; ++k) {
    cplx s{};
    for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * ac[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    b[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
  }
  return LaurentSeries(0, std::move(b), n);
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// g_j = G^(j)(lambda)/j!, j = 0..count-1
std::vector<cplx> log_deriv_coeffs(cplx lambda, int count, const ModularParams& p) {
  const LaurentSeries g = log_deriv_taylor(lambda, std::max(count - 1, 0), p);
  std::vector<cplx> out(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = g.coeff(j);
  return out;
}

}  // namespace

LaurentSeries log_deriv_taylor(cplx a, int order, const ModularParams& p, const ThetaConfig& cfg) {
  require_off_lattice(a, p, "theta(a)");
  ThetaConfig c = cfg;
  c.deriv_max = std::max(c.deriv_max, order + 1);
  const LaurentSeries t = taylor_at(a, order + 1, p, c);
  return laurent_derive(t) * laurent_invert(t);
}

Jet log_theta_shift(cplx a, cplx s, int order, const ModularParams& p, std::string param) {
  const auto g = log_deriv_coeffs(a, std::max(order, 1), p);
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  cplx sp = 1.0;
  for (int m = 1; m <= order; ++m) {
    sp *= s;
    c[static_cast<std::size_t>(m)] = sp * g[static_cast<std::size_t>(m - 1)] / static_cast<double>(m);
  }
  return Jet(std::move(param), std::move(c));
}

std::vector<double> phi_tanh_coefficients(int count) {
  // tanh x = sinh x / cosh x as real Taylor series through x^(2 count)
  const int n = 2 * count;
  std::vector<cplx> sh(static_cast<std::size_t>(n + 1)), ch(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) (k % 2 ? sh : ch)[static_cast<std::size_t>(k)] = 1.0 / factorial(k);
  const Jet tanh_jet = Jet("x", sh) / Jet("x", ch);
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) t[static_cast<std::size_t>(k - 1)] = tanh_jet[2 * k - 1].real() / std::ldexp(1.0, 2 * k);
  return t;
}

Jet solve_phi(cplx lambda, int order, const ModularParams& p) {
  require_off_lattice(lambda, p, "theta(lambda)");
  const int kmax = (order + 1) / 2;
  const auto t = phi_tanh_coefficients(std::max(kmax, 1));
  const auto g = log_deriv_coeffs(lambda, std::max(order, 1), p);
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  for (int k = 1; 2 * k - 1 <= order; ++k) {
    const int j = 2 * k - 2;
    c[static_cast<std::size_t>(2 * k - 1)] = -t[static_cast<std::size_t>(k - 1)] * factorial(j) * g[static_cast<std::size_t>(j)];
  }
  return jet_exp(Jet("gamma", std::move(c)));
}

Jet phi_log_shift(cplx lambda, cplx s, int order, const ModularParams& p) {
  require_off_lattice(lambda, p, "theta(lambda)");
  const auto t = phi_tanh_coefficients(std::max((order + 1) / 2, 1));
  const auto g = log_deriv_coeffs(lambda, std::max(order, 1), p);
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  // -sum_k t_k gamma^(2k-1) sum_a G^(2k-2+a)(lambda) (s gamma)^a / a!
  for (int k = 1; 2 * k - 1 <= order; ++k) {
    cplx sp = 1.0;
    for (int a = 0; 2 * k - 1 + a <= order; ++a) {
      if (a > 0) sp *= s;
      const int j = 2 * k - 2 + a;
      c[static_cast<std::size_t>(2 * k - 1 + a)] -=
          t[static_cast<std::size_t>(k - 1)] * factorial(j) * g[static_cast<std::size_t>(j)] * sp / factorial(a);
    }
  }
  return 0.5 * log_theta_shift(lambda, s, order, p, "gamma") + Jet("gamma", std::move(c));
}

std::vector<double> phi_functional_residuals(cplx lambda, int order, const ModularParams& p) {
  const Jet lhs = jet_exp(phi_log_shift(lambda, 1.0, order, p) - phi_log_shift(lambda, -1.0, order, p));
  const Jet rhs = jet_exp(-log_theta_shift(lambda, -1.0, order, p, "gamma"));
  std::vector<double> r(static_cast<std::size_t>(order + 1));
  for (int k = 0; k <= order; ++k) r[static_cast<std::size_t>(k)] = rel_diff(lhs[k], rhs[k]);
  return r;
}

Jet HbarSeries::jet_at_shift(cplx s, int order) const {
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  for (int n = 0; n <= order; ++n) {
    cplx acc{};
    cplx sp = 1.0;
    for (int a = 0; a <= n; ++a) {
      const int m = n - a;
      if (a > 0) sp *= s;
      if (m < static_cast<int>(coeffs.size()) && (a == 0 || s != cplx{}))
        acc += coeffs[static_cast<std::size_t>(m)].coeff(a) * sp;
    }
    c[static_cast<std::size_t>(n)] = acc;
  }
  return Jet("hbar", std::move(c));
}

HbarSeries hbar_exp(const HbarSeries& a) {
  HbarSeries b{a.base, {}};
  const int n = a.order();
  b.coeffs.push_back(taylor_exp(a.coeffs[0]));
  for (int k = 1; k <= n; ++k) {
    LaurentSeries s = LaurentSeries::zero();
    for (int j = 1; j <= k; ++j)
      s = s + static_cast<double>(j) * (a.coeffs[static_cast<std::size_t>(j)] * b.coeffs[static_cast<std::size_t>(k - j)]);
    b.coeffs.push_back((1.0 / k) * s);
  }
  return b;
}

HbarSeries solve_shift_equation(const HbarSeries& rhs, cplx s) {
  const int n = rhs.order();
  const LaurentSeries& r0 = rhs.coeffs.at(0);
  if (!r0.is_zero()) throw DomainError("shift equation: right-hand side must be O(hbar)");
  HbarSeries a{rhs.base, {LaurentSeries::zero()}};
  for (int m = 1; m <= n; ++m) {
    LaurentSeries acc = rhs.coeffs[static_cast<std::size_t>(m)];
    for (int j = 1; j < m; ++j) {
      const int d = m - j;
      acc = acc - (std::pow(s, d) / factorial(d)) * laurent_derive(a.coeffs[static_cast<std::size_t>(j)], d);
    }
    a.coeffs.push_back(0.5 * acc);
  }
  return a;
}

HbarSeries fk_rhs_log(cplx K, cplx base, int zeta_order, int hbar_order, const ModularParams& p) {
  const LaurentSeries g = log_deriv_taylor(base, zeta_order + hbar_order, p);
  HbarSeries r{base, {LaurentSeries::zero()}};
  for (int m = 1; m <= hbar_order; ++m) {
    const cplx w = (1.0 - std::pow(1.0 + K, m) + std::pow(K, m)) / factorial(m);
    r.coeffs.push_back(w * laurent_derive(g, m - 1));
  }
  return r;
}

HbarSeries solve_fk_log_series(cplx K, int zeta_order, int hbar_order, const ModularParams& p, cplx base) {
  return solve_shift_equation(fk_rhs_log(K, base, zeta_order, hbar_order, p), -1.0);
}

HbarSeries solve_fk_series(cplx K, int zeta_order, int hbar_order, const ModularParams& p, cplx base) {
  return hbar_exp(solve_fk_log_series(K, zeta_order, hbar_order, p, base));
}

cplx fk_closed(int p, cplx zeta, const ModularParams& params) {
  if (p < 1) throw ParameterError("fk_closed: p must be a positive integer");
  const cplx h = params.hbar();
  cplx num = theta(zeta, params) * theta(zeta - 2.0 * static_cast<double>(p) * h, params);
  for (int k = 1; k < p; ++k) {
    const cplx t = theta(zeta - 2.0 * k * h, params);
    num *= t * t;
  }
  cplx den = 1.0;
  for (int k = 0; k < p; ++k) {
    const cplx arg = zeta - (2.0 * k + 1.0) * h;
    require_off_lattice(arg, params, "theta(zeta-(2k+1)hbar)");
    const cplx t = theta(arg, params);
    den *= t * t;
  }
  return num / den;
}

Jet fk_closed_jet(int p, cplx zeta, int order, const ModularParams& params, double offset) {
  if (p < 1) throw ParameterError("fk_closed_jet: p must be a positive integer");
  // theta(zeta + c hbar); log theta(zeta) cancels between numerator and denominator
  auto l = [&](double c) { return log_theta_shift(zeta, c + offset, order, params, "hbar"); };
  Jet acc = l(0.0) + l(-2.0 * p);
  for (int k = 1; k < p; ++k) acc = acc + 2.0 * l(-2.0 * k);
  for (int k = 0; k < p; ++k) acc = acc - 2.0 * l(-(2.0 * k + 1.0));
  return jet_exp(acc);
}

cplx fk_rhs(cplx K, cplx zeta, const ModularParams& params) {
  const cplx h = params.hbar();
  require_off_lattice(zeta, params, "theta(zeta)");
  require_off_lattice(zeta + h * K, params, "theta(zeta+hbar K)");
  require_off_lattice(zeta + h + h * K, params, "theta(zeta+hbar+hbar K)");
  return theta(zeta + h, params) / theta(zeta, params) * theta(zeta + h * K, params) / theta(zeta + h + h * K, params);
}

double fk_functional_residual(int p, cplx zeta, const ModularParams& params, int neighbour) {
  const cplx rhs = fk_rhs(-2.0 * p, zeta, params);
  const cplx lhs = fk_closed(p, zeta, params) * fk_closed(p, zeta + double(neighbour) * params.hbar(), params);
  return std::abs(lhs - rhs) / std::abs(rhs);
}

HbarSeries solve_a_log_series(cplx x, int zeta_order, int order, const ModularParams& p) {
  const LaurentSeries g = log_deriv_taylor(x, zeta_order + order, p);
  HbarSeries r{x, {LaurentSeries::zero()}};
  for (int m = 1; m <= order; ++m) r.coeffs.push_back((-1.0 / factorial(m)) * laurent_derive(g, m - 1));
  return solve_shift_equation(r, 1.0);
}

Jet solve_a_series(cplx x, int order, const ModularParams& p) {
  return solve_a_log_series(x, order, order, p).jet_at_base();
}

double a_fk_link_residual(cplx x, cplx K, int order, const ModularParams& p) {
  const HbarSeries a = solve_a_log_series(x, order + 2, order, p);
  const HbarSeries f = solve_fk_log_series(K, order + 2, order, p, -x);
  const Jet lhs = a.jet_at_shift(-K, order) - a.jet_at_base();
  const Jet rhs = -f.jet_at_shift(-1.0, order);
  return max_rel_coeff_diff(lhs, rhs);
}

std::vector<double> shift_operator_residuals(cplx x, int order, const ModularParams& p) {
  require_off_lattice(x, p, "theta(x)");
  const Jet lhs = jet_exp(log_theta_shift(x, 1.0, order, p, "hbar"));
  const LaurentSeries t = taylor_at(x, order, p, config_for(order));
  const cplx t0 = t.coeff(0);
  std::vector<double> r(static_cast<std::size_t>(order + 1));
  for (int k = 0; k <= order; ++k) r[static_cast<std::size_t>(k)] = rel_diff(lhs[k], t.coeff(k) / t0);
  return r;
}

double shift_operator_identity_check(cplx x, int order, const ModularParams& p) {
  const auto r = shift_operator_residuals(x, order, p);
  return *std::max_element(r.begin(), r.end());
}

}  // namespace dynr
