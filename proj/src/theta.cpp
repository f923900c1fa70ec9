#include "dynr/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dynr {

ModularParams ModularParams::make(cplx tau, cplx gamma) {
  if (!(tau.imag() > 0.0)) throw ParameterError("invalid modular parameter: Im(tau) > 0 required, got tau = " + format_complex(tau));
  return ModularParams(tau, gamma);
}

double lattice_distance(cplx z, cplx tau) {
  const double n0 = std::round(z.imag() / tau.imag());
  double best = std::numeric_limits<double>::infinity();
  for (double n = n0 - 1; n <= n0 + 1; n += 1) {
    const cplx w = z - n * tau;
    const double m0 = std::round(w.real());
    for (double m = m0 - 1; m <= m0 + 1; m += 1) best = std::min(best, std::abs(w - m));
  }
  return best;
}

void require_off_lattice(cplx arg, const ModularParams& p, const char* factor, double guard) {
  const double d = lattice_distance(arg, p.tau());
  if (d < guard)
    throw SingularityError(factor, std::string("singular theta factor ") + factor + ": argument " + format_complex(arg) +
                                       " lies within " + format_short(d) + " of the period lattice");
}

namespace {

// S^(k)(z) = sum_n 2 (-1)^n e^{i pi tau (n+1/2)^2} ((2n+1) pi)^k sin((2n+1) pi z + k pi/2), k = 0..kmax.
std::vector<cplx> sine_series_derivs(cplx z, int kmax, cplx tau, int max_terms) {
  std::vector<cplx> acc(static_cast<std::size_t>(kmax + 1));
  double lead = 0.0;
  const double im_tau = tau.imag();
  const double im_z = std::abs(z.imag());
  for (int n = 0;; ++n) {
    if (n >= max_terms) throw CapabilityError("theta series did not converge within " + std::to_string(max_terms) + " terms");
    const double x = n + 0.5;
    const double freq = (2 * n + 1) * kPi;
    const cplx weight = 2.0 * (n % 2 == 0 ? 1.0 : -1.0) * std::exp(kI * kPi * tau * (x * x));
    const cplx arg = freq * z;
    const cplx s = std::sin(arg), c = std::cos(arg);
    double fp = 1.0;
    double term_bound = 0.0;
    for (int k = 0; k <= kmax; ++k) {
      cplx v;
      switch (k % 4) {
        case 0: v = s; break;
        case 1: v = c; break;
        case 2: v = -s; break;
        default: v = -c; break;
      }
      acc[static_cast<std::size_t>(k)] += weight * fp * v;
      term_bound = std::max(term_bound, std::abs(weight) * fp * std::cosh(freq * im_z));
      fp *= freq;
    }
    lead = std::max(lead, term_bound);
    // Gaussian decay: once the exponent dominates, the dropped tail is bounded by the current term.
    const bool past_peak = kPi * im_tau * (2 * x + 1) > kmax / x + 2 * kPi * im_z + 1.0;
    if (past_peak && term_bound < 1e-30 * lead) break;
  }
  return acc;
}

cplx sine_series_normalizer(cplx tau, int max_terms) {
  // S'(0)
  return sine_series_derivs(cplx{}, 1, tau, max_terms)[1];
}

}  // namespace

std::vector<cplx> theta_derivs(cplx z, int n, const ModularParams& p, const ThetaConfig& cfg) {
  if (n < 0) throw CapabilityError("negative derivative order");
  if (n > cfg.deriv_max)
    throw CapabilityError("theta derivative of order " + std::to_string(n) + " exceeds deriv_max = " + std::to_string(cfg.deriv_max));
  const cplx tau = p.tau();
  const cplx norm = sine_series_normalizer(tau, cfg.series_terms);

  if (!cfg.reduce_domain) {
    auto d = sine_series_derivs(z, n, tau, cfg.series_terms);
    for (auto& x : d) x /= norm;
    return d;
  }

  // z = z0 + m + k tau, with z0 in the centred cell
  const double k = std::round(z.imag() / tau.imag());
  const cplx w = z - k * tau;
  const double m = std::round(w.real());
  const cplx z0 = w - m;

  auto base = sine_series_derivs(z0, n, tau, cfg.series_terms);
  for (auto& x : base) x /= norm;
  if (k == 0.0) {
    if (std::fmod(std::abs(m), 2.0) == 1.0)
      for (auto& x : base) x = -x;
    return base;
  }

  // theta(z0 + m + k tau) = (-1)^(m+k) e^{-i pi k^2 tau} e^{-2 i pi k z0} theta(z0)
  const double sign = std::fmod(std::abs(m + k), 2.0) == 1.0 ? -1.0 : 1.0;
  const cplx a = -2.0 * kPi * kI * k;
  const cplx pref = sign * std::exp(-kI * kPi * (k * k) * tau + a * z0);
  std::vector<cplx> out(static_cast<std::size_t>(n + 1));
  for (int r = 0; r <= n; ++r) {
    // Leibniz: sum_j C(r,j) a^(r-j) theta^(j)(z0)
    cplx s{};
    double binom = 1.0;
    cplx apow = std::pow(a, r);
    for (int j = 0; j <= r; ++j) {
      s += binom * apow * base[static_cast<std::size_t>(j)];
      binom = binom * (r - j) / (j + 1);
      apow /= a;
    }
    out[static_cast<std::size_t>(r)] = pref * s;
  }
  return out;
}

cplx theta(cplx z, const ModularParams& p, const ThetaConfig& cfg) { return theta_derivs(z, 0, p, cfg)[0]; }

cplx theta_deriv(cplx z, int n, const ModularParams& p, const ThetaConfig& cfg) { return theta_derivs(z, n, p, cfg).back(); }

cplx log_deriv(cplx z, const ModularParams& p, const ThetaConfig& cfg) {
  require_off_lattice(z, p, "theta(z)");
  const auto d = theta_derivs(z, 1, p, cfg);
  return d[1] / d[0];
}

cplx wp(cplx z, const ModularParams& p, const ThetaConfig& cfg) {
  require_off_lattice(z, p, "theta(z)");
  const auto d = theta_derivs(z, 2, p, cfg);
  const cplx g = d[1] / d[0];
  return g * g - d[2] / d[0];
}

LaurentSeries taylor_at(cplx a, int order, const ModularParams& p, const ThetaConfig& cfg) {
  auto d = theta_derivs(a, order, p, cfg);
  double fact = 1.0;
  for (int n = 1; n <= order; ++n) {
    fact *= n;
    d[static_cast<std::size_t>(n)] /= fact;
  }
  return LaurentSeries(0, std::move(d), order);
}

}  // namespace dynr
