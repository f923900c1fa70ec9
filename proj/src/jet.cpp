#include "dynr/jet.hpp"

#include <algorithm>
#include <cmath>

namespace dynr {

namespace {

void require_same(const Jet& a, const Jet& b) {
  if (a.param() != b.param()) throw DomainError("jet parameter mismatch: " + a.param() + " vs " + b.param());
}

}  // namespace

Jet::Jet(std::string param, std::vector<cplx> coeffs) : param_(std::move(param)), c_(std::move(coeffs)) {
  if (c_.empty()) throw DomainError("a jet needs at least the order-0 coefficient");
}

Jet Jet::constant(std::string param, cplx value, int order) {
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  c[0] = value;
  return Jet(std::move(param), std::move(c));
}

Jet Jet::variable(std::string param, int order) {
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  if (order >= 1) c[1] = 1.0;
  return Jet(std::move(param), std::move(c));
}

cplx Jet::evaluate(cplx t) const {
  cplx acc{};
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
  return acc;
}

Jet Jet::truncated(int order) const {
  std::vector<cplx> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(order + 1, static_cast<std::ptrdiff_t>(c_.size())));
  return Jet(param_, std::move(c));
}

Jet operator+(const Jet& a, const Jet& b) {
  require_same(a, b);
  const int n = std::min(a.order(), b.order());
  std::vector<cplx> c(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = a[k] + b[k];
  return Jet(a.param(), std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) { return a + cplx(-1.0) * b; }

Jet operator*(cplx s, const Jet& a) {
  std::vector<cplx> c = a.coeffs();
  for (auto& x : c) x *= s;
  return Jet(a.param(), std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  require_same(a, b);
  const int n = std::min(a.order(), b.order());
  std::vector<cplx> c(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  return Jet(a.param(), std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) { return a * jet_reciprocal(b); }

Jet jet_mul(const Jet& a, const Jet& b) { return a * b; }

Jet jet_exp(const Jet& a) {
  const int n = a.order();
  std::vector<cplx> b(static_cast<std::size_t>(n + 1));
  b[0] = std::exp(a[0]);
  for (int k = 1; k <= n; ++k) {
    cplx s{};
    for (int j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * b[static_cast<std::size_t>(k - j)];
    b[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
  }
  return Jet(a.param(), std::move(b));
}

Jet jet_log(const Jet& b) {
  if (b[0] == cplx{}) throw DomainError("jet_log: constant term is zero");
  const int n = b.order();
  std::vector<cplx> a(static_cast<std::size_t>(n + 1));
  a[0] = std::log(b[0]);
  for (int k = 1; k <= n; ++k) {
    cplx s{};
    for (int j = 1; j < k; ++j) s += static_cast<double>(j) * a[static_cast<std::size_t>(j)] * b[k - j];
    a[static_cast<std::size_t>(k)] = (b[k] - s / static_cast<double>(k)) / b[0];
  }
  return Jet(b.param(), std::move(a));
}

Jet jet_reciprocal(const Jet& a) {
  if (a[0] == cplx{}) throw DomainError("jet_reciprocal: constant term is zero");
  const int n = a.order();
  std::vector<cplx> r(static_cast<std::size_t>(n + 1));
  r[0] = 1.0 / a[0];
  for (int k = 1; k <= n; ++k) {
    cplx s{};
    for (int j = 1; j <= k; ++j) s += a[j] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = -s * r[0];
  }
  return Jet(a.param(), std::move(r));
}

double max_coeff_diff(const Jet& a, const Jet& b) {
  double m = 0;
  for (int k = 0; k <= std::min(a.order(), b.order()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double rel_diff(cplx x, cplx y) { return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)}); }

double max_rel_coeff_diff(const Jet& a, const Jet& b) {
  double m = 0;
  for (int k = 0; k <= std::min(a.order(), b.order()); ++k) m = std::max(m, rel_diff(a[k], b[k]));
  return m;
}

Jet shift_jet(std::span<const cplx> derivs, cplx step_multiplier, int order, std::string param) {
  if (static_cast<int>(derivs.size()) < order + 1)
    throw CapabilityError("shift_jet: need " + std::to_string(order + 1) + " derivatives, got " + std::to_string(derivs.size()));
  std::vector<cplx> c(static_cast<std::size_t>(order + 1));
  cplx power = 1.0;
  double fact = 1.0;
  for (int a = 0; a <= order; ++a) {
    if (a > 0) {
      power *= step_multiplier;
      fact *= a;
    }
    c[static_cast<std::size_t>(a)] = derivs[static_cast<std::size_t>(a)] * power / fact;
  }
  return Jet(std::move(param), std::move(c));
}

}  // namespace dynr
