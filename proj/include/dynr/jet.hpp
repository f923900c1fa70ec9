#pragma once

#include <span>
#include <string>
#include <vector>

#include "dynr/common.hpp"

namespace dynr {

/// Truncated Taylor series c0 + c1 t + ... + cN t^N in a formal parameter t
/// (the dynamical step gamma or hbar). Binary operations truncate to the
/// lower order and refuse to mix parameter labels.
class Jet {
public:
  Jet() = default;
  Jet(std::string param, std::vector<cplx> coeffs);

  static Jet constant(std::string param, cplx value, int order);
  /// The parameter itself, t.
  static Jet variable(std::string param, int order);

  const std::string& param() const noexcept { return param_; }
  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  cplx operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  cplx evaluate(cplx t) const;
  Jet truncated(int order) const;

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator*(cplx s, const Jet& a);
  friend Jet operator-(const Jet& a) { return cplx(-1.0) * a; }

private:
  std::string param_;
  std::vector<cplx> c_;
};

Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_exp(const Jet& a);
/// Principal branch at order 0; requires c0 != 0.
Jet jet_log(const Jet& a);
Jet jet_reciprocal(const Jet& a);

/// Largest |a_k - b_k| over the common orders.
double max_coeff_diff(const Jet& a, const Jet& b);
/// max_k |a_k - b_k| / max(1, |a_k|, |b_k|): coefficients near a pole grow like distance^-k,
/// so absolute differences only measure their size.
double max_rel_coeff_diff(const Jet& a, const Jet& b);
/// |x - y| / max(1, |x|, |y|)
double rel_diff(cplx x, cplx y);

/// Jet in t of f(lambda + step_multiplier * t) from derivs[a] = f^(a)(lambda).
Jet shift_jet(std::span<const cplx> derivs, cplx step_multiplier, int order, std::string param = "gamma");

}  // namespace dynr
