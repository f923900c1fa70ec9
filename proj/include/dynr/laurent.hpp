#pragma once

#include <vector>

#include "dynr/common.hpp"

namespace dynr {

/// Truncated Laurent expansion at the origin.
///
/// Coefficient of z^(min_degree + j) is stored at position j. Degrees above
/// the stored range and at most order_valid are zero; degrees above
/// order_valid are unknown. Exact polynomials carry order_valid == kExact.
class LaurentSeries {
public:
  static constexpr int kExact = 1 << 20;

  /// The exact zero series.
  LaurentSeries() = default;
  LaurentSeries(int min_degree, std::vector<cplx> coeffs, int order_valid);

  static LaurentSeries monomial(cplx c, int degree, int order_valid = kExact);
  static LaurentSeries zero(int order_valid = kExact);
  /// Exact polynomial c[0] + c[1] z + ...
  static LaurentSeries polynomial(std::vector<cplx> coeffs);

  int min_degree() const noexcept { return min_degree_; }
  int order_valid() const noexcept { return order_valid_; }
  bool is_exact() const noexcept { return order_valid_ >= kExact / 2; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int pole_order() const noexcept { return is_zero() || min_degree_ >= 0 ? 0 : -min_degree_; }

  /// Coefficient of z^degree; throws PrecisionError above order_valid.
  cplx coeff(int degree) const;
  /// Sum of all stored terms at z (the truncated series, not the function).
  cplx evaluate(cplx z) const;
  /// Drops terms above `order` and lowers order_valid accordingly.
  LaurentSeries truncated(int order) const;
  /// Negative-degree part and non-negative part.
  LaurentSeries principal_part() const;
  LaurentSeries regular_part() const;

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(cplx s, const LaurentSeries& a);
  friend LaurentSeries operator-(const LaurentSeries& a) { return cplx(-1.0) * a; }
  friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b);

private:
  void normalize();

  int min_degree_ = 0;
  std::vector<cplx> coeffs_;
  int order_valid_ = kExact;
};

inline LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b) { return a + b; }
inline LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b) { return a * b; }

/// Multiplicative inverse. An exact input yields a result trusted through
/// degree `order_cap`; otherwise validity drops by twice the leading degree.
LaurentSeries laurent_invert(const LaurentSeries& a, int order_cap = 24);

/// d/dz. The z^-1 coefficient of a derivative is exactly zero, so a series
/// trusted through degree -1 stays trusted through degree -1.
LaurentSeries laurent_derive(const LaurentSeries& a, int times = 1);

/// Coefficient of z^-1.
cplx residue(const LaurentSeries& f);

/// res_0(f g dz)
cplx pairing(const LaurentSeries& f, const LaurentSeries& g);

}  // namespace dynr
