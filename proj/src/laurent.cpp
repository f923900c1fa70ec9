#include "dynr/laurent.hpp"

#include <algorithm>
#include <string>

namespace dynr {

LaurentSeries::LaurentSeries(int min_degree, std::vector<cplx> coeffs, int order_valid)
    : min_degree_(min_degree), coeffs_(std::move(coeffs)), order_valid_(order_valid) {
  normalize();
}

void LaurentSeries::normalize() {
  const int keep = order_valid_ - min_degree_ + 1;
  if (keep <= 0) {
    coeffs_.clear();
  } else if (static_cast<int>(coeffs_.size()) > keep) {
    coeffs_.resize(keep);
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == cplx{}) ++lead;
  coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
  min_degree_ += static_cast<int>(lead);
  if (is_exact()) {
    while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
  }
  if (coeffs_.empty()) min_degree_ = std::min(order_valid_ + 1, kExact);
}

LaurentSeries LaurentSeries::monomial(cplx c, int degree, int order_valid) {
  return LaurentSeries(degree, {c}, order_valid);
}

LaurentSeries LaurentSeries::zero(int order_valid) { return LaurentSeries(0, {}, order_valid); }

LaurentSeries LaurentSeries::polynomial(std::vector<cplx> coeffs) {
  return LaurentSeries(0, std::move(coeffs), kExact);
}

cplx LaurentSeries::coeff(int degree) const {
  if (degree > order_valid_)
    throw PrecisionError("coefficient of z^" + std::to_string(degree) + " requested but series is trusted only through z^" +
                         std::to_string(order_valid_));
  const int j = degree - min_degree_;
  if (j < 0 || j >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(j)];
}

cplx LaurentSeries::evaluate(cplx z) const {
  cplx acc{};
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * z + coeffs_[j];
  return acc * std::pow(z, min_degree_);
}

LaurentSeries LaurentSeries::truncated(int order) const {
  return LaurentSeries(min_degree_, coeffs_, std::min(order, order_valid_));
}

LaurentSeries LaurentSeries::principal_part() const {
  std::vector<cplx> c;
  for (int d = min_degree_; d < 0 && d - min_degree_ < static_cast<int>(coeffs_.size()); ++d)
    c.push_back(coeffs_[static_cast<std::size_t>(d - min_degree_)]);
  return LaurentSeries(min_degree_, std::move(c), kExact);
}

LaurentSeries LaurentSeries::regular_part() const {
  std::vector<cplx> c;
  for (int j = 0; j < static_cast<int>(coeffs_.size()); ++j)
    if (min_degree_ + j >= 0) c.push_back(coeffs_[static_cast<std::size_t>(j)]);
  return LaurentSeries(std::max(min_degree_, 0), std::move(c), order_valid_);
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const int valid = std::min(a.order_valid_, b.order_valid_);
  if (a.is_zero()) return b.truncated(valid);
  if (b.is_zero()) return a.truncated(valid);
  const int lo = std::min(a.min_degree_, b.min_degree_);
  const int hi = std::min(valid, std::max(a.min_degree_ + static_cast<int>(a.coeffs_.size()),
                                          b.min_degree_ + static_cast<int>(b.coeffs_.size())) - 1);
  std::vector<cplx> c(static_cast<std::size_t>(std::max(hi - lo + 1, 0)));
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) {
    const int d = a.min_degree_ + static_cast<int>(j);
    if (d <= hi) c[static_cast<std::size_t>(d - lo)] += a.coeffs_[j];
  }
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
    const int d = b.min_degree_ + static_cast<int>(j);
    if (d <= hi) c[static_cast<std::size_t>(d - lo)] += b.coeffs_[j];
  }
  return LaurentSeries(lo, std::move(c), valid);
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + cplx(-1.0) * b; }

LaurentSeries operator*(cplx s, const LaurentSeries& a) {
  std::vector<cplx> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return LaurentSeries(a.min_degree_, std::move(c), a.order_valid_);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const long va = static_cast<long>(a.order_valid_) + b.min_degree_;
  const long vb = static_cast<long>(b.order_valid_) + a.min_degree_;
  const int valid = static_cast<int>(std::clamp(std::min(va, vb), -static_cast<long>(LaurentSeries::kExact),
                                                static_cast<long>(LaurentSeries::kExact)));
  if (a.is_zero() || b.is_zero()) return LaurentSeries::zero(valid);
  const int lo = a.min_degree_ + b.min_degree_;
  const int len = static_cast<int>(a.coeffs_.size() + b.coeffs_.size()) - 1;
  const int keep = std::min(len, valid - lo + 1);
  std::vector<cplx> c(static_cast<std::size_t>(std::max(keep, 0)));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size() && static_cast<int>(i + j) < keep; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return LaurentSeries(lo, std::move(c), valid);
}

LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * laurent_invert(b); }

LaurentSeries laurent_invert(const LaurentSeries& a, int order_cap) {
  if (a.is_zero()) throw DomainError("cannot invert the zero series");
  const int m = a.min_degree();
  const int valid = a.is_exact() ? order_cap : a.order_valid() - 2 * m;
  const int n = valid + m + 1;  // number of coefficients of the inverse
  if (n <= 0) return LaurentSeries::zero(valid);
  const auto& c = a.coeffs();
  const cplx inv0 = 1.0 / c[0];
  std::vector<cplx> r(static_cast<std::size_t>(n));
  r[0] = inv0;
  for (int k = 1; k < n; ++k) {
    cplx s{};
    for (int j = 1; j <= k && j < static_cast<int>(c.size()); ++j) s += c[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
    r[static_cast<std::size_t>(k)] = -s * inv0;
  }
  return LaurentSeries(-m, std::move(r), valid);
}

LaurentSeries laurent_derive(const LaurentSeries& a, int times) {
  LaurentSeries cur = a;
  for (int t = 0; t < times; ++t) {
    const int o = cur.order_valid();
    const int valid = cur.is_exact() ? o : (o == -1 ? -1 : o - 1);
    std::vector<cplx> c;
    const int m = cur.min_degree();
    const auto& cc = cur.coeffs();
    if (cur.is_zero()) {
      cur = LaurentSeries::zero(valid);
      continue;
    }
    c.reserve(cc.size());
    for (std::size_t j = 0; j < cc.size(); ++j) c.push_back(cc[j] * static_cast<double>(m + static_cast<int>(j)));
    cur = LaurentSeries(m - 1, std::move(c), valid);
  }
  return cur;
}

cplx residue(const LaurentSeries& f) { return f.coeff(-1); }

cplx pairing(const LaurentSeries& f, const LaurentSeries& g) {
  const LaurentSeries prod = f * g;
  if (prod.order_valid() < -1)
    throw PrecisionError("pairing: product trusted only through z^" + std::to_string(prod.order_valid()) +
                         ", residue needs z^-1");
  return residue(prod);
}

}  // namespace dynr
