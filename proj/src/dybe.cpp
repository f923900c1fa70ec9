#include "dynr/dybe.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace dynr {

namespace {

void check_site(int k, int n) {
  if (n < 1 || k < 1 || k > n) throw DomainError("site " + std::to_string(k) + " is outside 1.." + std::to_string(n));
}

int local_bit(int b, int k, int n) { return (b >> (n - k)) & 1; }

}  // namespace

TensorOperator weight_projector(int n, int k, int sign) {
  check_site(k, n);
  if (sign != 1 && sign != -1) throw DomainError("weight projector sign must be +1 or -1");
  TensorOperator out = TensorOperator::zero(n);
  for (int b = 0; b < out.dim(); ++b)
    if (site_weight(b, k, n) == sign) out.m(b, b) = 1.0;
  return out;
}

TensorOperator h_operator(int n, int k) {
  check_site(k, n);
  TensorOperator out = TensorOperator::zero(n);
  for (int b = 0; b < out.dim(); ++b) out.m(b, b) = double(site_weight(b, k, n));
  return out;
}

TensorOperator embed(const TensorOperator& two_site, int i, int j, int n) {
  check_site(i, n);
  check_site(j, n);
  if (i == j || two_site.sites != 2) throw DomainError("embed needs a two-site operator and two distinct sites");
  TensorOperator out = TensorOperator::zero(n);
  const int mask = (1 << (n - i)) | (1 << (n - j));
  for (int r = 0; r < out.dim(); ++r)
    for (int c = 0; c < out.dim(); ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      const int lr = 2 * local_bit(r, i, n) + local_bit(r, j, n);
      const int lc = 2 * local_bit(c, i, n) + local_bit(c, j, n);
      out.m(r, c) = two_site.m(lr, lc);
    }
  return out;
}

TensorOperator embed_one(const TensorOperator& one_site, int k, int n) {
  check_site(k, n);
  if (one_site.sites != 1) throw DomainError("embed_one needs a one-site operator");
  TensorOperator out = TensorOperator::zero(n);
  const int mask = 1 << (n - k);
  for (int r = 0; r < out.dim(); ++r)
    for (int c = 0; c < out.dim(); ++c)
      if ((r & ~mask) == (c & ~mask)) out.m(r, c) = one_site.m(local_bit(r, k, n), local_bit(c, k, n));
  return out;
}

namespace {

std::vector<int> shift_sites(int i, int j, const std::vector<DynShift>& shifts, int n) {
  std::vector<int> sites;
  for (const auto& s : shifts) {
    check_site(s.site, n);
    if (s.site == i || s.site == j)
      throw DomainError("shift site " + std::to_string(s.site) + " coincides with an acting site");
    if (std::find(sites.begin(), sites.end(), s.site) == sites.end()) sites.push_back(s.site);
  }
  return sites;
}

// lambda offset (in units of -gamma) on basis vector b
cplx shift_weight(int b, const std::vector<DynShift>& shifts, int n) {
  cplx x = 0.0;
  for (const auto& s : shifts) x += s.multiplier * double(site_weight(b, s.site, n));
  return x;
}

}  // namespace

TensorOperator shifted_embed(const RFamily& family, int i, int j, cplx z, cplx lambda, const std::vector<DynShift>& shifts, int n) {
  const auto sites = shift_sites(i, j, shifts, n);
  TensorOperator out = TensorOperator::zero(n);
  const cplx g = family.params.gamma();
  const int count = 1 << sites.size();
  for (int a = 0; a < count; ++a) {
    // representative basis vector with the chosen weights on the shift sites
    int rep = 0;
    TensorOperator proj = TensorOperator::identity(n);
    for (std::size_t s = 0; s < sites.size(); ++s) {
      const int bit = (a >> s) & 1;
      rep |= bit << (n - sites[s]);
      proj = proj * weight_projector(n, sites[s], bit ? -1 : 1);
    }
    const cplx shifted = lambda - g * shift_weight(rep, shifts, n);
    out = out + proj * embed(family(z, shifted), i, j, n);
  }
  return out;
}

TensorOperator shifted_embed_taylor(const RFamily& family, int i, int j, cplx z, cplx lambda, const std::vector<DynShift>& shifts,
                                    int n, int order) {
  shift_sites(i, j, shifts, n);
  const auto coeffs = lambda_taylor(family.kind, z, lambda, order, family.params);
  TensorOperator d = TensorOperator::zero(n);
  for (int b = 0; b < d.dim(); ++b) d.m(b, b) = -family.params.gamma() * shift_weight(b, shifts, n);
  TensorOperator out = TensorOperator::zero(n);
  TensorOperator power = TensorOperator::identity(n);
  for (int k = 0; k <= order; ++k) {
    out = out + embed(TensorOperator{2, coeffs[static_cast<std::size_t>(k)]}, i, j, n) * power;
    power = power * d;
  }
  return out;
}

DybeForm default_form(RKind kind) { return kind == RKind::Rminus ? DybeForm::Standard : DybeForm::Exchange; }

Sides dybe_sides(const RFamily& f, cplx z1, cplx z2, cplx z3, cplx l, DybeForm form) {
  auto R = [&](int i, int j, cplx z, std::vector<DynShift> s) { return shifted_embed(f, i, j, z, l, s, 3); };
  const cplx z12 = z1 - z2, z13 = z1 - z3, z23 = z2 - z3;
  if (form == DybeForm::Standard)
    return {R(1, 2, z12, {}) * R(1, 3, z13, {{2, 1.0}}) * R(2, 3, z23, {}),
            R(2, 3, z23, {{1, 1.0}}) * R(1, 3, z13, {}) * R(1, 2, z12, {{3, 1.0}})};
  return {R(1, 2, z12, {{3, 1.0}}) * R(1, 3, z13, {}) * R(2, 3, z23, {{1, 1.0}}),
          R(2, 3, z23, {}) * R(1, 3, z13, {{2, 1.0}}) * R(1, 2, z12, {})};
}

double dybe_residual(const RFamily& f, cplx z1, cplx z2, cplx z3, cplx l, DybeForm form) {
  return dybe_sides(f, z1, z2, z3, l, form).residual();
}

double dybe_residual(const RFamily& f, cplx z1, cplx z2, cplx z3, cplx l) {
  return dybe_residual(f, z1, z2, z3, l, default_form(f.kind));
}

Sides rll_sides(RllKind kind, cplx z1, cplx z2, cplx w, cplx l, const ModularParams& p) {
  const RFamily f{kind == RllKind::PlusFundamental ? RKind::Rplus : RKind::Rbar, p};
  auto op = [&](int i, int j, cplx z, std::vector<DynShift> s) { return shifted_embed(f, i, j, z, l, s, 3); };
  return {op(1, 2, z1 - z2, {{3, 1.0}}) * op(1, 3, z1 - w, {}) * op(2, 3, z2 - w, {{1, 1.0}}),
          op(2, 3, z2 - w, {}) * op(1, 3, z1 - w, {{2, 1.0}}) * op(1, 2, z1 - z2, {})};
}

double rll_residual(RllKind kind, cplx z1, cplx z2, cplx w, cplx l, const ModularParams& p) {
  return rll_sides(kind, z1, z2, w, l, p).residual();
}

TensorOperator quantum_det(DetKind kind, cplx z, cplx w, cplx l, const ModularParams& p) {
  const RFamily f{kind == DetKind::Plus ? RKind::Rplus : RKind::Rbar, p};
  const cplx g = p.gamma();
  const Eigen::MatrixXcd L1 = f(z + g - w, l).m;  // L(z+g, l)
  const Eigen::MatrixXcd L0 = f(z - w, l + g).m;  // L(z, l+g)
  auto blk = [](const Eigen::MatrixXcd& m, int r, int c) -> Eigen::Matrix2cd { return m.block(2 * r, 2 * c, 2, 2); };
  const Eigen::Matrix2cd a0 = blk(L0, 0, 0), b1 = blk(L1, 0, 1), c0 = blk(L0, 1, 0), d1 = blk(L1, 1, 1);
  Eigen::Matrix2cd theta_h = Eigen::Matrix2cd::Zero();
  TensorOperator out = TensorOperator::zero(1);
  if (kind == DetKind::Plus) {
    for (int b = 0; b < 2; ++b) {
      const double mu = b ? -1.0 : 1.0;
      require_off_lattice(l - g * mu, p, "theta(lambda-gamma h)");
      theta_h(b, b) = theta(l - g * mu - g, p) / theta(l - g * mu, p);
    }
    out.m = d1 * a0 - b1 * c0 * theta_h;
  } else {
    for (int b = 0; b < 2; ++b) {
      const double mu = b ? -1.0 : 1.0;
      require_off_lattice(l - g * mu, p, "theta(lambda-gamma h)");
      theta_h(b, b) = theta(l, p) / theta(l - g * mu, p);
    }
    out.m = theta_h * (d1 * a0 - b1 * c0);
  }
  return out;
}

double det_offdiag(const TensorOperator& det) {
  double r = 0.0;
  for (int i = 0; i < det.dim(); ++i)
    for (int j = 0; j < det.dim(); ++j)
      if (i != j) r = std::max(r, std::abs(det.m(i, j)));
  return r;
}

double det_spread(const TensorOperator& det) {
  double r = 0.0;
  for (int i = 1; i < det.dim(); ++i) r = std::max(r, std::abs(det.m(i, i) - det.m(0, 0)));
  return r;
}

PeriodicityResult periodicity(RKind kind, PeriodShift shift, cplx z, cplx l, const ModularParams& p) {
  const RFamily f{kind, p};
  const Eigen::MatrixXcd lhs = f(z + (shift == PeriodShift::One ? cplx(1.0) : p.tau()), l).m;
  Eigen::MatrixXcd rhs = f(z, l).m;
  if (shift == PeriodShift::Tau) {
    TensorOperator t2 = TensorOperator::zero(2);
    for (int sign : {1, -1})
      t2 = t2 + weight_projector(2, 2, sign) * embed_one(t_matrix(l - p.gamma() * double(sign)), 1, 2);
    rhs = t2.m * rhs * embed_one(t_matrix(-l), 1, 2).m;
  }
  PeriodicityResult r;
  r.residual = max_abs(lhs - rhs);
  const cplx num = (rhs.adjoint() * lhs).trace();
  const double den = rhs.squaredNorm();
  r.scale = den > 0 ? num / den : cplx(1.0);
  r.projective = max_abs(lhs - r.scale * rhs);
  return r;
}

double periodicity_residual(RKind kind, PeriodShift shift, cplx z, cplx l, const ModularParams& p) {
  return periodicity(kind, shift, z, l, p).residual;
}

double unitarity_residual(cplx z, cplx l, const ModularParams& p) {
  return max_abs((r_plus(z, l, p) * r_minus(z, l, p)).m - Eigen::Matrix4cd::Identity());
}

double rplus_inverse_residual(cplx z, cplx l, const ModularParams& p) {
  return max_abs(r_plus(z, l, p).m - r_minus(z, l, p).m.inverse());
}

double rbar_unitarity_residual(cplx z, cplx l, const ModularParams& p) {
  Eigen::Matrix4cd P = Eigen::Matrix4cd::Zero();
  P(0, 0) = P(3, 3) = P(1, 2) = P(2, 1) = 1.0;
  return max_abs(r_bar(z, l, p).m * P * r_bar(-z, l, p).m * P - Eigen::Matrix4cd::Identity());
}

SemiclassicalResult semiclassical(cplx z, cplx l, const ModularParams& p, double h) {
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  auto R = [&](double g) -> Eigen::Matrix4cd { return r_minus(z, l, p.with_gamma(g)).m; };
  auto sym = [&](double g) -> Eigen::Matrix4cd { return (R(g) - R(-g)) / (2.0 * g); };
  auto one = [&](double g) -> Eigen::Matrix4cd { return (R(g) - id) / g; };
  const Eigen::Matrix4cd cl = classical_r(z, l, p).m;
  auto traceless_norm = [&](const Eigen::Matrix4cd& d) { return (d - (d.trace() / 4.0) * id).norm(); };

  const Eigen::Matrix4cd d = (4.0 * sym(h / 2) - sym(h)) / 3.0 - cl;
  const Eigen::Matrix4cd d1 = 2.0 * one(h / 2) - one(h) - cl;
  return {traceless_norm(d), d.trace() / 4.0, traceless_norm(d1)};
}

}  // namespace dynr
