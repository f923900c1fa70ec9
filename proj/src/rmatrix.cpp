#include "dynr/rmatrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "dynr/series.hpp"

namespace dynr {

TensorOperator TensorOperator::identity(int n) {
  const int d = 1 << n;
  return {n, Eigen::MatrixXcd::Identity(d, d)};
}

TensorOperator TensorOperator::zero(int n) {
  const int d = 1 << n;
  return {n, Eigen::MatrixXcd::Zero(d, d)};
}

namespace {
void same_sites(const TensorOperator& a, const TensorOperator& b) {
  if (a.sites != b.sites)
    throw DomainError("operators on " + std::to_string(a.sites) + " and " + std::to_string(b.sites) + " sites cannot be combined");
}
}  // namespace

TensorOperator operator*(const TensorOperator& a, const TensorOperator& b) {
  same_sites(a, b);
  return {a.sites, a.m * b.m};
}
TensorOperator operator+(const TensorOperator& a, const TensorOperator& b) {
  same_sites(a, b);
  return {a.sites, a.m + b.m};
}
TensorOperator operator-(const TensorOperator& a, const TensorOperator& b) {
  same_sites(a, b);
  return {a.sites, a.m - b.m};
}
TensorOperator operator*(cplx s, const TensorOperator& a) { return {a.sites, s * a.m}; }

int site_weight(int b, int k, int n) { return ((b >> (n - k)) & 1) ? -1 : 1; }

int total_weight(int b, int n) {
  int w = 0;
  for (int k = 1; k <= n; ++k) w += site_weight(b, k, n);
  return w;
}

double weight_violation(const TensorOperator& op) {
  double v = 0.0;
  for (int r = 0; r < op.dim(); ++r)
    for (int c = 0; c < op.dim(); ++c)
      if (total_weight(r, op.sites) != total_weight(c, op.sites)) v = std::max(v, std::abs(op.m(r, c)));
  return v;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string kind_name(RKind k) {
  switch (k) {
    case RKind::Rminus: return "rminus";
    case RKind::Rplus: return "rplus";
    case RKind::Rbar: return "rbar";
    case RKind::Classical: return "classical";
  }
  return "?";
}

RKind parse_kind(const std::string& name) {
  for (RKind k : {RKind::Rminus, RKind::Rplus, RKind::Rbar, RKind::Classical})
    if (kind_name(k) == name) return k;
  throw ParameterError("unknown R-matrix kind '" + name + "' (expected rminus, rplus, rbar or classical)");
}

namespace {

// Theta factors theta(cz z + cl lambda + cg gamma) over three coefficient rings:
// plain values, gamma-jets, and Taylor series in a lambda increment.

struct ValueRing {
  cplx z, l, g;
  const ModularParams& p;
  cplx arg(int cz, int cl, int cg) const { return double(cz) * z + double(cl) * l + double(cg) * g; }
  cplx num(int cz, int cl, int cg) const { return theta(arg(cz, cl, cg), p); }
  cplx den(int cz, int cl, int cg, const char* name) const {
    const cplx a = arg(cz, cl, cg);
    require_off_lattice(a, p, name);
    return theta(a, p);
  }
  cplx one() const { return 1.0; }
};

struct GammaJetRing {
  cplx z, l;
  int order;
  const ModularParams& p;
  Jet num(int cz, int cl, int cg) const {
    ThetaConfig cfg;
    cfg.deriv_max = std::max(cfg.deriv_max, order);
    const auto d = theta_derivs(double(cz) * z + double(cl) * l, order, p, cfg);
    return shift_jet(d, double(cg), order);
  }
  Jet den(int cz, int cl, int cg, const char* name) const {
    require_off_lattice(double(cz) * z + double(cl) * l, p, name);
    return num(cz, cl, cg);
  }
  Jet one() const { return Jet::constant("gamma", 1.0, order); }
};

struct LambdaTaylorRing {
  cplx z, l, g;
  int order;
  const ModularParams& p;
  LaurentSeries num(int cz, int cl, int cg) const {
    const cplx a = double(cz) * z + double(cl) * l + double(cg) * g;
    if (cl == 0) return LaurentSeries::polynomial({theta(a, p)});
    ThetaConfig cfg;
    cfg.deriv_max = std::max(cfg.deriv_max, order);
    const LaurentSeries t = taylor_at(a, order, p, cfg);
    std::vector<cplx> c(static_cast<std::size_t>(order + 1));
    double s = 1.0;
    for (int k = 0; k <= order; ++k, s *= cl) c[static_cast<std::size_t>(k)] = s * t.coeff(k);
    return LaurentSeries(0, std::move(c), order);
  }
  LaurentSeries den(int cz, int cl, int cg, const char* name) const {
    require_off_lattice(double(cz) * z + double(cl) * l + double(cg) * g, p, name);
    return num(cz, cl, cg);
  }
  LaurentSeries one() const { return LaurentSeries::polynomial({1.0}); }
};

// Non-trivial entries of a six-vertex matrix: diagonal slots 1, 2 and the
// off-diagonal slots (1,2) = E_{1,-1}(x)E_{-1,1} and (2,1) = E_{-1,1}(x)E_{1,-1}.
template <class T>
struct SixVertex {
  T a_pm, a_mp, b_up, b_dn;
};

template <class Ring>
auto six_vertex(RKind kind, const Ring& r) {
  using T = decltype(r.one());
  const T thz = r.den(1, 0, 0, "theta(z)");  // a numerator, but z on the lattice is outside the domain
  const T thg = r.num(0, 0, 1);
  const T lam = r.den(0, 1, 0, "theta(lambda)");
  switch (kind) {
    case RKind::Rminus: {
      const T zg = r.den(1, 0, 1, "theta(z+gamma)");
      const T w = thz / zg;
      const T dyn = r.num(0, 1, -1) * r.num(0, 1, 1) / (lam * lam);
      return SixVertex<T>{w, dyn * w, r.num(1, 1, 0) * thg / (zg * lam), -(r.num(1, -1, 0) * thg / (zg * lam))};
    }
    case RKind::Rplus: {
      const T zg = r.den(1, 0, -1, "theta(z-gamma)");
      const T w = thz / zg;
      const T dyn = r.num(0, 1, -1) * r.num(0, 1, 1) / (lam * lam);
      return SixVertex<T>{w * dyn, w, -(r.num(1, 1, 0) * thg / (zg * lam)), r.num(1, -1, 0) * thg / (zg * lam)};
    }
    case RKind::Rbar: {
      const T zg = r.den(1, 0, -1, "theta(z-gamma)");
      const T mlam = r.den(0, -1, 0, "theta(-lambda)");
      return SixVertex<T>{r.num(0, 1, 1) * thz / (lam * zg), r.num(0, 1, -1) * thz / (lam * zg),
                          -(r.num(1, 1, 0) * thg / (lam * zg)), -(r.num(1, -1, 0) * thg / (mlam * zg))};
    }
    case RKind::Classical: break;
  }
  throw CapabilityError("the classical r-matrix has no six-vertex quantum form");
}

TensorOperator assemble(const SixVertex<cplx>& e) {
  TensorOperator out = TensorOperator::zero(2);
  out.m(0, 0) = 1.0;
  out.m(3, 3) = 1.0;
  out.m(1, 1) = e.a_pm;
  out.m(2, 2) = e.a_mp;
  out.m(1, 2) = e.b_up;
  out.m(2, 1) = e.b_dn;
  return out;
}

TensorOperator value_matrix(RKind kind, cplx z, cplx lambda, const ModularParams& p) {
  return assemble(six_vertex(kind, ValueRing{z, lambda, p.gamma(), p}));
}

JetOperator jet_matrix(RKind kind, cplx z, cplx lambda, int order, const ModularParams& p) {
  const GammaJetRing ring{z, lambda, order, p};
  const auto e = six_vertex(kind, ring);
  JetOperator out;
  out.entries.assign(16, Jet::constant("gamma", 0.0, order));
  out.entries[0] = ring.one();
  out.entries[15] = ring.one();
  out.entries[5] = e.a_pm;
  out.entries[10] = e.a_mp;
  out.entries[6] = e.b_up;
  out.entries[9] = e.b_dn;
  return out;
}

}  // namespace

TensorOperator r_minus(cplx z, cplx lambda, const ModularParams& p) { return value_matrix(RKind::Rminus, z, lambda, p); }
TensorOperator r_plus(cplx z, cplx lambda, const ModularParams& p) { return value_matrix(RKind::Rplus, z, lambda, p); }
TensorOperator r_bar(cplx z, cplx lambda, const ModularParams& p) { return value_matrix(RKind::Rbar, z, lambda, p); }

TensorOperator classical_r(cplx z, cplx lambda, const ModularParams& p) {
  require_off_lattice(z, p, "theta(z)");
  require_off_lattice(lambda, p, "theta(lambda)");
  const cplx g = log_deriv(z, p);
  const cplx tz = theta(z, p);
  TensorOperator out = TensorOperator::zero(2);
  out.m(0, 0) = 0.5 * g;
  out.m(1, 1) = -0.5 * g;
  out.m(2, 2) = -0.5 * g;
  out.m(3, 3) = 0.5 * g;
  out.m(1, 2) = theta(z + lambda, p) / (tz * theta(lambda, p));
  out.m(2, 1) = theta(z - lambda, p) / (tz * theta(-lambda, p));
  return out;
}

TensorOperator t_matrix(cplx lambda) {
  TensorOperator out = TensorOperator::zero(1);
  out.m(0, 0) = std::exp(-kI * kPi * lambda);
  out.m(1, 1) = std::exp(kI * kPi * lambda);
  return out;
}

TensorOperator RFamily::operator()(cplx z, cplx lambda) const {
  if (kind == RKind::Classical) return classical_r(z, lambda, params);
  return value_matrix(kind, z, lambda, params);
}

Eigen::Matrix4cd JetOperator::coefficient(int k) const {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = at(r, c)[k];
  return m;
}

JetOperator r_plus_jet(cplx z, cplx lambda, int order, const ModularParams& p) {
  return jet_matrix(RKind::Rplus, z, lambda, order, p);
}

JetOperator r_bar_jet(cplx z, cplx lambda, int order, const ModularParams& p) {
  return jet_matrix(RKind::Rbar, z, lambda, order, p);
}

Jet phi_ratio(cplx u, cplx u_prime, cplx lambda, int order, const ModularParams& p) {
  require_off_lattice(lambda, p, "theta(lambda)");
  if (u == u_prime) return Jet::constant("gamma", 1.0, order);
  return jet_exp(phi_log_shift(lambda, -u, order, p) - phi_log_shift(lambda, -u_prime, order, p));
}

JetOperator gauge_conjugate(cplx z, cplx lambda, int order, const ModularParams& p) {
  JetOperator out = r_plus_jet(z, lambda, order, p);
  std::array<Jet, 4> ratio;  // indexed by (t2 == -1) * 2 + (s1 == -1)
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) ratio[static_cast<std::size_t>(a * 2 + b)] = phi_ratio(a ? -1.0 : 1.0, b ? -1.0 : 1.0, lambda, order, p);
  for (int t = 0; t < 4; ++t)
    for (int s = 0; s < 4; ++s) {
      const int a = site_weight(t, 2, 2) < 0;
      const int b = site_weight(s, 1, 2) < 0;
      auto& e = out.entries[static_cast<std::size_t>(t * 4 + s)];
      e = e * ratio[static_cast<std::size_t>(a * 2 + b)];
    }
  return out;
}

double gauge_residual(cplx z, cplx lambda, int order, const ModularParams& p) {
  const JetOperator lhs = gauge_conjugate(z, lambda, order, p);
  const JetOperator rhs = r_bar_jet(z, lambda, order, p);
  double r = 0.0;
  for (std::size_t i = 0; i < 16; ++i) r = std::max(r, max_rel_coeff_diff(lhs.entries[i], rhs.entries[i]));
  return r;
}

std::vector<Eigen::Matrix4cd> lambda_taylor(RKind kind, cplx z, cplx lambda, int order, const ModularParams& p) {
  const auto e = six_vertex(kind, LambdaTaylorRing{z, lambda, p.gamma(), order, p});
  std::vector<Eigen::Matrix4cd> out(static_cast<std::size_t>(order + 1), Eigen::Matrix4cd::Zero());
  out[0](0, 0) = 1.0;
  out[0](3, 3) = 1.0;
  for (int k = 0; k <= order; ++k) {
    auto& m = out[static_cast<std::size_t>(k)];
    m(1, 1) = e.a_pm.coeff(k);
    m(2, 2) = e.a_mp.coeff(k);
    m(1, 2) = e.b_up.coeff(k);
    m(2, 1) = e.b_dn.coeff(k);
  }
  return out;
}

}  // namespace dynr
