// Command-line front end: verification suites, matrix evaluation, formal series and kernel checks.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "dynr/dybe.hpp"
#include "dynr/kernels.hpp"
#include "dynr/rmatrix.hpp"
#include "dynr/series.hpp"
#include "dynr/verify.hpp"

using namespace dynr;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string tau = "0.75i";
  std::string gamma = "0.05";
  ModularParams params() const { return ModularParams::make(parse_complex(tau), parse_complex(gamma)); }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tau", c.tau, "modular parameter, Im(tau) > 0 (e.g. 0.75i)")->capture_default_str();
  app->add_option("--gamma", c.gamma, "dynamical step gamma = -hbar")->capture_default_str();
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void print_row(const char* label, int k, cplx v) { std::printf("%s %d %s %s\n", label, k, fmt(v.real()).c_str(), fmt(v.imag()).c_str()); }

// ---------------------------------------------------------------- verify

int cmd_verify(const VerificationConfig& cfg) {
  cfg.validate();
  const Report report = run_report(cfg);
  const std::string text = serialize(report);
  std::optional<std::string> path = cfg.report_path;
  if (!path) {
    if (auto dir = default_report_dir()) path = (std::filesystem::path(*dir) / "dynr_report.json").string();
  }
  if (path) {
    std::ofstream out(*path);
    if (!out) throw ParameterError("cannot write report to " + *path);
    out << text << '\n';
  } else {
    std::cout << text << '\n';
  }
  const Summary& s = report.summary;
  std::fprintf(stderr, "total %d  passed %d  failed %d  skipped %d  recorded %d  (%lld ms)\n", s.total, s.passed, s.failed,
               s.skipped, s.recorded, static_cast<long long>(report.wall_time_ms));
  return s.failed == 0 ? kExitPass : kExitFailure;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const std::string& kind, const std::string& z, const std::string& lambda, const Common& c) {
  const RFamily f{parse_kind(kind), c.params()};
  const TensorOperator m = f(parse_complex(z), parse_complex(lambda));
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col)
      std::printf("%s%s %s", col ? "  " : "", fmt(m.m(r, col).real()).c_str(), fmt(m.m(r, col).imag()).c_str());
    std::printf("\n");
  }
  return kExitPass;
}

// ---------------------------------------------------------------- series

struct SeriesOpts {
  int order = 8;
  std::string lambda = "0.3+0.1i";
  std::string zeta = "0.3+0.1i";
  std::string x = "0.3+0.1i";
  std::string K = "-2";
  int p = 1;
  int zeta_order = 24;
};

int cmd_series(const std::string& which, const SeriesOpts& o, const Common& c) {
  const ModularParams p = c.params();
  if (o.order < 0) throw ParameterError("--order must be >= 0");
  if (which == "phi") {
    const cplx l = parse_complex(o.lambda);
    const Jet j = solve_phi(l, o.order, p);
    const auto r = phi_functional_residuals(l, o.order, p);
    std::printf("# phi(lambda)/theta(lambda)^(1/2) as a gamma-jet; residual of phi(l+g)/phi(l-g) = theta(l)/theta(l-g)\n");
    std::printf("# order re im residual\n");
    for (int k = 0; k <= o.order; ++k)
      std::printf("%d %s %s %s\n", k, fmt(j[k].real()).c_str(), fmt(j[k].imag()).c_str(), fmt(r[static_cast<std::size_t>(k)]).c_str());
    return kExitPass;
  }
  if (which == "fk") {
    if (o.p < 1) throw ParameterError("--p must be a positive integer");
    const cplx zeta = parse_complex(o.zeta);
    const double K = -2.0 * o.p;
    const Jet series = solve_fk_series(K, std::max(o.zeta_order, o.order + 2), o.order, p, zeta).jet_at_base();
    const Jet closed = fk_closed_jet(o.p, zeta, o.order, p);
    const Jet forward = fk_closed_jet(o.p, zeta, o.order, p, 1.0);
    std::printf("# K = %g at zeta = %s; hbar-jet of the series solution and of the closed form\n", K, format_complex(zeta).c_str());
    std::printf("# order series closed closed(zeta+hbar)   [re/im pairs]\n");
    for (int k = 0; k <= o.order; ++k)
      std::printf("%d %s %s  %s %s  %s %s\n", k, fmt(series[k].real()).c_str(), fmt(series[k].imag()).c_str(), fmt(closed[k].real()).c_str(),
                  fmt(closed[k].imag()).c_str(), fmt(forward[k].real()).c_str(), fmt(forward[k].imag()).c_str());
    std::printf("series_vs_closed %s\n", fmt(max_rel_coeff_diff(series, closed)).c_str());
    std::printf("series_vs_closed_forward %s\n", fmt(max_rel_coeff_diff(series, forward)).c_str());
    std::printf("functional_equation_residual %s\n", fmt(fk_functional_residual(o.p, zeta, p, -1)).c_str());
    std::printf("functional_equation_forward_residual %s\n", fmt(fk_functional_residual(o.p, zeta, p, 1)).c_str());
    return kExitPass;
  }
  if (which == "a") {
    const cplx x = parse_complex(o.x), K = parse_complex(o.K);
    const Jet a = solve_a_series(x, o.order, p);
    std::printf("# log A at x = %s as an hbar-jet\n# order re im\n", format_complex(x).c_str());
    for (int k = 0; k <= o.order; ++k) std::printf("%d %s %s\n", k, fmt(a[k].real()).c_str(), fmt(a[k].imag()).c_str());
    std::printf("a_fk_link_residual %s\n", fmt(a_fk_link_residual(x, K, o.order, p)).c_str());
    return kExitPass;
  }
  if (which == "shift-identity") {
    const auto r = shift_operator_residuals(parse_complex(o.x), o.order, p);
    std::printf("# order residual\n");
    for (int k = 0; k <= o.order; ++k) std::printf("%d %s\n", k, fmt(r[static_cast<std::size_t>(k)]).c_str());
    return kExitPass;
  }
  throw ParameterError("unknown series subcommand " + which);
}

// ---------------------------------------------------------------- kernels

int cmd_kernels(const std::string& lambda, const std::string& sector, int N, const std::string& z, const Common& c) {
  const ModularParams p = c.params();
  Sector s;
  if (sector == "zero") s = Sector::zero();
  else if (sector == "lambda") s = Sector::at(parse_complex(lambda));
  else throw ParameterError("--sector must be 'lambda' or 'zero'");
  const KernelBasis b = dual_basis(s, N, p);
  std::printf("order %d\n", N);
  std::printf("condition %s\n", fmt(b.condition).c_str());
  std::printf("duality_deviation %s\n", fmt(duality_deviation(b)).c_str());
  std::printf("kernel_sum_residual %s\n", fmt(kernel_sum_residual(s, parse_complex(z), N, p)).c_str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic dynamical R-matrices: evaluation and identity verification"};
  app.require_subcommand(1);

  VerificationConfig vcfg;
  std::string v_tau = "0.75i", v_gamma = "0.05", v_report;
  auto* verify = app.add_subcommand("verify", "run seeded verification suites and emit a JSON report");
  verify->add_option("--tau", v_tau, "modular parameter")->capture_default_str();
  verify->add_option("--gamma", v_gamma, "dynamical step")->capture_default_str();
  verify->add_option("--suite", vcfg.suites, "theta, series, kernels, rmatrix, dybe, rll, det, gauge, all")
      ->delimiter(',')
      ->capture_default_str();
  verify->add_option("--samples", vcfg.samples, "samples per check")->capture_default_str();
  verify->add_option("--seed", vcfg.seed, "random seed")->capture_default_str();
  verify->add_option("--tol", vcfg.tolerance, "base tolerance; per-check tolerances scale with it")->capture_default_str();
  verify->add_option("--report", v_report, "write the JSON report here (default: $DYNR_REPORT_DIR or stdout)");
  verify->add_option("--threads", vcfg.threads, "worker threads")->capture_default_str();
  verify->add_option("--laurent-order", vcfg.orders.laurent, "Laurent truncation order")->capture_default_str();
  verify->add_option("--jet-order", vcfg.orders.jet, "gamma/hbar jet order")->capture_default_str();
  verify->add_option("--kernel-order", vcfg.orders.kernel_N, "kernel basis size N")->capture_default_str();

  Common ec;
  std::string e_kind, e_z, e_lambda;
  auto* eval = app.add_subcommand("eval", "print a 4x4 R-matrix as re/im pairs in basis order");
  eval->add_option("--kind", e_kind, "rminus|rplus|rbar|classical")->required();
  eval->add_option("--z", e_z, "spectral parameter")->required();
  eval->add_option("--lambda", e_lambda, "dynamical parameter")->required();
  add_common(eval, ec);

  Common sc;
  SeriesOpts so;
  auto* series = app.add_subcommand("series", "formal series: phi, f_K, A and the shift identity");
  series->require_subcommand(1);
  std::string series_which;
  for (const char* name : {"phi", "fk", "a", "shift-identity"}) {
    auto* sub = series->add_subcommand(name);
    add_common(sub, sc);
    sub->add_option("--order", so.order, "jet order")->capture_default_str();
    sub->add_option("--lambda", so.lambda, "dynamical parameter (phi)")->capture_default_str();
    sub->add_option("--zeta", so.zeta, "expansion point (fk)")->capture_default_str();
    sub->add_option("--x", so.x, "expansion point (a, shift-identity)")->capture_default_str();
    sub->add_option("--p", so.p, "K = -2p (fk)")->capture_default_str();
    sub->add_option("--K", so.K, "central charge for the A-f_K link (a)")->capture_default_str();
    sub->add_option("--zeta-order", so.zeta_order, "zeta-Taylor order of the series solution (fk)")->capture_default_str();
    sub->callback([&series_which, name] { series_which = name; });
  }

  Common kc;
  std::string k_lambda = "0.3+0.1i", k_sector = "lambda", k_z = "0.21+0.13i";
  int k_order = 12;
  auto* kernels = app.add_subcommand("kernels", "dual bases and half-current kernel identities");
  kernels->add_option("--lambda", k_lambda, "sector parameter")->capture_default_str();
  kernels->add_option("--sector", k_sector, "lambda|zero")->capture_default_str();
  kernels->add_option("--order", k_order, "basis size N")->capture_default_str();
  kernels->add_option("--z", k_z, "evaluation point for the kernel sum")->capture_default_str();
  add_common(kernels, kc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) {
      vcfg.tau = parse_complex(v_tau);
      vcfg.gamma = parse_complex(v_gamma);
      if (!v_report.empty()) vcfg.report_path = v_report;
      return cmd_verify(vcfg);
    }
    if (*eval) return cmd_eval(e_kind, e_z, e_lambda, ec);
    if (*series) return cmd_series(series_which, so, sc);
    if (*kernels) return cmd_kernels(k_lambda, k_sector, k_order, k_z, kc);
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    // singular factors and ill-conditioned kernels carry their details in the message
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitUsage;
}
