// Command-line front end: compute | verify | matelem | trace.
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hosc/cli.hpp"
#include "hosc/matelem.hpp"
#include "hosc/resolvent.hpp"

namespace {

using namespace hosc;

struct Options {
  std::string config;
  std::string out;
  int nmax = 0;
  std::string suite = "all";
  double epsilon = 0.0;
  std::uint64_t seed = 20240601;
  double alpha = 1.0;
  double a_x = 1.0;
  double a_xi = 0.0;
  int k = 0;
  int k_prime = 0;
  int n = 0;
  int jmax = 6;
};

RunConfig configure(const Options& o) {
  RunConfig config = load_config(o.config);
  if (o.nmax > 0) config.nmax = o.nmax;
  if (o.epsilon > 0.0) {
    if (!(o.epsilon < config.alpha)) throw ConfigError({"--epsilon must lie in (0, alpha)"});
    config.epsilon = o.epsilon;
  }
  return config;
}

int compute(const Options& o) {
  const RunConfig config = configure(o);
  const ComputeResult result = run_compute(config);
  for (const auto& w : result.spectrum.warnings) std::cerr << "warning: " << w << '\n';
  if (o.out.empty()) {
    write_residual_csv(std::cout, result.report);
  } else {
    write_compute_outputs(config, result, o.out);
    std::cerr << "wrote " << o.out << " and " << sidecar_path(o.out).string() << " (basis "
              << result.spectrum.basis_size << ", trusted through n=" << result.spectrum.trusted_max
              << ")\n";
  }
  return 0;
}

int verify(const Options& o) {
  const RunConfig config = configure(o);
  const VerifyReport report = run_verify(config, o.suite, o.seed);
  print_report(std::cout, report);
  if (!o.out.empty()) {
    std::ofstream csv(o.out, std::ios::binary);
    write_constants_csv(csv, report);
  }
  return report.passed() ? 0 : 1;
}

int matelem(const Options& o) {
  const PhasePoint a{o.a_x, o.a_xi};
  std::cout << "closed form : " << format_real(u_element(a, o.alpha, o.k, o.k_prime).real()) << ' '
            << format_real(u_element(a, o.alpha, o.k, o.k_prime).imag()) << '\n';
  if (o.k <= 200 && o.k_prime <= 200) {
    const Complex q = u_element_oracle(a, o.alpha, o.k, o.k_prime);
    std::cout << "quadrature  : " << format_real(q.real()) << ' ' << format_real(q.imag()) << '\n';
  } else {
    std::cout << "quadrature  : n/a (indices above 200)\n";
  }
  if (o.k <= o.k_prime) {
    const Complex b = u_element_bessel(a, o.alpha, o.k, o.k_prime);
    std::cout << "bessel      : " << format_real(b.real()) << ' ' << format_real(b.imag()) << '\n';
  } else {
    std::cout << "bessel      : n/a (series needs k <= k')\n";
  }
  return 0;
}

int trace(const Options& o) {
  const RunConfig config = configure(o);
  const Potential v = config.potential();
  const ResolventProblem problem(v, o.n);
  const Contour contour(v.alpha(), o.n, config.contour_epsilon());
  const auto sums =
      resolvent_sums(contour, window_partition(o.n, window_kappa(v), problem.basis_size()));
  const auto norms = problem.rvr_norms(contour);

  std::cout << "n = " << o.n << ", epsilon = " << format_real(contour.epsilon())
            << ", basis size = " << problem.basis_size() << '\n';
  std::cout << "s1 = " << format_real(sums.s1) << "\ns2a = " << format_real(sums.s2a)
            << "\ns2 = " << format_real(sums.s2) << "\ngap = " << format_real(sums.gap)
            << "\ninverse-square tail bound = " << format_real(sums.tail_bound) << '\n';
  std::cout << "||RVR||_op = " << format_real(norms.operator_norm)
            << "\n||RVR||_2 = " << format_real(norms.hilbert_schmidt)
            << "\n||RVR||_1 = " << format_real(norms.trace_norm) << '\n';
  for (const auto& w : norms.warnings) std::cerr << "warning: " << w << '\n';

  const auto te = problem.trace_eigenvalue(contour, o.jmax);
  std::cout << "neumann ratio = " << format_real(te.neumann_ratio) << '\n';
  for (int j = 1; j <= o.jmax; ++j) {
    std::cout << "t_" << j << " = " << format_real(te.orders[j - 1])
              << "   partial sum = " << format_real(te.partial_sums[j - 1]) << '\n';
  }
  std::cout << "eigenvalue = " << format_real(te.value) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of the harmonic oscillator with quasi-periodic perturbations"};
  app.require_subcommand(1);
  Options o;

  auto* c = app.add_subcommand("compute", "eigenvalues and residuals against the asymptotic formula");
  c->add_option("--config", o.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  c->add_option("--out", o.out, "CSV output path (sidecar .meta.json written next to it)");
  c->add_option("--nmax", o.nmax, "override nmax from the config");

  auto* v = app.add_subcommand("verify", "run property suites");
  v->add_option("--config", o.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  v->add_option("--suite", o.suite, "suite name or 'all'");
  v->add_option("--seed", o.seed, "seed for randomized suites");
  v->add_option("--epsilon", o.epsilon, "contour radius, in (0, alpha)");
  v->add_option("--out", o.out, "CSV of recorded empirical constants");

  auto* m = app.add_subcommand("matelem", "one <U_a phi_k, phi_k'> by all three routes");
  m->add_option("--alpha", o.alpha, "oscillator parameter");
  m->add_option("--ax", o.a_x, "modulation a_x");
  m->add_option("--axi", o.a_xi, "translation a_xi");
  m->add_option("--k", o.k, "row index")->check(CLI::NonNegativeNumber);
  m->add_option("--kp", o.k_prime, "column index")->check(CLI::NonNegativeNumber);

  auto* t = app.add_subcommand("trace", "resolvent diagnostics around one eigenvalue");
  t->add_option("--config", o.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  t->add_option("--n", o.n, "eigenvalue index")->required()->check(CLI::NonNegativeNumber);
  t->add_option("--jmax", o.jmax, "highest trace order")->check(CLI::Range(1, 15));
  t->add_option("--epsilon", o.epsilon, "contour radius, in (0, alpha)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c->parsed()) return compute(o);
    if (v->parsed()) return verify(o);
    if (m->parsed()) return matelem(o);
    if (t->parsed()) return trace(o);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
