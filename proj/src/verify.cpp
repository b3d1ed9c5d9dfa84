#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "hosc/cli.hpp"
#include "hosc/matelem.hpp"
#include "hosc/resolvent.hpp"
#include "hosc/specialfn.hpp"

namespace hosc {

namespace {

// max / min of non-negative values; 1 when all are zero, infinity when only
// some are.
double spread(const std::vector<double>& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi == 0.0) return 1.0;
  if (*lo == 0.0) return INFINITY;
  return *hi / *lo;
}

void fail(SuiteResult& r, std::string message) {
  r.passed = false;
  r.failures.push_back(std::move(message));
}

std::string fmt_pair(int k, int kp) {
  return "(" + std::to_string(k) + ", " + std::to_string(kp) + ")";
}

SuiteResult bessel_suite(const RunConfig&, std::mt19937_64&) {
  SuiteResult r;
  r.name = "bessel";
  double worst = 0.0;
  long violations = 0;
  for (int n = 0; n <= 50; ++n) {
    for (int step = 0; step <= 1000; ++step) {
      const double x = 2.0 * n + 0.1 * step;
      if (x == 0.0) continue;
      const double ratio = std::abs(bessel_j(n, x)) * std::sqrt(x) / 4.0;
      worst = std::max(worst, ratio);
      if (ratio > 1.0) ++violations;
    }
  }
  r.constants.emplace_back("max |J_n(x)| sqrt(x) / 4", worst);
  if (violations) fail(r, std::to_string(violations) + " grid points exceed 4 x^{-1/2}");
  return r;
}

SuiteResult ffactor_suite(const RunConfig&, std::mt19937_64&) {
  SuiteResult r;
  r.name = "ffactor";
  double worst = 0.0;
  long violations = 0;
  for (int kp = 0; kp <= 500; ++kp) {
    for (int k = 0; k <= kp; ++k) {
      const double f = f_factor(k, kp);
      worst = std::max(worst, f);
      if (!(f > 0.0 && f <= 1.0)) ++violations;
    }
  }
  r.constants.emplace_back("max F", worst);
  if (violations) fail(r, std::to_string(violations) + " pairs with F outside (0, 1]");
  return r;
}

SuiteResult aj_suite(const RunConfig&, std::mt19937_64& rng) {
  SuiteResult r;
  r.name = "aj";
  std::uniform_int_distribution<int> top(2, 2000);
  double worst = -INFINITY;
  for (int sample = 0; sample < 200; ++sample) {
    const int kp = top(rng);
    const int mmax = static_cast<int>(std::floor(std::pow(kp, 2.0 / 3.0)));
    const int m = std::uniform_int_distribution<int>(0, mmax)(rng);
    const auto seq = a_coefficients(kp - m, kp, 60);
    const double total = 2.0 * kp - m + 1.0;
    // j = 0 holds with equality; compare in log space since the bound overflows
    for (int j = 1; j <= 60; ++j) {
      if (seq.values[j] == 0.0) continue;
      const double log_ratio = std::log(std::abs(seq.values[j])) - j / 3.0 * std::log(total);
      worst = std::max(worst, log_ratio);
      if (log_ratio > 0.0) fail(r, "A_" + std::to_string(j) + " at " + fmt_pair(kp - m, kp));
    }
  }
  r.constants.emplace_back("max ln(|A_j| / (k'+k+1)^{j/3})", worst);
  return r;
}

SuiteResult matelem_suite(const RunConfig& config, std::mt19937_64& rng) {
  SuiteResult r;
  r.name = "matelem";
  const Potential v = config.potential();
  std::uniform_int_distribution<int> top(0, 50);
  double oracle_gap = 0.0;
  double bessel_gap = 0.0;
  int bessel_skipped = 0;
  for (const auto& t : v.terms()) {
    const double rh = rho(t.point, v.alpha());
    for (int sample = 0; sample < 40; ++sample) {
      // pairs with k' - k <= k'^{2/3}, where the A_j bound holds
      const int kp = top(rng);
      const int mmax = static_cast<int>(std::floor(std::pow(kp, 2.0 / 3.0)));
      const int k = kp - std::uniform_int_distribution<int>(0, mmax)(rng);
      const Complex closed = u_element(t.point, v.alpha(), k, kp);
      oracle_gap = std::max(oracle_gap, std::abs(closed - u_element_oracle(t.point, v.alpha(), k, kp)));
      if (rh * std::pow(k + kp + 1.0, -1.0 / 6.0) <= 0.5) {
        bessel_gap = std::max(bessel_gap, std::abs(closed - u_element_bessel(t.point, v.alpha(), k, kp)));
      } else {
        ++bessel_skipped;
      }
    }
  }
  r.constants.emplace_back("max |closed - quadrature|", oracle_gap);
  r.constants.emplace_back("max |closed - bessel series|", bessel_gap);
  r.constants.emplace_back("bessel comparisons skipped", bessel_skipped);
  if (oracle_gap > 1e-10) fail(r, "closed form and quadrature differ by more than 1e-10");
  if (bessel_gap > 1e-10) fail(r, "closed form and Bessel series differ by more than 1e-10");
  return r;
}

SuiteResult window_suite(const RunConfig& config, std::mt19937_64&) {
  SuiteResult r;
  r.name = "window";
  const Potential v = config.potential();
  const double kappa = window_kappa(v);
  std::vector<double> scaled;
  for (int n : {64, 256, 1024, 4096}) {
    const auto w = window_partition(n, kappa, 2 * n + 1);
    double sup = 0.0;
    for (int k = w.lower; k <= w.upper; ++k) {
      for (int kp = k; kp <= w.upper; ++kp) sup = std::max(sup, std::abs(v_element(v, k, kp)));
    }
    scaled.push_back(sup * std::pow(n, 0.25));
    r.constants.emplace_back("sup |V_kk'| n^{1/4} at n=" + std::to_string(n), scaled.back());
  }
  const double s = spread(scaled);
  r.constants.emplace_back("max/min", s);
  if (!(s < 2.0)) fail(r, "window sup times n^{1/4} varies by a factor >= 2");
  return r;
}

SuiteResult first_order_suite(const RunConfig& config, std::mt19937_64&) {
  SuiteResult r;
  r.name = "first_order";
  const Potential v = config.potential();
  const auto model = AsymptoticModel::from_potential(v);
  double running = 0.0;
  double before = 0.0;
  for (int n = 16; n <= 4096; n *= 2) {
    const double e = std::abs(first_order_diagonal(v, n) - model.w_term(n)) * std::sqrt(n);
    r.constants.emplace_back("|V_nn - W n^{-1/4}| n^{1/2} at n=" + std::to_string(n), e);
    running = std::max(running, e);
    if (n == 256) before = running;
  }
  r.constants.emplace_back("sup over [16, 256]", before);
  r.constants.emplace_back("sup over [16, 4096]", running);
  if (!std::isfinite(running)) fail(r, "non-finite first-order remainder");
  if (running > before) fail(r, "sup grows when the range is extended past 256");
  return r;
}

SuiteResult resolvent_suite(const RunConfig& config, std::mt19937_64&) {
  SuiteResult r;
  r.name = "resolvent";
  const Potential v = config.potential();
  const double eps = config.contour_epsilon();
  const double kappa = window_kappa(v);
  const double v_bound = std::abs(v.c0()) + v.perturbation_bound();
  std::vector<double> hs_scaled, s2a, traces;
  for (int n : {64, 256, 1024}) {
    const ResolventProblem problem(v, n);
    const Contour contour(v.alpha(), n, eps);
    const auto sums = resolvent_sums(contour, window_partition(n, kappa, problem.basis_size()));
    const auto norms = problem.rvr_norms(contour);
    const double t1 = problem.trace_orders(contour, 1)[0];
    const double vnn = first_order_diagonal(v, n);
    const std::string at = " at n=" + std::to_string(n);
    r.constants.emplace_back("s1 / ln n" + at, sums.s1 / std::log(n));
    r.constants.emplace_back("s2a" + at, sums.s2a);
    r.constants.emplace_back("s2 n^{1/2}" + at, sums.s2 * std::sqrt(n));
    r.constants.emplace_back("gap / n^{1/2}" + at, sums.gap / std::sqrt(n));
    r.constants.emplace_back("||RVR||_op" + at, norms.operator_norm);
    r.constants.emplace_back("||RVR||_2 n^{1/4}" + at, norms.hilbert_schmidt * std::pow(n, 0.25));
    r.constants.emplace_back("||RVR||_1" + at, norms.trace_norm);
    r.constants.emplace_back("|t_1 - V_nn|" + at, std::abs(t1 - vnn));
    hs_scaled.push_back(norms.hilbert_schmidt * std::pow(n, 0.25));
    s2a.push_back(sums.s2a);
    traces.push_back(norms.trace_norm);
    if (std::abs(t1 - vnn) > 1e-8) fail(r, "first trace order differs from V_nn" + at);
    if (norms.trace_norm > v_bound * (sums.s2a + sums.tail_bound)) {
      fail(r, "trace norm exceeds ||V|| sum |lambda - lambda_k|^{-2}" + at);
    }
  }
  if (!(spread(s2a) < 1.1)) fail(r, "inverse-square sum varies by more than 10%");
  if (!(spread(hs_scaled) < 2.0)) fail(r, "||RVR||_2 n^{1/4} varies by a factor >= 2");
  r.constants.emplace_back("||RVR||_2 n^{1/4} max/min", spread(hs_scaled));
  r.constants.emplace_back("||RVR||_1 max", *std::max_element(traces.begin(), traces.end()));
  return r;
}

using Suite = std::function<SuiteResult(const RunConfig&, std::mt19937_64&)>;

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> table{
      {"bessel", bessel_suite},   {"ffactor", ffactor_suite},         {"aj", aj_suite},
      {"matelem", matelem_suite}, {"window", window_suite},           {"first_order", first_order_suite},
      {"resolvent", resolvent_suite}};
  return table;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

VerifyReport run_verify(const RunConfig& config, const std::string& suite, std::uint64_t seed) {
  VerifyReport report;
  bool matched = false;
  for (const auto& [name, fn] : suites()) {
    if (suite != "all" && suite != name) continue;
    matched = true;
    // each suite gets its own stream so results do not depend on selection
    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(name));
    report.suites.push_back(fn(config, rng));
  }
  if (!matched) throw std::invalid_argument("unknown suite \"" + suite + "\"");
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const auto& s : report.suites) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << '\n';
    for (const auto& [name, value] : s.constants) out << "    " << name << " = " << format_real(value) << '\n';
    for (const auto& f : s.failures) out << "    failure: " << f << '\n';
  }
  out << (report.passed() ? "all suites passed" : "some suites failed") << '\n';
}

void write_constants_csv(std::ostream& out, const VerifyReport& report) {
  out << "suite,name,value\r\n";
  for (const auto& s : report.suites) {
    for (const auto& [name, value] : s.constants) {
      out << s.name << ",\"" << name << "\"," << format_real(value) << "\r\n";
    }
  }
}

}  // namespace hosc
