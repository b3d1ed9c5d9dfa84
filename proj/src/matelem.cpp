#include "hosc/matelem.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hosc/specialfn.hpp"

namespace hosc {

namespace {

constexpr int kOracleMaxIndex = 200;
constexpr double kHermiteRescale = 1e150;

// Quantities of U_a that do not depend on (k, k').
struct Geometry {
  double rho = 0.0;
  double log_sqrt2_rho = 0.0;
  double laguerre_arg = 0.0;  // 2 rho^2
  double phase_angle = 0.0;   // arg(-w)
  bool zero = false;
};

Geometry geometry(PhasePoint a, double alpha) {
  Geometry g;
  g.zero = a.is_zero();
  g.rho = rho(a, alpha);
  if (g.zero) return g;
  const double sa = std::sqrt(alpha);
  const Complex w(0.5 * sa * a.a_xi, -0.5 * a.a_x / sa);
  g.phase_angle = std::arg(-w);
  g.log_sqrt2_rho = std::log(std::numbers::sqrt2 * g.rho);
  g.laguerre_arg = 2.0 * g.rho * g.rho;
  return g;
}

Complex diagonal_phase(const Geometry& g, int m) { return std::polar(1.0, m * g.phase_angle); }

// Closed form for k <= k' given the Laguerre value L_k^{(k'-k)}(2 rho^2).
// The magnitude prefactor is assembled in log space and the Laguerre
// mantissa multiplied in last.
Complex upper_element(const Geometry& g, int k, int k_prime, const ScaledValue& lag,
                      const Complex& phase) {
  if (g.zero) return k == k_prime ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  if (lag.mantissa == 0.0) return {0.0, 0.0};
  const int m = k_prime - k;
  const double log_mag = log_factorial_ratio(k, k_prime) + m * g.log_sqrt2_rho -
                         g.rho * g.rho + lag.log_scale + std::log(std::abs(lag.mantissa));
  // |<U_a phi_k, phi_k'>| <= 1; anything far above signals a bug upstream
  if (log_mag > 1.0) {
    throw std::overflow_error("u_element: magnitude overflow at k=" + std::to_string(k) +
                              ", k'=" + std::to_string(k_prime));
  }
  return std::copysign(std::exp(log_mag), lag.mantissa) * phase;
}

void require_index(int k, int k_prime) {
  if (k < 0 || k_prime < 0) throw std::invalid_argument("matrix element indices must be >= 0");
}

// psi_n / (pi^{-1/4} e^{-y^2/2}) by recurrence with rescaling; returns
// psi_n and psi_{n-1} sharing a common log scale.
struct HermitePair {
  double current = 0.0;
  double previous = 0.0;
  double log_scale = 0.0;
};

HermitePair scaled_hermite(int n, double y) {
  HermitePair h{1.0, 0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double next = std::sqrt(2.0 / (j + 1.0)) * y * h.current -
                        std::sqrt(static_cast<double>(j) / (j + 1.0)) * h.previous;
    h.previous = h.current;
    h.current = next;
    if (std::abs(h.current) > kHermiteRescale) {
      h.current /= kHermiteRescale;
      h.previous /= kHermiteRescale;
      h.log_scale += std::log(kHermiteRescale);
    }
  }
  return h;
}

const GaussHermiteRule& cached_rule(int n) {
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_hermite_rule(n)).first;
  return it->second;
}

}  // namespace

Complex u_element(PhasePoint a, double alpha, int k, int k_prime) {
  require_index(k, k_prime);
  if (k > k_prime) return std::conj(u_element(-a, alpha, k_prime, k));
  const Geometry g = geometry(a, alpha);
  if (g.zero) return k == k_prime ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  const int m = k_prime - k;
  return upper_element(g, k, k_prime, laguerre_scaled(k, m, g.laguerre_arg),
                       diagonal_phase(g, m));
}

Complex u_element_oracle(PhasePoint a, double alpha, int k, int k_prime) {
  require_index(k, k_prime);
  if (k > kOracleMaxIndex || k_prime > kOracleMaxIndex) {
    throw std::out_of_range("u_element_oracle: indices above " +
                            std::to_string(kOracleMaxIndex) + " exceed the quadrature cap");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  // nodes >= 4 (k + k') + 200, rounded up to a multiple of 64 to share rules
  const int wanted = 4 * (k + k_prime) + 200;
  const int nodes = ((wanted + 63) / 64) * 64;
  const auto& rule = cached_rule(nodes);

  const double sa = std::sqrt(alpha);
  const double shift = 0.5 * sa * a.a_xi;
  const double freq = a.a_x / sa;
  double sum_re = 0.0;
  double sum_im = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double y = rule.nodes[i];
    const double left = hermite_functions(k, y + shift)[k];
    const double right = hermite_functions(k_prime, y - shift)[k_prime];
    const double f = rule.scaled_weights[i] * left * right;
    sum_re += f * std::cos(freq * y);
    sum_im += f * std::sin(freq * y);
  }
  return {sum_re, sum_im};
}

Complex u_element_bessel(PhasePoint a, double alpha, int k, int k_prime, int jmax) {
  require_index(k, k_prime);
  if (k > k_prime) throw std::invalid_argument("u_element_bessel: requires k <= k'");
  const Geometry g = geometry(a, alpha);
  const int m = k_prime - k;
  const double total = static_cast<double>(k_prime) + k + 1.0;
  const double ratio = g.rho / std::sqrt(total);
  const double arg = 2.0 * g.rho * std::sqrt(total);
  const auto coeffs = a_coefficients(k, k_prime, jmax);
  double sum = 0.0;
  double power = 1.0;
  for (int j = 0; j <= jmax; ++j) {
    if (coeffs.values[j] != 0.0) sum += coeffs.values[j] * power * bessel_j(m + j, arg);
    power *= ratio;
  }
  return std::sqrt(f_factor(k, k_prime)) * sum * diagonal_phase(g, m);
}

Complex v_element(const Potential& v, int k, int k_prime) {
  require_index(k, k_prime);
  Complex sum = k == k_prime ? Complex(v.c0(), 0.0) : Complex(0.0, 0.0);
  for (const auto& t : v.terms()) sum += t.coefficient * u_element(t.point, v.alpha(), k, k_prime);
  return sum;
}

ComplexMatrix perturbation_matrix(const Potential& v, int n, int max_size) {
  if (n < 1 || n > max_size) {
    throw std::length_error("basis size " + std::to_string(n) + " outside [1, " +
                            std::to_string(max_size) + "]");
  }
  ComplexMatrix e(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) e(k, k) = Complex(v.c0(), 0.0);

  for (const auto& t : v.terms()) {
    const Geometry g = geometry(t.point, v.alpha());
    if (g.zero) continue;
    for (int m = 0; m < n; ++m) {
      const Complex phase = diagonal_phase(g, m);
      LaguerreSweep sweep(m, g.laguerre_arg);
      for (int k = 0; k + m < n; ++k) {
        e(k, k + m) += t.coefficient * upper_element(g, k, k + m, sweep.current(), phase);
        sweep.advance();
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int kp = k + 1; kp < n; ++kp) e(kp, k) = std::conj(e(k, kp));
  }
  return e;
}

MatrixElementTable build_matrix(const Potential& v, int n, int max_size) {
  MatrixElementTable table{v.alpha(), perturbation_matrix(v, n, max_size)};
  auto& e = table.entries;
  for (int k = 0; k < n; ++k) {
    e(k, k) = Complex(e(k, k).real() + v.alpha() * (2.0 * k + 1.0), e(k, k).imag());
  }
  return table;
}

std::vector<double> hermite_functions(int kmax, double y) {
  if (kmax < 0) throw std::invalid_argument("hermite_functions: negative order");
  std::vector<double> psi(kmax + 1);
  psi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * y * y);
  if (kmax >= 1) psi[1] = std::numbers::sqrt2 * y * psi[0];
  for (int j = 1; j < kmax; ++j) {
    psi[j + 1] = std::sqrt(2.0 / (j + 1.0)) * y * psi[j] -
                 std::sqrt(static_cast<double>(j) / (j + 1.0)) * psi[j - 1];
  }
  return psi;
}

GaussHermiteRule gauss_hermite_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_rule: need at least one node");
  std::vector<double> diag(n, 0.0);
  std::vector<double> off(n - 1);
  for (int j = 1; j < n; ++j) off[j - 1] = std::sqrt(0.5 * j);
  GaussHermiteRule rule;
  rule.nodes = tridiagonal_eigenvalues(std::move(diag), std::move(off));
  rule.scaled_weights.resize(n);
  const double log_norm0 = -0.25 * std::log(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    double y = rule.nodes[i];
    HermitePair h;
    for (int iter = 0; iter < 8; ++iter) {
      h = scaled_hermite(n, y);
      const double deriv = std::sqrt(2.0 * n) * h.previous - y * h.current;
      const double step = h.current / deriv;
      y -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(y))) break;
    }
    h = scaled_hermite(n, y);
    rule.nodes[i] = y;
    const double log_psi = log_norm0 - 0.5 * y * y + h.log_scale + std::log(std::abs(h.previous));
    rule.scaled_weights[i] = std::exp(-std::log(static_cast<double>(n)) - 2.0 * log_psi);
  }
  return rule;
}

}  // namespace hosc
