#include "hosc/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hosc/matelem.hpp"

namespace hosc {

namespace {

constexpr int kLanczosMaxSteps = 80;
constexpr double kQuadratureTolerance = 1e-10;

void matvec(const ComplexMatrix& a, const std::vector<Complex>& x, std::vector<Complex>& y) {
  const std::size_t n = a.size();
  for (std::size_t r = 0; r < n; ++r) {
    const Complex* row = a.row(r);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      const Complex p = row[c] * x[c];
      re += p.real();
      im += p.imag();
    }
    y[r] = {re, im};
  }
}

double norm2(const std::vector<Complex>& x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return std::sqrt(s);
}

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// Largest |eigenvalue| of the Hermitian operator D V D, D = diag(weight), by
// Lanczos with full reorthogonalisation. The start vector is peaked at `peak`.
double weighted_norm(const ComplexMatrix& v, const std::vector<double>& weight, int peak) {
  const std::size_t n = v.size();
  std::vector<Complex> q(n), w(n), tmp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double d = std::abs(static_cast<double>(k) - peak);
    q[k] = (1.0 + 0.1 * std::sin(1.0 + k)) / (1.0 + d);
  }
  const double q0 = norm2(q);
  for (auto& z : q) z /= q0;

  std::vector<std::vector<Complex>> basis;
  std::vector<double> alphas, betas;
  double estimate = 0.0;
  const int steps = static_cast<int>(std::min<std::size_t>(n, kLanczosMaxSteps));
  for (int step = 0; step < steps; ++step) {
    basis.push_back(q);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = weight[k] * q[k];
    matvec(v, tmp, w);
    for (std::size_t k = 0; k < n; ++k) w[k] *= weight[k];
    alphas.push_back(inner(q, w).real());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const Complex c = inner(b, w);
        for (std::size_t k = 0; k < n; ++k) w[k] -= c * b[k];
      }
    }
    const auto ritz = tridiagonal_eigenvalues(alphas, betas);
    const double next = std::max(std::abs(ritz.front()), std::abs(ritz.back()));
    const bool settled = step >= 8 && std::abs(next - estimate) <= 1e-13 * next;
    estimate = next;
    const double beta = norm2(w);
    if (settled || beta <= 1e-14 * std::max(estimate, 1e-300)) break;
    betas.push_back(beta);
    for (std::size_t k = 0; k < n; ++k) q[k] = w[k] / beta;
  }
  return estimate;
}

std::vector<Complex> resolvent_diagonal(double alpha, int n_basis, Complex lambda) {
  std::vector<Complex> r(n_basis);
  for (int k = 0; k < n_basis; ++k) r[k] = 1.0 / (alpha * (2.0 * k + 1.0) - lambda);
  return r;
}

// Bound on sum_{k >= N} |lambda - lambda_k|^{-2} over the contour.
double inverse_square_tail(const Contour& c, int basis_size) {
  const double d = 2.0 * c.alpha() * (basis_size - 1 - c.n()) - c.epsilon();
  return 1.0 / (2.0 * c.alpha() * d);
}

}  // namespace

Contour::Contour(double alpha, int n, double epsilon, int node_count)
    : alpha_(alpha), n_(n), epsilon_(epsilon), node_count_(node_count) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("contour: alpha must be > 0");
  if (n < 0) throw std::invalid_argument("contour: n must be >= 0");
  if (!(epsilon > 0.0 && epsilon < alpha)) {
    throw std::invalid_argument("contour: epsilon must lie in (0, alpha)");
  }
  if (node_count < 32 || node_count % 2 != 0) {
    throw std::invalid_argument("contour: node count must be even and >= 32");
  }
}

double Contour::angle(int m) const { return 2.0 * std::numbers::pi * m / node_count_; }

Complex Contour::node(int m) const { return center() + std::polar(epsilon_, angle(m)); }

WindowPartition window_partition(int n, double kappa, int basis_size) {
  if (n < 0 || basis_size <= n) throw std::invalid_argument("window_partition: need 0 <= n < N");
  const double half = kappa * std::sqrt(static_cast<double>(n));
  WindowPartition w;
  w.n = n;
  w.basis_size = basis_size;
  w.lower = std::max(0, static_cast<int>(std::ceil(n - half)));
  w.upper = std::min(basis_size - 1, static_cast<int>(std::floor(n + half)));
  return w;
}

int resolvent_basis_size(int n) {
  return 2 * n + static_cast<int>(std::ceil(8.0 * std::sqrt(static_cast<double>(n)))) + 64;
}

ResolventSums resolvent_sums(const Contour& contour, const WindowPartition& window) {
  if (window.n != contour.n()) throw std::invalid_argument("resolvent_sums: n mismatch");
  if (window.basis_size < contour.n() + 2) {
    throw std::invalid_argument("resolvent_sums: basis too small for n");
  }
  ResolventSums out;
  out.gap = std::numeric_limits<double>::infinity();
  for (int m = 0; m < contour.node_count(); ++m) {
    const Complex lambda = contour.node(m);
    double s1 = 0.0, s2a = 0.0, s2 = 0.0;
    for (int k = 0; k < window.basis_size; ++k) {
      const double d = std::abs(contour.alpha() * (2.0 * k + 1.0) - lambda);
      s2a += 1.0 / (d * d);
      if (window.in_window(k)) {
        s1 += 1.0 / d;
      } else {
        s2 += 1.0 / (d * d);
        out.gap = std::min(out.gap, d);
      }
    }
    out.s1 = std::max(out.s1, s1);
    out.s2a = std::max(out.s2a, s2a);
    out.s2 = std::max(out.s2, s2);
  }
  out.tail_bound = inverse_square_tail(contour, window.basis_size);
  return out;
}

ResolventProblem::ResolventProblem(const Potential& v, int n, int basis_size)
    : potential_(v), n_(n) {
  validate(v);
  if (n < 0) throw std::invalid_argument("resolvent: n must be >= 0");
  const int size = basis_size == 0 ? resolvent_basis_size(n) : basis_size;
  if (size < n + 2) throw std::invalid_argument("resolvent: basis size must exceed n + 1");
  matrix_ = perturbation_matrix(v, size);
}

void ResolventProblem::require_contour(const Contour& contour) const {
  if (contour.n() != n_ || contour.alpha() != potential_.alpha()) {
    throw std::invalid_argument("resolvent: contour does not match the problem's n and alpha");
  }
}

RvrNorms ResolventProblem::rvr_norms(const Contour& contour) const {
  require_contour(contour);
  const int size = basis_size();
  const double alpha = potential_.alpha();
  const int nodes = contour.node_count();
  RvrNorms out;

  std::vector<double> abs2(static_cast<std::size_t>(size) * size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) abs2[static_cast<std::size_t>(r) * size + c] = std::norm(matrix_(r, c));
  }

  std::vector<double> weight(size), weight2(size);
  for (int m = 0; m < nodes; ++m) {
    const auto r = resolvent_diagonal(alpha, size, contour.node(m));
    for (int k = 0; k < size; ++k) {
      weight[k] = std::abs(r[k]);
      weight2[k] = weight[k] * weight[k];
    }
    double hs2 = 0.0;
    for (int k = 0; k < size; ++k) {
      const double* row = abs2.data() + static_cast<std::size_t>(k) * size;
      double inner_sum = 0.0;
      for (int c = 0; c < size; ++c) inner_sum += row[c] * weight2[c];
      hs2 += weight2[k] * inner_sum;
    }
    out.hilbert_schmidt = std::max(out.hilbert_schmidt, std::sqrt(hs2));

    if (m <= nodes / 2) {
      out.operator_norm = std::max(out.operator_norm, weighted_norm(matrix_, weight, n_));
      if (m % (nodes / 16) == 0) {
        ComplexMatrix b(size);
        for (int i = 0; i < size; ++i) {
          for (int c = 0; c <= i; ++c) b(i, c) = weight[i] * matrix_(i, c) * weight[c];
        }
        const auto eig = hermitian_eigenvalues(b).eigenvalues;
        double trace = 0.0;
        for (double e : eig) trace += std::abs(e);
        out.trace_norm = std::max(out.trace_norm, trace);
      }
    }
  }

  double v_bound = std::abs(potential_.c0()) + potential_.perturbation_bound();
  out.hs_tail_bound =
      std::sqrt(2.0 * inverse_square_tail(contour, size)) * v_bound / contour.epsilon();
  if (out.hs_tail_bound > 0.01 * out.hilbert_schmidt && v_bound > 0.0) {
    std::ostringstream msg;
    msg << "truncation at N=" << size << ": Hilbert-Schmidt tail bound " << out.hs_tail_bound
        << " exceeds 1% of the computed norm " << out.hilbert_schmidt;
    out.warnings.push_back(msg.str());
  }
  return out;
}

std::vector<double> ResolventProblem::trace_orders(const Contour& contour, int jmax) const {
  require_contour(contour);
  const int nodes = contour.node_count();
  if (jmax < 1) throw std::invalid_argument("trace_orders: jmax must be >= 1");
  if (jmax >= nodes / 2) throw std::invalid_argument("trace_orders: jmax must be < M/2");
  const int size = basis_size();
  const double alpha = potential_.alpha();

  std::vector<Complex> full(jmax + 1), half(jmax + 1);
  std::vector<Complex> s(jmax), y(size), z(size);
  // D[m][t]: sum over compositions of t into m parts p of prod s_{p-1}
  std::vector<std::vector<Complex>> dp(jmax + 1, std::vector<Complex>(jmax + 1));

  for (int m = 0; m < nodes; ++m) {
    const Complex lambda = contour.node(m);
    const auto r = resolvent_diagonal(alpha, size, lambda);
    for (int k = 0; k < size; ++k) y[k] = matrix_(k, n_);
    s[0] = y[n_];
    for (int l = 1; l < jmax; ++l) {
      for (int k = 0; k < size; ++k) z[k] = r[k] * y[k];
      z[n_] = 0.0;
      matvec(matrix_, z, y);
      s[l] = y[n_];
    }

    for (auto& row : dp) std::fill(row.begin(), row.end(), Complex{});
    dp[0][0] = 1.0;
    for (int parts = 1; parts <= jmax; ++parts) {
      for (int t = parts; t <= jmax; ++t) {
        Complex acc{};
        for (int p = 1; p <= t - parts + 1; ++p) acc += dp[parts - 1][t - p] * s[p - 1];
        dp[parts][t] = acc;
      }
    }

    const Complex rn = r[n_];
    const Complex jacobian = std::polar(contour.epsilon(), contour.angle(m));
    for (int j = 1; j <= jmax; ++j) {
      Complex a{};
      Complex power = 1.0;
      for (int parts = 1; parts <= j; ++parts) {
        power *= rn;
        a += power * dp[parts][j] / static_cast<double>(parts);
      }
      full[j] += a * jacobian;
      if (m % 2 == 0) half[j] += a * jacobian;
    }
  }

  std::vector<double> t(jmax);
  for (int j = 1; j <= jmax; ++j) {
    const double value = -full[j].real() / nodes;
    const double coarse = -half[j].real() / (nodes / 2);
    if (std::abs(value - coarse) > kQuadratureTolerance * (1.0 + std::abs(value))) {
      std::ostringstream msg;
      msg << "trace order " << j << " at n=" << n_ << ": " << nodes << " nodes give " << value
          << " but " << nodes / 2 << " give " << coarse;
      throw QuadratureError(msg.str());
    }
    t[j - 1] = value;
  }
  return t;
}

double ResolventProblem::neumann_ratio(const Contour& contour) const {
  require_contour(contour);
  const int size = basis_size();
  std::vector<double> weight(size);
  double ratio = 0.0;
  for (int m = 0; m <= contour.node_count() / 2; ++m) {
    const auto r = resolvent_diagonal(potential_.alpha(), size, contour.node(m));
    for (int k = 0; k < size; ++k) weight[k] = std::sqrt(std::abs(r[k]));
    ratio = std::max(ratio, weighted_norm(matrix_, weight, n_));
  }
  return ratio;
}

TraceEigenvalue ResolventProblem::trace_eigenvalue(const Contour& contour, int jmax) const {
  TraceEigenvalue out;
  out.neumann_ratio = neumann_ratio(contour);
  if (!(out.neumann_ratio < 1.0)) {
    std::ostringstream msg;
    msg << "Neumann series diverges at n=" << n_ << ", epsilon=" << contour.epsilon()
        << ": || |R|^1/2 V |R|^1/2 || reaches " << out.neumann_ratio;
    throw NeumannDivergence(msg.str());
  }
  out.orders = trace_orders(contour, jmax);
  double value = contour.center();
  for (int j = 1; j <= jmax; ++j) {
    value += (j % 2 == 1 ? 1.0 : -1.0) * out.orders[j - 1];
    out.partial_sums.push_back(value);
  }
  out.value = value;
  return out;
}

RvrNorms rvr_norms(const Potential& v, int n, double epsilon, int basis_size) {
  return ResolventProblem(v, n, basis_size).rvr_norms(Contour(v.alpha(), n, epsilon));
}

double trace_order_j(const Potential& v, int n, double epsilon, int basis_size, int j) {
  return ResolventProblem(v, n, basis_size).trace_orders(Contour(v.alpha(), n, epsilon), j).back();
}

TraceEigenvalue trace_eigenvalue(const Potential& v, int n, double epsilon, int basis_size,
                                 int jmax) {
  return ResolventProblem(v, n, basis_size).trace_eigenvalue(Contour(v.alpha(), n, epsilon), jmax);
}

}  // namespace hosc
