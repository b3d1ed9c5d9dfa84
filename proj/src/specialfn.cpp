#include "hosc/specialfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hosc {

namespace {

constexpr double kRescaleThreshold = 1e150;
constexpr int kGaussLegendreOrder = 16;
constexpr int kBesselMaxOrder = 1'000'000;
constexpr double kBesselMaxArgument = 1e7;
// Below this many terms the log-factorial sum is done term by term.
constexpr int kDirectSumLimit = 32;

struct GaussLegendreRule {
  std::array<double, kGaussLegendreOrder> nodes{};
  std::array<double, kGaussLegendreOrder> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_16.
GaussLegendreRule make_gauss_legendre() {
  GaussLegendreRule rule;
  constexpr int n = kGaussLegendreOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussLegendreRule& gauss_legendre() {
  static const GaussLegendreRule rule = make_gauss_legendre();
  return rule;
}

void require_ordered(int k, int k_prime, const char* what) {
  if (k < 0 || k_prime < 0 || k > k_prime) {
    throw std::invalid_argument(std::string(what) + ": requires 0 <= k <= k', got k=" +
                                std::to_string(k) + ", k'=" + std::to_string(k_prime));
  }
}

}  // namespace

double ScaledValue::value() const {
  if (mantissa == 0.0) return 0.0;
  return mantissa * std::exp(log_scale);
}

LaguerreSweep::LaguerreSweep(int m, double x) : m_(m), x_(x) {
  if (m < 0) throw std::invalid_argument("LaguerreSweep: negative order");
}

void LaguerreSweep::advance() {
  const double i = degree_;
  double next;
  if (degree_ == 0) {
    next = 1.0 + m_ - x_;
  } else {
    next = ((2.0 * i + 1.0 + m_ - x_) * curr_ - (i + m_) * prev_) / (i + 1.0);
  }
  prev_ = curr_;
  curr_ = next;
  ++degree_;
  if (std::abs(curr_) > kRescaleThreshold) {
    curr_ /= kRescaleThreshold;
    prev_ /= kRescaleThreshold;
    log_scale_ += std::log(kRescaleThreshold);
  }
}

double laguerre(int k, int m, double x) {
  if (k < 0 || m < 0) throw std::invalid_argument("laguerre: negative degree or order");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + m - x;
  for (int i = 1; i < k; ++i) {
    const double next = ((2.0 * i + 1.0 + m - x) * curr - (i + m) * prev) / (i + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

ScaledValue laguerre_scaled(int k, int m, double x) {
  if (k < 0) throw std::invalid_argument("laguerre_scaled: negative degree");
  LaguerreSweep sweep(m, x);
  while (sweep.degree() < k) sweep.advance();
  return sweep.current();
}

double bessel_j(int n, double x) {
  if (n < 0 || n > kBesselMaxOrder) {
    throw std::domain_error("bessel_j: order " + std::to_string(n) + " outside [0, 1e6]");
  }
  if (!std::isfinite(x) || x < 0.0 || x > kBesselMaxArgument) {
    throw std::domain_error("bessel_j: argument outside [0, 1e7]");
  }
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;

  const auto& rule = gauss_legendre();
  const long panels = static_cast<long>(std::ceil(x)) + n + 16;
  const double h = std::numbers::pi / static_cast<double>(panels);
  double sum = 0.0;
  for (long p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    double panel = 0.0;
    for (int i = 0; i < kGaussLegendreOrder; ++i) {
      const double t = mid + 0.5 * h * rule.nodes[i];
      panel += rule.weights[i] * std::cos(x * std::sin(t) - n * t);
    }
    sum += panel;
  }
  const double value = 0.5 * h * sum / std::numbers::pi;
  // the integrand is bounded by one, so is the exact value
  return std::clamp(value, -1.0, 1.0);
}

double log_factorial_ratio(int k, int k_prime) {
  require_ordered(k, k_prime, "log_factorial_ratio");
  if (k == k_prime) return 0.0;
  if (k_prime - k <= kDirectSumLimit) {
    double sum = 0.0;
    for (int j = k + 1; j <= k_prime; ++j) sum += std::log(static_cast<double>(j));
    return -0.5 * sum;
  }
  return 0.5 * (std::lgamma(k + 1.0) - std::lgamma(k_prime + 1.0));
}

double f_factor(int k, int k_prime) {
  require_ordered(k, k_prime, "f_factor");
  // Pair j with k'+k+1-j: each pair contributes 1 - ((h-j)/h)^2 with
  // h = (k'+k+1)/2, an unpaired middle factor is exactly one. Every log term
  // is then <= 0, so the result never exceeds one after rounding either.
  const double h = 0.5 * (static_cast<double>(k_prime) + k + 1.0);
  const int pairs = (k_prime - k) / 2;
  double log_f = 0.0;
  for (int j = k + 1; j <= k + pairs; ++j) {
    const double d = (h - j) / h;
    log_f += std::log1p(-d * d);
  }
  return std::exp(log_f);
}

AjSequence a_coefficients(int k, int k_prime, int jmax) {
  require_ordered(k, k_prime, "a_coefficients");
  if (jmax < 0) throw std::invalid_argument("a_coefficients: negative jmax");
  AjSequence seq{k, k_prime, {}};
  auto& a = seq.values;
  a.reserve(jmax + 1);
  const double diff = k_prime - k;
  const double total = static_cast<double>(k_prime) + k + 1.0;
  a.push_back(1.0);
  if (jmax >= 1) a.push_back(0.0);
  if (jmax >= 2) a.push_back(0.5 * (diff + 1.0));
  for (int j = 2; j < jmax; ++j) {
    a.push_back(((j + diff) * a[j - 1] - total * a[j - 2]) / (j + 1.0));
  }
  return seq;
}

}  // namespace hosc
