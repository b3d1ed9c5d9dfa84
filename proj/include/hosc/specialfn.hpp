#pragma once

#include <vector>

namespace hosc {

/// A value carried as mantissa * exp(log_scale) so that very large or very
/// small intermediate results survive in double precision.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const;
};

/// Generalised Laguerre polynomial L_k^{(m)}(x), forward three-term
/// recurrence in the degree.
double laguerre(int k, int m, double x);

/// Same recurrence as laguerre() but rescaled whenever the iterates grow past
/// 1e150, so L_k^{(m)}(x) is returned as a ScaledValue and never overflows.
ScaledValue laguerre_scaled(int k, int m, double x);

/// Runs the degree recurrence for L_i^{(m)}(x), i = 0, 1, 2, ... one step at
/// a time. laguerre_scaled() is a thin loop over this class, so any caller
/// sweeping the degree sees bit-identical values.
class LaguerreSweep {
 public:
  LaguerreSweep(int m, double x);

  int degree() const { return degree_; }
  ScaledValue current() const { return {curr_, log_scale_}; }
  void advance();

 private:
  int m_;
  double x_;
  int degree_ = 0;
  double prev_ = 0.0;
  double curr_ = 1.0;
  double log_scale_ = 0.0;
};

/// Bessel function of the first kind J_n(x) for x >= 0, from the integral
/// (1/pi) int_0^pi cos(x sin t - n t) dt by composite 16-point Gauss-Legendre
/// with ceil(x) + n + 16 panels. Throws std::domain_error outside
/// 0 <= n <= 1e6, 0 <= x <= 1e7 or for non-finite x.
double bessel_j(int n, double x);

/// ln sqrt(k!/k'!) = -1/2 sum_{j=k+1}^{k'} ln j. Requires k <= k'.
double log_factorial_ratio(int k, int k_prime);

/// F_{k',k} = (k'!/k!) (2/(k'+k+1))^{k'-k}, evaluated in log space.
double f_factor(int k, int k_prime);

struct AjSequence {
  int k = 0;
  int k_prime = 0;
  std::vector<double> values;  // A_0 .. A_jmax
};

/// Coefficients of the Bessel-series expansion of the oscillator matrix
/// elements: A_0 = 1, A_1 = 0, A_2 = (k'-k+1)/2 and
/// (j+1) A_{j+1} = (j+k'-k) A_{j-1} - (k'+k+1) A_{j-2}.
AjSequence a_coefficients(int k, int k_prime, int jmax = 48);

}  // namespace hosc
