#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hosc/model.hpp"

namespace hosc {

/// One mirror pair {a, -a} of the potential folded into a single real wave.
/// Both points share |||a|||, so (c_a + c_{-a}) cos(phi) = 2 Re(c_a) cos(phi).
struct WaveTerm {
  double amplitude = 0.0;     // 2 Re(c_a)
  double frequency = 0.0;     // sqrt2 |||a|||
  double inverse_root = 0.0;  // |||a|||^{-1/2}
};

class AsymptoticModel {
 public:
  static AsymptoticModel from_potential(const Potential& v);

  double alpha() const { return alpha_; }
  double c0() const { return c0_; }
  const std::vector<WaveTerm>& waves() const { return waves_; }

  /// W(lambda) = 2^{1/4}/sqrt(pi) sum_a c_a |||a|||^{-1/2} cos(sqrt2 |||a||| lambda - pi/4)
  double w_value(double lambda) const;

  /// alpha (2n+1) + c0 + W(sqrt n) n^{-1/4}, n >= 1.
  double predict(int n) const;

  /// W(sqrt n) n^{-1/4}; zero at n = 0.
  double w_term(int n) const;

  /// 2^{1/4}/sqrt(pi) sum |c_a| |||a|||^{-1/2}, a bound on |W|.
  double w_bound() const;

 private:
  double alpha_ = 1.0;
  double c0_ = 0.0;
  std::vector<WaveTerm> waves_;
};

/// <V phi_n, phi_n> as a real number. Throws std::logic_error if the
/// imaginary part exceeds 1e-12 (impossible for a validated potential).
double first_order_diagonal(const Potential& v, int n);

struct ResidualRow {
  int n = 0;
  double lambda_numeric = 0.0;
  double lambda_unperturbed = 0.0;
  double c0 = 0.0;
  std::optional<double> w_term;           // n >= 1
  std::optional<double> residual;         // n >= 1
  std::optional<double> scaled_residual;  // r_n n^{1/2} / ln n, n >= 3
  std::optional<double> alt_scaled;       // r_n n^{3/4}, n >= 3
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
};

/// One row per (n, eigenvalue) pair, in the given order.
ResidualReport residual_report(const AsymptoticModel& model,
                               const std::vector<std::pair<int, double>>& spectrum);

}  // namespace hosc
