#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hosc {

using Complex = std::complex<double>;

/// A point a = (a_x, a_xi) of phase space. a_x multiplies x in the
/// modulation e^{i a_x x}, a_xi is the translation length.
struct PhasePoint {
  double a_x = 0.0;
  double a_xi = 0.0;

  PhasePoint operator-() const { return {-a_x, -a_xi}; }
  bool operator==(const PhasePoint&) const = default;
  bool is_zero() const { return a_x == 0.0 && a_xi == 0.0; }
};

/// (a_x^2 / alpha + alpha a_xi^2)^{1/2}
double metric_norm(PhasePoint a, double alpha);

/// Half the metric norm.
double rho(PhasePoint a, double alpha);

struct Term {
  PhasePoint point;
  Complex coefficient;
};

/// Oscillator parameter alpha together with V = c0 + sum_a c_a U_a over a
/// finite set of nonzero phase points. Plain data; validate() checks the
/// structural conditions.
class Potential {
 public:
  Potential() = default;
  Potential(double alpha, std::vector<Term> terms, double c0 = 0.0)
      : alpha_(alpha), terms_(std::move(terms)), c0_(c0) {}

  double alpha() const { return alpha_; }
  double c0() const { return c0_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// sum over nonzero phase points of |c_a|
  double perturbation_bound() const;

  /// V = t cos(x) as a two-term potential.
  static Potential cosine(double alpha = 1.0, double amplitude = 1.0);

 private:
  double alpha_ = 1.0;
  std::vector<Term> terms_;
  double c0_ = 0.0;
};

struct ValidationReport {
  std::optional<double> gamma;  // unset when there are no nonzero points
  double kappa = 1.0 / 3.0;
  double norm_p_minus_three_halves = 0.0;
  double norm_p0 = 0.0;
  double norm_p3 = 0.0;
  double operator_bound = 0.0;       // sum over all of Lambda, c0 included
  double perturbation_bound = 0.0;   // nonzero points only
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Checks alpha > 0, finiteness, distinct nonzero points, the mirror
/// condition -a in Lambda and c_{-a} = conj(c_a) to 1e-12. Throws
/// ValidationError naming every violated condition.
ValidationReport validate(const Potential& potential);

/// Half-width factor of the index window around n: min{1/3, gamma/(2 sqrt 3)}.
double window_kappa(const Potential& potential);

}  // namespace hosc
