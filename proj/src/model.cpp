#include "hosc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hosc {

namespace {

constexpr double kConjugacyTolerance = 1e-12;

std::string describe(PhasePoint a) {
  std::ostringstream out;
  out.precision(17);
  out << "(" << a.a_x + 0.0 << ", " << a.a_xi + 0.0 << ")";
  return out.str();
}

std::string join(const std::vector<std::string>& parts) {
  std::string text = "invalid potential:";
  for (const auto& p : parts) text += "\n  - " + p;
  return text;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be positive and finite");
  }
}

}  // namespace

double metric_norm(PhasePoint a, double alpha) {
  require_alpha(alpha);
  return std::sqrt(a.a_x * a.a_x / alpha + alpha * a.a_xi * a.a_xi);
}

double rho(PhasePoint a, double alpha) { return 0.5 * metric_norm(a, alpha); }

double Potential::perturbation_bound() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::abs(t.coefficient);
  return sum;
}

Potential Potential::cosine(double alpha, double amplitude) {
  return Potential(alpha, {{{1.0, 0.0}, Complex(0.5 * amplitude, 0.0)},
                           {{-1.0, 0.0}, Complex(0.5 * amplitude, 0.0)}});
}

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

ValidationReport validate(const Potential& potential) {
  std::vector<std::string> violations;
  const double alpha = potential.alpha();
  const bool alpha_ok = alpha > 0.0 && std::isfinite(alpha);
  if (!alpha_ok) violations.push_back("alpha must be positive and finite");
  if (!std::isfinite(potential.c0())) violations.push_back("c0 must be finite");

  const auto& terms = potential.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    const bool finite = std::isfinite(t.point.a_x) && std::isfinite(t.point.a_xi) &&
                        std::isfinite(t.coefficient.real()) && std::isfinite(t.coefficient.imag());
    if (!finite) {
      violations.push_back("term " + std::to_string(i) + " has a non-finite entry");
      continue;
    }
    if (t.point.is_zero()) {
      violations.push_back("term " + std::to_string(i) +
                           " sits at the origin; give that coefficient as c0");
      continue;
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (terms[j].point == t.point) {
        violations.push_back("duplicate phase point " + describe(t.point) + " (terms " +
                             std::to_string(j) + " and " + std::to_string(i) + ")");
      }
    }
    const auto mirror = std::find_if(terms.begin(), terms.end(),
                                     [&](const Term& u) { return u.point == -t.point; });
    if (mirror == terms.end()) {
      violations.push_back("phase point " + describe(t.point) + " has no mirror term at " +
                           describe(-t.point));
    } else if (std::abs(mirror->coefficient - std::conj(t.coefficient)) > kConjugacyTolerance) {
      // report each offending pair once
      if (std::distance(terms.begin(), mirror) > static_cast<std::ptrdiff_t>(i)) {
        violations.push_back("coefficients at " + describe(t.point) + " and " +
                             describe(-t.point) + " are not complex conjugates");
      }
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  ValidationReport report;
  report.operator_bound = std::abs(potential.c0());
  double gamma = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) {
    const double norm = metric_norm(t.point, alpha);
    const double c = std::abs(t.coefficient);
    gamma = std::min(gamma, norm);
    report.norm_p_minus_three_halves += std::pow(norm, -1.5) * c;
    report.norm_p0 += c;
    report.norm_p3 += norm * norm * norm * c;
    report.perturbation_bound += c;
  }
  report.operator_bound += report.perturbation_bound;
  if (!terms.empty()) {
    report.gamma = gamma;
    report.kappa = std::min(1.0 / 3.0, gamma / (2.0 * std::sqrt(3.0)));
  }
  return report;
}

double window_kappa(const Potential& potential) {
  double gamma = std::numeric_limits<double>::infinity();
  for (const auto& t : potential.terms()) {
    gamma = std::min(gamma, metric_norm(t.point, potential.alpha()));
  }
  return std::min(1.0 / 3.0, gamma / (2.0 * std::sqrt(3.0)));
}

}  // namespace hosc
