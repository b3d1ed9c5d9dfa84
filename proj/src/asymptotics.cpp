#include "hosc/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hosc/matelem.hpp"

namespace hosc {

namespace {

const double kWPrefactor = std::pow(2.0, 0.25) / std::sqrt(std::numbers::pi);

}  // namespace

AsymptoticModel AsymptoticModel::from_potential(const Potential& v) {
  validate(v);
  AsymptoticModel m;
  m.alpha_ = v.alpha();
  m.c0_ = v.c0();
  // keep one representative of each mirror pair: the one with a_x > 0, or
  // a_x == 0 and a_xi > 0
  for (const auto& t : v.terms()) {
    const auto& a = t.point;
    if (a.a_x < 0.0 || (a.a_x == 0.0 && a.a_xi < 0.0)) continue;
    const double norm = metric_norm(a, v.alpha());
    m.waves_.push_back({2.0 * t.coefficient.real(), std::numbers::sqrt2 * norm,
                        1.0 / std::sqrt(norm)});
  }
  return m;
}

double AsymptoticModel::w_value(double lambda) const {
  double sum = 0.0;
  for (const auto& w : waves_) {
    sum += w.amplitude * w.inverse_root * std::cos(w.frequency * lambda - 0.25 * std::numbers::pi);
  }
  return kWPrefactor * sum;
}

double AsymptoticModel::w_term(int n) const {
  if (n < 0) throw std::invalid_argument("w_term: n must be >= 0");
  if (n == 0) return 0.0;
  const double dn = n;
  return w_value(std::sqrt(dn)) * std::pow(dn, -0.25);
}

double AsymptoticModel::predict(int n) const {
  if (n < 1) throw std::invalid_argument("predict: n must be >= 1");
  return alpha_ * (2.0 * n + 1.0) + c0_ + w_term(n);
}

double AsymptoticModel::w_bound() const {
  double sum = 0.0;
  // each wave carries |c_a| + |c_{-a}| >= |2 Re c_a|
  for (const auto& w : waves_) sum += std::abs(w.amplitude) * w.inverse_root;
  return kWPrefactor * sum;
}

double first_order_diagonal(const Potential& v, int n) {
  if (n < 0) throw std::invalid_argument("first_order_diagonal: n must be >= 0");
  const Complex z = v_element(v, n, n);
  if (std::abs(z.imag()) > 1e-12) {
    throw std::logic_error("first_order_diagonal: diagonal element has imaginary part " +
                           std::to_string(z.imag()));
  }
  return z.real();
}

ResidualReport residual_report(const AsymptoticModel& model,
                               const std::vector<std::pair<int, double>>& spectrum) {
  ResidualReport report;
  report.rows.reserve(spectrum.size());
  for (const auto& [n, lambda] : spectrum) {
    ResidualRow row;
    row.n = n;
    row.lambda_numeric = lambda;
    row.lambda_unperturbed = model.alpha() * (2.0 * n + 1.0);
    row.c0 = model.c0();
    if (n >= 1) {
      row.w_term = model.w_term(n);
      row.residual = row.lambda_numeric - row.lambda_unperturbed - row.c0 - *row.w_term;
    }
    if (n >= 3) {
      const double dn = n;
      row.scaled_residual = *row.residual * std::sqrt(dn) / std::log(dn);
      row.alt_scaled = *row.residual * std::pow(dn, 0.75);
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace hosc
