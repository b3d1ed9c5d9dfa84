#include <cstdio>
#include <fstream>
#include <ostream>

#include "hosc/cli.hpp"

namespace hosc {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ComputeResult run_compute(const RunConfig& config) {
  const Potential v = config.potential();
  ComputeResult result;
  result.spectrum = spectrum(v, config.nmax, config.tol);
  std::vector<std::pair<int, double>> pairs;
  pairs.reserve(config.nmax + 1);
  for (int n = 0; n <= config.nmax; ++n) pairs.emplace_back(n, result.spectrum.eigenvalues[n]);
  result.report = residual_report(AsymptoticModel::from_potential(v), pairs);
  return result;
}

void write_residual_csv(std::ostream& out, const ResidualReport& report) {
  const auto field = [](const std::optional<double>& x) {
    return x ? format_real(*x) : std::string();
  };
  out << "n,lambda_numeric,lambda_unperturbed,c0,w_term,residual,scaled_residual,alt_scaled\r\n";
  for (const auto& row : report.rows) {
    out << row.n << ',' << format_real(row.lambda_numeric) << ','
        << format_real(row.lambda_unperturbed) << ',' << format_real(row.c0) << ','
        << field(row.w_term) << ',' << field(row.residual) << ',' << field(row.scaled_residual)
        << ',' << field(row.alt_scaled) << "\r\n";
  }
}

nlohmann::json compute_metadata(const RunConfig& config, const ComputeResult& result) {
  const auto& s = result.spectrum;
  return {{"config", config.to_json()},
          {"basis_size", s.basis_size},
          {"check_basis_size", s.check_size},
          {"trusted_max", s.trusted_max},
          {"rows", result.report.rows.size()},
          {"convergence_tol", s.tolerance},
          {"max_sampled_change", s.max_sampled_change},
          {"eigensolver", "householder tridiagonalization + implicit QL"},
          {"warnings", s.warnings},
          {"version", kVersion}};
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".meta.json");
  return p;
}

void write_compute_outputs(const RunConfig& config, const ComputeResult& result,
                           const std::filesystem::path& csv_path) {
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  write_residual_csv(csv, result.report);
  std::ofstream meta(sidecar_path(csv_path), std::ios::binary);
  if (!meta) throw std::runtime_error("cannot write " + sidecar_path(csv_path).string());
  meta << compute_metadata(config, result).dump(2) << '\n';
}

}  // namespace hosc
