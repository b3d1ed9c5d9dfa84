#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hosc/asymptotics.hpp"
#include "hosc/model.hpp"
#include "hosc/spectral.hpp"

namespace hosc {

inline constexpr const char* kVersion = "0.1.0";

/// Parsed run configuration, defaults applied.
struct RunConfig {
  double alpha = 1.0;
  double c0 = 0.0;
  std::vector<Term> terms;
  int nmax = 1;
  double tol = 1e-8;
  std::optional<double> epsilon;

  Potential potential() const { return Potential(alpha, terms, c0); }
  double contour_epsilon() const { return epsilon.value_or(0.5 * alpha); }
  nlohmann::json to_json() const;
};

/// Malformed JSON (message carries line and column) or a config that fails
/// the schema or potential validation (one entry per problem).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Schema: {"alpha": number > 0, "c0": number, "terms": [[a_x, a_xi, re, im], ...],
/// "nmax": integer >= 1, "tol": number > 0, "epsilon": number in (0, alpha)}.
/// c0, tol and epsilon are optional; unknown keys are rejected.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

struct ComputeResult {
  Spectrum spectrum;
  ResidualReport report;
};

/// spectrum() followed by residual_report() over n = 0 .. nmax.
ComputeResult run_compute(const RunConfig& config);

/// CSV header n,lambda_numeric,lambda_unperturbed,c0,w_term,residual,scaled_residual,alt_scaled;
/// reals printed with 17 significant digits, undefined fields left empty.
void write_residual_csv(std::ostream& out, const ResidualReport& report);
nlohmann::json compute_metadata(const RunConfig& config, const ComputeResult& result);

/// "runs/x.csv" -> "runs/x.meta.json"
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes the CSV and its .meta.json sidecar.
void write_compute_outputs(const RunConfig& config, const ComputeResult& result,
                           const std::filesystem::path& csv_path);

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::string> failures;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

/// bessel, ffactor, aj, matelem, window, first_order, resolvent
const std::vector<std::string>& suite_names();

/// Runs one named suite or "all". Unknown names are std::invalid_argument.
VerifyReport run_verify(const RunConfig& config, const std::string& suite,
                        std::uint64_t seed = 20240601);

void print_report(std::ostream& out, const VerifyReport& report);

/// suite,name,value rows of the recorded empirical constants.
void write_constants_csv(std::ostream& out, const VerifyReport& report);

/// "%.17g"
std::string format_real(double x);

}  // namespace hosc
