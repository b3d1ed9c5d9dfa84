#include "hosc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hosc/linalg.hpp"

namespace hosc {

std::vector<double> eigensolve(const MatrixElementTable& table) {
  return hermitian_eigenvalues(table.entries).eigenvalues;
}

int padded_basis_size(int nmax) {
  return 2 * nmax + static_cast<int>(std::ceil(8.0 * std::sqrt(static_cast<double>(nmax)))) + 64;
}

Spectrum spectrum(const Potential& v, int nmax, double convergence_tol, int max_size) {
  if (nmax < 1) throw std::invalid_argument("spectrum: nmax must be >= 1");
  if (!(convergence_tol > 0.0)) throw std::invalid_argument("spectrum: tolerance must be > 0");
  validate(v);

  Spectrum out;
  out.alpha = v.alpha();
  out.tolerance = convergence_tol;
  if (v.perturbation_bound() >= v.alpha()) {
    std::ostringstream msg;
    msg << "sum |c_a| = " << v.perturbation_bound() << " >= alpha = " << v.alpha()
        << "; low-index eigenvalues may not follow the perturbative labelling";
    out.warnings.push_back(msg.str());
  }

  int n = padded_basis_size(nmax);
  if (2 * n > max_size) {
    throw TruncationError("spectrum: doubling check for nmax=" + std::to_string(nmax) +
                          " needs basis size " + std::to_string(2 * n) + " > cap " +
                          std::to_string(max_size));
  }
  std::vector<double> base = eigensolve(build_matrix(v, n, max_size));
  const int stride = (nmax + 31) / 32;

  while (true) {
    const int doubled = 2 * n;
    const std::vector<double> check = eigensolve(build_matrix(v, doubled, max_size));

    std::vector<int> samples;
    for (int i = 0; i < nmax; i += stride) samples.push_back(i);
    samples.push_back(nmax);
    samples.push_back(n - 1);

    int trusted = -1;
    double worst = 0.0;
    for (int i : samples) {
      const double change = std::abs(check[i] - base[i]);
      if (!(change <= convergence_tol)) break;
      trusted = i;
      worst = std::max(worst, change);
    }

    if (trusted >= nmax) {
      out.basis_size = n;
      out.check_size = doubled;
      out.trusted_max = trusted;
      out.max_sampled_change = worst;
      out.eigenvalues = std::move(base);
      return out;
    }
    if (2 * doubled > max_size) {
      throw TruncationError("spectrum: eigenvalues only stable through index " +
                            std::to_string(trusted) + " < nmax=" + std::to_string(nmax) +
                            " at basis size " + std::to_string(n) + " (cap " +
                            std::to_string(max_size) + ")");
    }
    n = doubled;
    base = check;
  }
}

}  // namespace hosc
