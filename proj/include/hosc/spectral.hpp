#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hosc/matelem.hpp"
#include "hosc/model.hpp"

namespace hosc {

/// All eigenvalues of the table, ascending.
std::vector<double> eigensolve(const MatrixElementTable& table);

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Spectrum {
  double alpha = 1.0;
  int basis_size = 0;
  int check_size = 0;           // basis size of the last doubling check
  int trusted_max = -1;
  double tolerance = 0.0;
  double max_sampled_change = 0.0;  // over sampled indices <= trusted_max
  std::vector<double> eigenvalues;  // ascending, indices 0 .. basis_size - 1
  std::vector<std::string> warnings;
};

/// 2 nmax + ceil(8 sqrt(nmax)) + 64
int padded_basis_size(int nmax);

/// Eigenvalues of H + V that are stable under doubling of the basis.
///
/// Solves at N = padded_basis_size(nmax) and again at 2N, comparing every
/// ceil(nmax/32)-th index plus nmax and N - 1. trusted_max is the end of the
/// leading run of sampled indices whose change is <= convergence_tol. If
/// that stops short of nmax the basis is doubled again; past max_size a
/// TruncationError is thrown. nmax < 1 is std::invalid_argument.
Spectrum spectrum(const Potential& v, int nmax, double convergence_tol = 1e-8,
                  int max_size = kMaxBasisSize);

}  // namespace hosc
