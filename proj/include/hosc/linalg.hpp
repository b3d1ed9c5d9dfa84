#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hosc {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const { return n_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  Complex* row(std::size_t r) { return data_.data() + r * n_; }
  const Complex* row(std::size_t r) const { return data_.data() + r * n_; }

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

/// Eigenvalues of the real symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal (off.size() == diag.size() - 1), by implicit-shift
/// QL iteration. Returned ascending. Throws std::runtime_error if an
/// eigenvalue fails to converge within 60 sweeps.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off);

/// How hermitian_eigenvalues() reduced its input.
enum class ReductionPath { real_gauge, complex };

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // ascending
  ReductionPath path = ReductionPath::complex;
  double dropped_imaginary_bound = 0.0;  // bound on the eigenvalue error of the real path
};

/// All eigenvalues of a Hermitian matrix (only the lower triangle is read).
///
/// The matrix is first conjugated by a diagonal unitary chosen so that the
/// first subdiagonal becomes real and non-negative. If every entry is then
/// real up to a row-sum bound of 1e-12 (1 + max|A_ij|), the real part is
/// tridiagonalised with real Householder reflections; otherwise the complex
/// matrix is tridiagonalised directly. Both end in implicit QL.
HermitianEigenResult hermitian_eigenvalues(const ComplexMatrix& a);

}  // namespace hosc
