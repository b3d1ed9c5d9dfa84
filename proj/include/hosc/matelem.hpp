#pragma once

#include <cstddef>
#include <vector>

#include "hosc/linalg.hpp"
#include "hosc/model.hpp"

namespace hosc {

/// <U_a phi_k, phi_k'> from the Laguerre closed form. For k <= k' this is
/// sqrt(k!/k'!) 2^{(k'-k)/2} (-w)^{k'-k} e^{-rho^2} L_k^{(k'-k)}(2 rho^2) with
/// w = sqrt(alpha) a_xi / 2 - i a_x / (2 sqrt(alpha)); for k > k' it is
/// conj(u_element(-a, alpha, k', k)).
Complex u_element(PhasePoint a, double alpha, int k, int k_prime);

/// The same inner product evaluated directly as an integral by Gauss-Hermite
/// quadrature with at least 4 (k + k') + 200 nodes. Only for k, k' <= 200;
/// throws std::out_of_range beyond that.
Complex u_element_oracle(PhasePoint a, double alpha, int k, int k_prime);

/// Partial sum through jmax of the Bessel-function series for
/// <U_a phi_k, phi_k'>, k <= k', including the phase and sqrt(F) prefactors.
Complex u_element_bessel(PhasePoint a, double alpha, int k, int k_prime, int jmax = 48);

/// <V phi_k, phi_k'> = c0 delta_{kk'} + sum_a c_a <U_a phi_k, phi_k'>.
Complex v_element(const Potential& v, int k, int k_prime);

/// Truncated matrix of H + V in the oscillator eigenbasis:
/// entries(k, k') = alpha (2k+1) delta_{kk'} + <V phi_k, phi_k'>.
struct MatrixElementTable {
  double alpha = 1.0;
  ComplexMatrix entries;

  std::size_t dimension() const { return entries.size(); }
};

inline constexpr int kMaxBasisSize = 12000;

/// Builds the N x N table. The upper triangle is filled one diagonal
/// k' - k = m at a time, sweeping the Laguerre recurrence along it, so each
/// upper entry equals v_element() bit for bit while costing O(1); the lower
/// triangle is its conjugate. Throws std::length_error if N is outside [1, max_size].
MatrixElementTable build_matrix(const Potential& v, int n, int max_size = kMaxBasisSize);

/// The N x N matrix of V alone, <V phi_k, phi_k'>, assembled the same way.
ComplexMatrix perturbation_matrix(const Potential& v, int n, int max_size = kMaxBasisSize);

/// Nodes and weights of the n-point Gauss-Hermite rule for int e^{-y^2} f(y) dy.
/// Weights are stored multiplied by e^{y^2} so that large rules do not
/// underflow: int g(y) dy ~= sum_i scaled_weights[i] g(nodes[i]).
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> scaled_weights;
};

/// Rule construction: Jacobi-matrix eigenvalues refined by Newton iteration on
/// the normalised Hermite function; weights from 1 / (n psi_{n-1}(y)^2).
GaussHermiteRule gauss_hermite_rule(int n);

/// Orthonormal Hermite functions psi_0(y) .. psi_kmax(y) by the two-term
/// recurrence psi_{j+1} = sqrt(2/(j+1)) y psi_j - sqrt(j/(j+1)) psi_{j-1}.
std::vector<double> hermite_functions(int kmax, double y);

}  // namespace hosc
