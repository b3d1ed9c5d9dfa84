#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hosc/linalg.hpp"
#include "hosc/model.hpp"

namespace hosc {

/// M equally spaced nodes lambda_m = alpha (2n+1) + epsilon e^{i theta_m},
/// theta_m = 2 pi m / M, on the anticlockwise circle around the n-th
/// unperturbed eigenvalue.
class Contour {
 public:
  /// Requires 0 < epsilon < alpha and M even, M >= 32 (std::invalid_argument).
  Contour(double alpha, int n, double epsilon, int node_count = 128);

  /// epsilon = alpha / 2, M = 128
  static Contour standard(double alpha, int n) { return Contour(alpha, n, 0.5 * alpha); }

  double alpha() const { return alpha_; }
  int n() const { return n_; }
  double epsilon() const { return epsilon_; }
  int node_count() const { return node_count_; }
  double center() const { return alpha_ * (2.0 * n_ + 1.0); }
  double angle(int m) const;
  Complex node(int m) const;

 private:
  double alpha_;
  int n_;
  double epsilon_;
  int node_count_;
};

/// I = {k : |k - n| <= kappa sqrt(n)} and its complement J inside [0, N).
struct WindowPartition {
  int n = 0;
  int basis_size = 0;
  int lower = 0;  // first index of I
  int upper = 0;  // last index of I

  bool in_window(int k) const { return k >= lower && k <= upper; }
  int window_size() const { return upper - lower + 1; }
};

WindowPartition window_partition(int n, double kappa, int basis_size);

/// 2n + ceil(8 sqrt(n)) + 64, the default truncation for the resolvent at n.
int resolvent_basis_size(int n);

struct ResolventSums {
  double s1 = 0.0;   // max over nodes of sum_{k in I} |lambda - lambda_k|^{-1}
  double s2a = 0.0;  // max over nodes of sum_k |lambda - lambda_k|^{-2}
  double s2 = 0.0;   // max over nodes of sum_{k in J} |lambda - lambda_k|^{-2}
  double gap = 0.0;  // min over nodes and k in J of |lambda - lambda_k|
  double tail_bound = 0.0;  // bound on the omitted k >= N part of s2a and s2
};

/// Sums over the unperturbed eigenvalues lambda_k = alpha (2k+1), k < N.
ResolventSums resolvent_sums(const Contour& contour, const WindowPartition& window);

struct RvrNorms {
  double operator_norm = 0.0;     // Lanczos estimate
  double hilbert_schmidt = 0.0;
  double trace_norm = 0.0;
  double hs_tail_bound = 0.0;     // bound on the Hilbert-Schmidt mass beyond N
  std::vector<std::string> warnings;
};

struct TraceEigenvalue {
  double value = 0.0;
  std::vector<double> orders;        // t_1 .. t_jmax
  std::vector<double> partial_sums;  // alpha (2n+1) + sum_{i<=j} (-1)^{i+1} t_i
  double neumann_ratio = 0.0;
};

class NeumannDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// V and the unperturbed resolvent R(lambda) = (H - lambda)^{-1} on the
/// first N oscillator eigenfunctions, for contours around a fixed n.
class ResolventProblem {
 public:
  /// basis_size 0 selects resolvent_basis_size(n).
  ResolventProblem(const Potential& v, int n, int basis_size = 0);

  int n() const { return n_; }
  int basis_size() const { return static_cast<int>(matrix_.size()); }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Norms of R V R, maximised over contour nodes. Hilbert-Schmidt uses
  /// every node; the operator norm (Lanczos) uses the nodes with
  /// theta in [0, pi], which suffices because R V R and its value at the
  /// conjugate node have the same singular values; the trace norm (a full
  /// eigendecomposition each) uses every M/16-th node in [0, pi].
  RvrNorms rvr_norms(const Contour& contour) const;

  /// t_j = (1/2 pi i) oint Tr lambda R (V R)^j d lambda for j = 1 .. jmax.
  ///
  /// Uses oint Tr lambda R (V R)^j = -oint (1/j) Tr (V R)^j and keeps only
  /// the part of (1/j) Tr (V R)^j that is singular at lambda_n, which is a
  /// polynomial in r_n = 1/(lambda_n - lambda) with coefficients built from
  /// s_l = <V (R_Q V)^l phi_n, phi_n>, R_Q the resolvent with the n-th
  /// projection removed. Throws QuadratureError if the rule on every other
  /// node disagrees with the full rule by more than 1e-10 (1 + |t_j|).
  std::vector<double> trace_orders(const Contour& contour, int jmax) const;

  /// max over nodes of || |R|^{1/2} V |R|^{1/2} ||, an upper bound on the
  /// spectral radius of V R(lambda); the Neumann series converges below 1.
  double neumann_ratio(const Contour& contour) const;

  /// alpha (2n+1) + sum_{j<=jmax} (-1)^{j+1} t_j after checking
  /// neumann_ratio() < 1 (NeumannDivergence otherwise).
  TraceEigenvalue trace_eigenvalue(const Contour& contour, int jmax) const;

 private:
  void require_contour(const Contour& contour) const;

  Potential potential_;
  int n_;
  ComplexMatrix matrix_;
};

RvrNorms rvr_norms(const Potential& v, int n, double epsilon, int basis_size = 0);
double trace_order_j(const Potential& v, int n, double epsilon, int basis_size, int j);
TraceEigenvalue trace_eigenvalue(const Potential& v, int n, double epsilon, int basis_size,
                                 int jmax);

}  // namespace hosc
