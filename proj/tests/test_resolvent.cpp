#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hosc/linalg.hpp"
#include "hosc/matelem.hpp"
#include "hosc/resolvent.hpp"
#include "hosc/spectral.hpp"

using namespace hosc;

TEST_CASE("contour construction") {
  CHECK_THROWS_AS(Contour(1.0, 5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Contour(1.0, 5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Contour(1.0, 5, 0.5, 31), std::invalid_argument);
  CHECK_THROWS_AS(Contour(1.0, 5, 0.5, 16), std::invalid_argument);
  const Contour c(2.0, 7, 0.3, 64);
  CHECK(c.center() == 30.0);
  for (int m = 0; m < 64; ++m) {
    CHECK(std::abs(c.node(m) - c.center()) == doctest::Approx(0.3).epsilon(1e-13));
  }
  CHECK(c.node(16).imag() == doctest::Approx(0.3));
  const auto s = Contour::standard(3.0, 2);
  CHECK(s.epsilon() == 1.5);
  CHECK(s.node_count() == 128);
}

TEST_CASE("window partition") {
  const double kappa = 1.0 / (2.0 * std::sqrt(3.0));
  for (int n : {0, 1, 10, 64, 100, 4096}) {
    const auto w = window_partition(n, kappa, 2 * n + 10);
    CHECK(w.in_window(n));
    CHECK(w.window_size() <= 2.0 * kappa * std::sqrt(n) + 1.0);
    for (int k = 0; k < w.basis_size; ++k) {
      CHECK(w.in_window(k) == (std::abs(k - n) <= kappa * std::sqrt(n)));
    }
  }
  CHECK_THROWS_AS(window_partition(5, 0.3, 5), std::invalid_argument);
}

TEST_CASE("resolvent sums") {
  const double kappa = 1.0 / (2.0 * std::sqrt(3.0));
  std::vector<double> s2a, gaps, s1;
  for (int n : {64, 256, 1024, 4096}) {
    const Contour c = Contour::standard(1.0, n);
    const auto sums = resolvent_sums(c, window_partition(n, kappa, resolvent_basis_size(n)));
    s2a.push_back(sums.s2a);
    gaps.push_back(sums.gap / std::sqrt(n));
    s1.push_back(sums.s1 / std::log(n));
    CHECK(sums.s2 < sums.s2a);
    CHECK(sums.tail_bound < 1e-2);
    // nearest unperturbed level sits at distance epsilon
    CHECK(sums.s2a >= 4.0);
  }
  CHECK(*std::max_element(s2a.begin(), s2a.end()) <= 1.1 * *std::min_element(s2a.begin(), s2a.end()));
  CHECK(*std::max_element(gaps.begin(), gaps.end()) <= 1.5 * *std::min_element(gaps.begin(), gaps.end()));
  CHECK(*std::max_element(s1.begin(), s1.end()) < 1.5);
}

TEST_CASE("zero perturbation") {
  const Potential v(1.0, {});
  const ResolventProblem p(v, 20);
  const auto c = Contour::standard(1.0, 20);
  for (double t : p.trace_orders(c, 4)) CHECK(t == 0.0);
  const auto norms = p.rvr_norms(c);
  CHECK(norms.operator_norm == 0.0);
  CHECK(norms.hilbert_schmidt == 0.0);
  CHECK(norms.trace_norm == 0.0);
  CHECK(norms.warnings.empty());
  CHECK(p.trace_eigenvalue(c, 6).value == 41.0);
}

TEST_CASE("first trace order is the diagonal element") {
  const auto v = Potential::cosine();
  for (int n : {10, 50}) {
    const ResolventProblem p(v, n);
    const double vnn = v_element(v, n, n).real();
    CHECK(std::abs(p.trace_orders(Contour(1.0, n, 0.5), 1)[0] - vnn) <= 1e-8);
    CHECK(std::abs(p.trace_orders(Contour(1.0, n, 0.25), 1)[0] - vnn) <= 1e-8);
  }
  CHECK(trace_order_j(v, 50, 0.5, 0, 1) == doctest::Approx(v_element(v, 50, 50).real()).epsilon(1e-10));
}

TEST_CASE("second trace order is the second-order energy shift") {
  const Potential v(1.0, {{{0.6, 0.8}, {0.2, 0.15}}, {{-0.6, -0.8}, {0.2, -0.15}}}, 0.1);
  const int n = 20;
  const ResolventProblem p(v, n);
  double expected = 0.0;
  for (int k = 0; k < p.basis_size(); ++k) {
    if (k != n) expected += std::norm(v_element(v, n, k)) / (2.0 * (k - n));
  }
  const auto t = p.trace_orders(Contour::standard(1.0, n), 2);
  CHECK(t[1] == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("trapezoid rule has converged at 64 nodes") {
  const auto v = Potential::cosine();
  const ResolventProblem p(v, 40);
  const auto coarse = p.trace_orders(Contour(1.0, 40, 0.5, 64), 6);
  const auto fine = p.trace_orders(Contour(1.0, 40, 0.5, 128), 6);
  for (int j = 0; j < 6; ++j) CHECK(std::abs(coarse[j] - fine[j]) < 1e-10);
}

TEST_CASE("quadrature failure is detected") {
  // an odd (sine) potential couples n = 0 to its neighbour n = 1, at distance
  // 2 alpha from the centre; a contour of radius ~alpha then needs many nodes
  const Potential shift(1.0, {{{0.0, 1.0}, {0.0, 0.5}}, {{0.0, -1.0}, {0.0, -0.5}}});
  const ResolventProblem p(shift, 0);
  CHECK_THROWS_AS(p.trace_orders(Contour(1.0, 0, 0.999, 32), 6), QuadratureError);
  CHECK_NOTHROW(p.trace_orders(Contour(1.0, 0, 0.5, 128), 6));
  CHECK_THROWS_AS(p.trace_orders(Contour(1.0, 0, 0.5, 32), 16), std::invalid_argument);
}

TEST_CASE("trace eigenvalue against diagonalization") {
  const auto v = Potential::cosine();
  const auto s = spectrum(v, 100);
  const auto te = trace_eigenvalue(v, 100, 0.5, 0, 6);
  CHECK(std::abs(te.value - s.eigenvalues[100]) <= 1e-6);
  REQUIRE(te.partial_sums.size() == 6);
  CHECK(te.partial_sums.back() == te.value);
  CHECK(te.neumann_ratio < 1.0);
  // successive corrections shrink
  for (int j = 1; j < 6; ++j) CHECK(std::abs(te.orders[j]) < std::abs(te.orders[j - 1]));
  const auto quarter = trace_eigenvalue(v, 100, 0.25, 0, 6);
  CHECK(std::abs(quarter.value - te.value) < 1e-8);
}

TEST_CASE("strong perturbation stops the Neumann series") {
  const auto v = Potential::cosine(1.0, 8.0);
  CHECK_THROWS_AS(trace_eigenvalue(v, 5, 0.5, 0, 6), NeumannDivergence);
}

TEST_CASE("norms of R V R against an explicit product") {
  const Potential v(1.0, {{{0.6, 0.8}, {0.2, 0.15}}, {{-0.6, -0.8}, {0.2, -0.15}}}, 0.1);
  const int n = 12;
  const ResolventProblem p(v, n);
  const int size = p.basis_size();
  const Contour c(1.0, n, 0.5, 32);
  const auto norms = p.rvr_norms(c);

  double hs = 0.0, op = 0.0;
  for (int m = 0; m < c.node_count(); ++m) {
    const Complex lambda = c.node(m);
    ComplexMatrix rvr(size);
    double hs2 = 0.0;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        rvr(i, j) = v_element(v, i, j) / ((2.0 * i + 1.0 - lambda) * (2.0 * j + 1.0 - lambda));
        hs2 += std::norm(rvr(i, j));
      }
    }
    hs = std::max(hs, std::sqrt(hs2));
    // singular values of A are the square roots of the eigenvalues of A^* A
    ComplexMatrix gram(size);
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j <= i; ++j) {
        Complex s{};
        for (int k = 0; k < size; ++k) s += std::conj(rvr(k, i)) * rvr(k, j);
        gram(i, j) = s;
      }
    }
    op = std::max(op, std::sqrt(hermitian_eigenvalues(gram).eigenvalues.back()));
  }
  CHECK(norms.hilbert_schmidt == doctest::Approx(hs).epsilon(1e-12));
  CHECK(norms.operator_norm == doctest::Approx(op).epsilon(1e-9));
  CHECK(norms.operator_norm <= norms.hilbert_schmidt);
  CHECK(norms.hilbert_schmidt <= norms.trace_norm);
}

TEST_CASE("trace norm is bounded by ||V|| times the inverse-square sum") {
  const auto v = Potential::cosine();
  for (int n : {32, 128}) {
    const ResolventProblem p(v, n);
    const auto c = Contour::standard(1.0, n);
    const auto norms = p.rvr_norms(c);
    const auto sums = resolvent_sums(c, window_partition(n, window_kappa(v), p.basis_size()));
    CHECK(norms.trace_norm <= v.perturbation_bound() * (sums.s2a + sums.tail_bound));
  }
}

TEST_CASE("contour must match the problem") {
  const ResolventProblem p(Potential::cosine(), 10);
  CHECK_THROWS_AS(p.trace_orders(Contour::standard(1.0, 11), 1), std::invalid_argument);
  CHECK_THROWS_AS(p.trace_orders(Contour::standard(2.0, 10), 1), std::invalid_argument);
  CHECK_THROWS_AS(ResolventProblem(Potential::cosine(), 10, 11), std::invalid_argument);
}
