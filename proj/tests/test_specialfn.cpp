#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hosc/matelem.hpp"
#include "hosc/specialfn.hpp"
#include "oracles.hpp"

using namespace hosc;

TEST_CASE("laguerre: low orders") {
  CHECK(laguerre(0, 3, 7.5) == 1.0);
  CHECK(laguerre(1, 0, 2.0) == doctest::Approx(-1.0));
  CHECK(laguerre(2, 1, 0.5) == doctest::Approx(1.625).epsilon(1e-15));
  CHECK(laguerre(4, 2, 0.0) == doctest::Approx(15.0));  // C(k+m, k)
}

TEST_CASE("laguerre: exact rational oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> xs(-50.0, 50.0);
  for (int k = 0; k <= 20; ++k) {
    for (int m = 0; m <= 20; ++m) {
      for (int s = 0; s < 4; ++s) {
        const double x = xs(rng);
        const double exact = oracle::laguerre_exact(k, m, x);
        const double got = laguerre(k, m, x);
        CHECK_MESSAGE(std::abs(got - exact) <= 1e-10 * std::max(1.0, std::abs(exact)),
                      "k=" << k << " m=" << m << " x=" << x << " got " << got << " exact " << exact);
      }
    }
  }
}

TEST_CASE("laguerre_scaled agrees with laguerre and survives overflow") {
  for (int k : {0, 5, 40, 150}) {
    const auto s = laguerre_scaled(k, 7, 0.3);
    CHECK(s.value() == doctest::Approx(laguerre(k, 7, 0.3)).epsilon(1e-13));
  }
  // L_k^{(m)}(0) = C(k+m, k) overflows a double for these sizes
  const auto big = laguerre_scaled(3000, 3000, 0.0);
  const double log_binom = std::lgamma(6001.0) - 2.0 * std::lgamma(3001.0);
  CHECK(std::isfinite(big.mantissa));
  CHECK(std::log(big.mantissa) + big.log_scale == doctest::Approx(log_binom).epsilon(1e-12));
}

TEST_CASE("LaguerreSweep reproduces laguerre_scaled bit for bit") {
  LaguerreSweep sweep(11, 0.5);
  for (int k = 0; k <= 300; ++k) {
    const auto a = sweep.current();
    const auto b = laguerre_scaled(k, 11, 0.5);
    REQUIRE(sweep.degree() == k);
    CHECK(a.mantissa == b.mantissa);
    CHECK(a.log_scale == b.log_scale);
    sweep.advance();
  }
}

TEST_CASE("bessel_j: first zero and power series oracle") {
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-14);
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  for (int n = 0; n <= 10; ++n) {
    for (double x = 0.25; x <= 10.0; x += 0.25) {
      CHECK(bessel_j(n, x) == doctest::Approx(oracle::bessel_series(n, x)).scale(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("bessel_j: large arguments stay bounded") {
  for (double x : {1e3, 5e4}) {
    for (int n : {0, 1, 50}) {
      const double j = bessel_j(n, x);
      CHECK(std::abs(j) <= 4.0 / std::sqrt(x));
    }
  }
  // asymptotic form J_0(x) ~ sqrt(2/(pi x)) cos(x - pi/4)
  const double x = 1e4;
  CHECK(bessel_j(0, x) ==
        doctest::Approx(std::sqrt(2.0 / (M_PI * x)) * std::cos(x - M_PI / 4)).epsilon(1e-4));
}

TEST_CASE("bessel_j: domain errors") {
  CHECK_THROWS_AS(bessel_j(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(0, NAN), std::domain_error);
  CHECK_THROWS_AS(bessel_j(0, 2e7), std::domain_error);
}

TEST_CASE("log_factorial_ratio") {
  CHECK(log_factorial_ratio(10, 12) == doctest::Approx(-0.5 * (std::log(11.0) + std::log(12.0))));
  CHECK(log_factorial_ratio(5, 5) == 0.0);
  const double expected = 0.5 * (std::lgamma(101.0) - std::lgamma(1001.0));
  CHECK(log_factorial_ratio(100, 1000) == doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(log_factorial_ratio(3, 2), std::invalid_argument);
}

TEST_CASE("f_factor") {
  CHECK(f_factor(0, 2) == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(f_factor(4, 4) == 1.0);
  CHECK(f_factor(0, 1) == 1.0);
  for (int kp = 0; kp <= 120; ++kp) {
    for (int k = 0; k <= kp; ++k) {
      const double f = f_factor(k, kp);
      REQUIRE(f > 0.0);
      REQUIRE(f <= 1.0);
    }
  }
  // direct product for a moderate case: (k'!/k!) (2/(k'+k+1))^{k'-k}
  const double direct = (8.0 * 9.0 * 10.0) * std::pow(2.0 / 18.0, 3);
  CHECK(f_factor(7, 10) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("a_coefficients") {
  const auto first = a_coefficients(3, 9, 2);
  REQUIRE(first.values.size() == 3);
  CHECK(first.values[0] == 1.0);
  CHECK(first.values[1] == 0.0);
  CHECK(first.values[2] == doctest::Approx(3.5));
  CHECK(a_coefficients(5, 5, 3).values[3] == doctest::Approx(-11.0 / 3.0));
  CHECK(a_coefficients(0, 0).values.size() == 49);
}

TEST_CASE("a_coefficients: growth bound on admissible pairs") {
  std::mt19937_64 rng(11);
  for (int sample = 0; sample < 100; ++sample) {
    const int kp = std::uniform_int_distribution<int>(2, 3000)(rng);
    const int m = std::uniform_int_distribution<int>(0, static_cast<int>(std::pow(kp, 2.0 / 3.0)))(rng);
    const auto a = a_coefficients(kp - m, kp, 60);
    const double log_total = std::log(2.0 * kp - m + 1.0);
    for (int j = 1; j <= 60; ++j) {
      if (a.values[j] == 0.0) continue;
      CHECK(std::log(std::abs(a.values[j])) <= j / 3.0 * log_total);
    }
  }
}

TEST_CASE("Hermite product integral identity") {
  // int e^{-x^2} H_k(x+y) H_k'(x+z) dx = 2^{k'} sqrt(pi) k! z^{k'-k} L_k^{(k'-k)}(-2yz), k <= k'
  const auto rule = gauss_hermite_rule(80);
  for (auto [k, kp, y, z] : {std::tuple{0, 0, 0.3, -0.2}, std::tuple{2, 5, 0.4, 0.7},
                             std::tuple{4, 4, -0.5, 0.25}, std::tuple{6, 9, 0.1, -0.6}}) {
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = rule.nodes[i];
      // scaled weights absorb e^{x^2}
      integral += rule.scaled_weights[i] * std::exp(-x * x) * oracle::hermite_h(k, x + y) *
                  oracle::hermite_h(kp, x + z);
    }
    const double expected = std::pow(2.0, kp) * std::sqrt(M_PI) * std::tgamma(k + 1.0) *
                            std::pow(z, kp - k) * laguerre(k, kp - k, -2.0 * y * z);
    CHECK(integral == doctest::Approx(expected).epsilon(1e-8));
  }
}
