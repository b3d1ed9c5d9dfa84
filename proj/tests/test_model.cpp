#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hosc/model.hpp"

using namespace hosc;

namespace {

bool mentions(const ValidationError& e, const std::string& needle) {
  return std::any_of(e.violations().begin(), e.violations().end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("metric norm and rho") {
  CHECK(metric_norm({2.0, 1.0}, 4.0) == doctest::Approx(std::sqrt(5.0)));
  CHECK(rho({0.0, 1.0}, 2.0) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(metric_norm({0.0, 0.0}, 3.0) == 0.0);
  CHECK(metric_norm({1.0, -2.0}, 0.5) == metric_norm({-1.0, 2.0}, 0.5));
  CHECK_THROWS_AS(metric_norm({1.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("cosine potential validates") {
  const auto report = validate(Potential::cosine());
  REQUIRE(report.gamma.has_value());
  CHECK(*report.gamma == doctest::Approx(1.0));
  CHECK(report.kappa == doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))));
  CHECK(report.perturbation_bound == doctest::Approx(1.0));
  CHECK(report.operator_bound == doctest::Approx(1.0));
  CHECK(report.norm_p3 == doctest::Approx(1.0));
}

TEST_CASE("kappa caps at one third") {
  const Potential v(1.0, {{{3.0, 0.0}, {0.2, 0.1}}, {{-3.0, 0.0}, {0.2, -0.1}}}, 0.7);
  const auto report = validate(v);
  CHECK(report.kappa == doctest::Approx(1.0 / 3.0));
  CHECK(window_kappa(v) == doctest::Approx(1.0 / 3.0));
  CHECK(report.operator_bound == doctest::Approx(0.7 + 2.0 * std::abs(Complex(0.2, 0.1))));
}

TEST_CASE("empty perturbation") {
  const auto report = validate(Potential(2.0, {}, 0.5));
  CHECK_FALSE(report.gamma.has_value());
  CHECK(report.kappa == doctest::Approx(1.0 / 3.0));
  CHECK(report.perturbation_bound == 0.0);
}

TEST_CASE("validation reports every violated condition") {
  const Potential bad(-1.0, {{{1.0, 0.0}, {0.5, 0.0}},
                             {{0.0, 2.0}, {0.3, 0.2}},
                             {{0.0, -2.0}, {0.3, 0.2}},
                             {{0.0, 0.0}, {1.0, 0.0}}});
  try {
    validate(bad);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(mentions(e, "alpha"));
    CHECK(mentions(e, "no mirror term at (-1, 0)"));
    CHECK(mentions(e, "not complex conjugates"));
    CHECK(mentions(e, "origin"));
    CHECK(e.violations().size() == 4);
  }
}

TEST_CASE("duplicate points and non-finite entries") {
  const Potential dup(1.0, {{{1.0, 0.0}, {0.5, 0.0}},
                            {{1.0, 0.0}, {0.5, 0.0}},
                            {{-1.0, 0.0}, {0.5, 0.0}}});
  CHECK_THROWS_WITH_AS(validate(dup), doctest::Contains("duplicate"), ValidationError);
  const Potential nan_term(1.0, {{{NAN, 0.0}, {0.5, 0.0}}});
  CHECK_THROWS_WITH_AS(validate(nan_term), doctest::Contains("non-finite"), ValidationError);
  CHECK_THROWS_AS(validate(Potential(1.0, {}, INFINITY)), ValidationError);
}

TEST_CASE("conjugacy tolerance") {
  const Potential near(1.0, {{{1.0, 1.0}, {0.5, 0.25}}, {{-1.0, -1.0}, {0.5, -0.25 + 5e-13}}});
  CHECK_NOTHROW(validate(near));
  const Potential off(1.0, {{{1.0, 1.0}, {0.5, 0.25}}, {{-1.0, -1.0}, {0.5, -0.25 + 1e-9}}});
  CHECK_THROWS_AS(validate(off), ValidationError);
}
