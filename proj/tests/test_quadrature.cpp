#include <doctest.h>

#include <cmath>

#include "khab/errors.hpp"
#include "khab/quadrature.hpp"

using namespace khab;

namespace {
const QuadratureConfig kCfg{};
}

TEST_CASE("adaptive quadrature on analytic integrals") {
  auto r1 = integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, kCfg);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-12));

  auto r2 = integrate_adaptive([](double x) { return x * x; }, 0.0, 3.0, kCfg);
  CHECK(r2.value == doctest::Approx(9.0).epsilon(1e-12));

  auto r3 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, kCfg);
  CHECK(r3.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("adaptive quadrature rejects bad input") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0, kCfg), DomainError);
  CHECK_THROWS_AS(
      integrate_adaptive([](double x) { return std::log(x); }, -1.0, 1.0, kCfg),
      EvaluationError);  // log(-x) -> NaN
  QuadratureConfig bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, bad), ConfigError);
}

TEST_CASE("log-singular quadrature on analytic integrals") {
  auto r1 = integrate_log_singular([](double) { return 1.0; }, 1.0, kCfg);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-9));

  // antiderivative y - y ln y
  auto r2 = integrate_log_singular([](double y) { return -std::log(y); }, 1.0, kCfg);
  CHECK(r2.value == doctest::Approx(1.0).epsilon(1e-9));

  // antiderivative y^2/4 - (y^2/2) ln y
  auto r3 = integrate_log_singular([](double y) { return -y * std::log(y); }, 1.0, kCfg);
  CHECK(r3.value == doctest::Approx(0.25).epsilon(1e-9));

  // integrable power singularities are handled by the same panels
  auto r4 = integrate_log_singular([](double y) { return std::pow(y, -0.5); }, 1.0, kCfg);
  CHECK(r4.converged);
  CHECK(r4.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("log-singular divergence heuristic") {
  auto harmonic = integrate_log_singular([](double y) { return 1.0 / y; }, 1.0, kCfg);
  CHECK(harmonic.divergence_suspected);
  CHECK_FALSE(harmonic.converged);

  auto power = integrate_log_singular([](double y) { return std::pow(y, -1.2); }, 1.0, kCfg);
  CHECK(power.divergence_suspected);
  CHECK_FALSE(power.converged);

  // slow but integrable decay must not be flagged
  auto slow = integrate_log_singular([](double y) { return std::pow(y, -0.9); }, 1.0, kCfg);
  CHECK_FALSE(slow.divergence_suspected);
  CHECK(slow.converged);
  CHECK(slow.value == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("integration to infinity") {
  auto r1 = integrate_to_infinity([](double t) { return std::exp(-t); }, 0.0, kCfg);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-9));

  auto r2 = integrate_to_infinity([](double t) { return std::log1p(1.0 / (t * t)); }, 0.0, kCfg);
  CHECK(r2.value == doctest::Approx(M_PI).epsilon(1e-9));

  auto r3 = integrate_to_infinity([](double) { return 0.0; }, 0.0, kCfg);
  CHECK(r3.value == 0.0);
  CHECK(r3.converged);

  auto r4 = integrate_to_infinity([](double t) { return std::exp(-t); }, 2.0, kCfg);
  CHECK(r4.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));

  // 1/(1+t) tail is not integrable
  auto r5 = integrate_to_infinity([](double t) { return 1.0 / (1.0 + t); }, 0.0, kCfg);
  CHECK(r5.divergence_suspected);

  CHECK_THROWS_AS(integrate_to_infinity([](double) { return 0.0; }, -1.0, kCfg), DomainError);
}

TEST_CASE("error estimates are honest on analytic cases") {
  struct Case {
    TransformResult res;
    double truth;
  };
  const Case cases[] = {
      {integrate_adaptive([](double x) { return x * x; }, 0.0, 3.0, kCfg), 9.0},
      {integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI, kCfg), 2.0},
      {integrate_log_singular([](double y) { return -std::log(y); }, 1.0, kCfg), 1.0},
      {integrate_log_singular([](double y) { return -y * std::log(y); }, 1.0, kCfg), 0.25},
      {integrate_to_infinity([](double t) { return std::exp(-t); }, 0.0, kCfg), 1.0},
      {integrate_to_infinity([](double t) { return std::log1p(1.0 / (t * t)); }, 0.0, kCfg),
       M_PI},
  };
  for (const Case& c : cases) {
    CHECK(std::abs(c.res.value - c.truth) <= 3.0 * c.res.error_estimate);
  }
}

TEST_CASE("log-singular and adaptive agree on smooth integrands") {
  auto f1 = [](double x) { return std::cos(x) + x; };
  auto a = integrate_adaptive(f1, 1e-14, 2.0, kCfg);
  auto s = integrate_log_singular(f1, 2.0, kCfg);
  CHECK(a.value == doctest::Approx(s.value).epsilon(1e-9));

  auto f2 = [](double x) { return std::exp(x) * x * x; };
  auto a2 = integrate_adaptive(f2, 1e-14, 1.0, kCfg);
  auto s2 = integrate_log_singular(f2, 1.0, kCfg);
  CHECK(a2.value == doctest::Approx(s2.value).epsilon(1e-9));
}

TEST_CASE("scaling identity of adaptive quadrature") {
  auto f = [](double x) { return std::sin(x) + 2.0; };
  const double a = 0.3, b = 2.1;
  const double ref = integrate_adaptive(f, a, b, kCfg).value;
  for (double c : {0.5, 2.0, 10.0}) {
    auto scaled = integrate_adaptive([f, c](double x) { return f(c * x); }, a / c, b / c, kCfg);
    CHECK(scaled.value * c == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("non-convergence reports through flags, not exceptions") {
  QuadratureConfig tiny = kCfg;
  tiny.max_subdivisions = 2;
  auto r = integrate_log_singular([](double y) { return std::pow(y, -0.9); }, 1.0, tiny);
  CHECK_FALSE(r.converged);
  CHECK(r.subdivisions_used >= 1);
}

TEST_CASE("richardson derivatives") {
  auto f = [](double x) { return std::exp(2.0 * x); };
  CHECK(richardson_derivative_central(f, 0.5, 1, 0.05) ==
        doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-10));
  CHECK(richardson_derivative_central(f, 0.5, 3, 0.05) ==
        doctest::Approx(8.0 * std::exp(1.0)).epsilon(1e-8));
  CHECK(richardson_derivative_one_sided(f, 0.5, 2, 0.01, -1) ==
        doctest::Approx(4.0 * std::exp(1.0)).epsilon(1e-7));
  CHECK(richardson_derivative_one_sided(f, 0.5, 1, 0.01, +1) ==
        doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-8));
  CHECK_THROWS_AS(richardson_derivative_one_sided(f, 0.5, 1, 0.01, 0), DomainError);
}
