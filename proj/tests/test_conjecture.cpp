#include <doctest.h>

#include <cmath>

#include "khab/conjecture.hpp"
#include "khab/errors.hpp"
#include "khab/grid.hpp"

using namespace khab;

namespace {
const QuadratureConfig kCfg{};
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ConjectureParams{0.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS((ConjectureParams{-1.0, 2}).validate(), DomainError);
  CHECK_THROWS_AS((ConjectureParams{0.5, 0}).validate(), DomainError);
  CHECK_THROWS_AS((ConjectureParams{0.5, 14}).validate(), DomainError);
  (ConjectureParams{0.5, 13}).validate();
}

TEST_CASE("premise lhs examples") {
  const ConjectureParams p1{1.0, 1};
  CHECK(premise_lhs([](double) { return 0.0; }, 2.0, p1, kCfg) == 0.0);

  // q = 1, n = 1, t = 1: integral of A_0(y) = -ln y over (0,1] is 1
  CHECK(premise_lhs([](double) { return 1.0; }, 1.0, p1, kCfg) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // the premise-saturating family attains t^alpha
  const ConjectureParams p2{0.5, 2};
  const PowerLawMix q = extremal_q(p2);
  CHECK(premise_lhs(q.evaluator(), 4.0, p2, kCfg) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("conclusion lhs examples") {
  auto zero = conclusion_lhs([](double) { return 0.0; }, 1.0, kCfg);
  CHECK(zero.value == 0.0);

  auto q1 = conclusion_lhs([](double) { return 1.0; }, 1.0, kCfg);
  CHECK(q1.value == doctest::Approx(M_PI).epsilon(1e-9));

  auto ext = conclusion_lhs([](double t) { return 0.25 / std::sqrt(t); }, 0.5, kCfg);
  CHECK(ext.value == doctest::Approx(M_PI / 2.0).epsilon(1e-9));

  CHECK_THROWS_AS(conclusion_lhs([](double) { return 0.0; }, 0.0, kCfg), DomainError);
}

TEST_CASE("conclusion rhs") {
  CHECK(conclusion_rhs({0.5, 1}) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  CHECK(conclusion_rhs({1.0, 3}) == doctest::Approx(3.0 * M_PI).epsilon(1e-14));
  CHECK(conclusion_rhs({0.5, 3}) == doctest::Approx(0.9375 * M_PI).epsilon(1e-14));

  // adjacent-n identity of the product bound
  for (double alpha : {0.2, 0.7, 1.5}) {
    for (int n = 1; n <= 6; ++n) {
      const double lhs = conclusion_rhs({alpha, n + 1}) / conclusion_rhs({alpha, n});
      CHECK(lhs == doctest::Approx(1.0 + alpha / n).epsilon(1e-14));
    }
  }
}

TEST_CASE("extremal family coefficients") {
  const PowerLawMix q1 = extremal_q({0.5, 1});
  REQUIRE(q1.terms().size() == 1);
  CHECK(q1.terms()[0].c == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(q1.terms()[0].beta == doctest::Approx(-0.5).epsilon(1e-14));

  const PowerLawMix q2 = extremal_q({0.5, 2});
  CHECK(q2.terms()[0].c == doctest::Approx(3.0 / 8.0).epsilon(1e-13));

  const PowerLawMix q3 = extremal_q({1.0, 1});
  CHECK(q3.terms()[0].c == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(q3.terms()[0].beta == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("premise saturation across the grid") {
  const auto grid = make_log_grid(0.01, 100.0, 25);
  for (double alpha : {0.25, 0.5, 1.0}) {
    for (int n : {1, 2, 3}) {
      const ConjectureParams p{alpha, n};
      const PowerLawMix q = extremal_q(p);
      for (double t : grid) {
        const double lhs = premise_lhs(q.evaluator(), t, p, kCfg);
        CHECK(std::abs(lhs - std::pow(t, alpha)) <= 1e-8 * std::pow(t, alpha));
      }
    }
  }
}

TEST_CASE("check verdicts") {
  const auto grid = make_log_grid(0.01, 100.0, 60);

  SUBCASE("zero function is consistent") {
    const auto rep = check(PowerLawMix::zero(), {0.5, 2}, grid, kCfg);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(rep.ratio == 0.0);
    CHECK(rep.premise_ok);
  }

  SUBCASE("extremal family sits on the sharp boundary") {
    const auto rep = check(extremal_q({0.5, 2}), {0.5, 2}, grid, kCfg);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.premise_ok);
    CHECK(rep.bound == doctest::Approx(conclusion_rhs({0.5, 2})).epsilon(1e-14));
  }

  SUBCASE("doubling the extremal q violates the premise everywhere") {
    const auto rep = check(extremal_q({0.5, 1}).scaled(2.0), {0.5, 1}, grid, kCfg);
    CHECK(rep.verdict == Verdict::premise_violated);
    CHECK_FALSE(rep.premise_ok);
  }

  SUBCASE("negative coefficients are rejected") {
    CHECK_THROWS_AS(check(PowerLawMix({{-1.0, 0.0}}), {0.5, 1}, grid, kCfg), DomainError);
  }

  SUBCASE("divergent conclusion integral is inconclusive") {
    // q = 1 with alpha = 0.25: the weight decays like t^(-1/2), so the
    // conclusion integral diverges
    const auto rep = check(PowerLawMix({{1.0, 0.0}}), {0.25, 1}, grid, kCfg);
    CHECK(rep.verdict == Verdict::inconclusive);
  }

  SUBCASE("empty grid is rejected") {
    CHECK_THROWS_AS(check(PowerLawMix::zero(), {0.5, 1}, std::vector<double>{}, kCfg),
                    ConfigError);
  }
}

TEST_CASE("conclusion integral is linear in q") {
  PowerLawMix q({{0.25, -0.5}});
  const double base = conclusion_lhs(q.evaluator(), 0.5, kCfg).value;
  for (double c : {0.5, 2.0, 8.0}) {
    const double scaled = conclusion_lhs(q.scaled(c).evaluator(), 0.5, kCfg).value;
    CHECK(scaled == doctest::Approx(c * base).epsilon(1e-9));
  }
}

TEST_CASE("sweep") {
  const auto grid = make_log_grid(0.01, 100.0, 60);

  SUBCASE("sharp boundary row per cell") {
    const std::vector<double> alphas{0.5};
    const std::vector<int> ns{1, 2, 3};
    const auto reports = sweep(alphas, ns, extremal_family(), grid, kCfg);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) {
      CHECK(r.verdict == Verdict::consistent);
      CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-3));
    }
    CHECK(reports[0].n == 1);
    CHECK(reports[2].n == 3);
  }

  SUBCASE("empty alpha list gives empty output") {
    const auto reports = sweep(std::vector<double>{}, std::vector<int>{1, 2},
                               extremal_family(), grid, kCfg);
    CHECK(reports.empty());
  }

  SUBCASE("cardinality") {
    const std::vector<double> alphas{0.25, 0.5};
    const std::vector<int> ns{1, 2};
    const auto reports = sweep(alphas, ns, extremal_family(), grid, kCfg);
    CHECK(reports.size() == 4);
  }

  SUBCASE("proven regime stays at or below the bound") {
    const std::vector<double> alphas{0.25};
    const std::vector<int> ns{2};
    const auto reports = sweep(alphas, ns, extremal_family(), grid, kCfg);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].ratio <= 1.0 + 1e-3);
    CHECK(reports[0].verdict == Verdict::consistent);
  }

  SUBCASE("invalid cells are recorded, not fatal") {
    const std::vector<double> alphas{-1.0, 0.5};
    const std::vector<int> ns{1};
    const auto reports = sweep(alphas, ns, extremal_family(), grid, kCfg);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].verdict == Verdict::inconclusive);
    CHECK(reports[1].verdict == Verdict::consistent);
  }
}

TEST_CASE("report serialization") {
  const auto grid = make_log_grid(0.1, 10.0, 12);
  const auto rep = check(extremal_q({0.5, 1}), {0.5, 1}, grid, kCfg);
  const std::string json = report_to_json(rep);
  CHECK(json.find("\"verdict\": \"consistent\"") != std::string::npos);
  CHECK(json.find("\"premise_margins\"") != std::string::npos);

  const std::string csv = sweep_summary_csv(std::vector<ConjectureReport>{rep});
  CHECK(csv.find("alpha,n,family_id,premise_ok,ratio,verdict") == 0);
  CHECK(csv.find("consistent") != std::string::npos);
}
