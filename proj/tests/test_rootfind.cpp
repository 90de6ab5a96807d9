#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ssflow/rootfind.hpp"

using ssflow::newton_solve;
using ssflow::NewtonOptions;
using ssflow::scalar_root;
using ssflow::ScalarRootOptions;
using ssflow::Vec;

TEST_CASE("linear systems converge in one Newton step", "[rootfind]") {
  auto f = [](const Vec<2>& x) -> Vec<2> {
    return {2.0 * x[0] + x[1] - 5.0, x[0] - 3.0 * x[1] + 1.0};
  };
  const auto res = newton_solve<2>(f, {0.0, 0.0});
  REQUIRE(res.x[0] == Catch::Approx(2.0).margin(1e-10));
  REQUIRE(res.x[1] == Catch::Approx(1.0).margin(1e-10));
  REQUIRE(res.iterations <= 2);
  REQUIRE(res.residual_norm <= 1e-12);
}

TEST_CASE("nonlinear 2d system", "[rootfind]") {
  auto f = [](const Vec<2>& x) -> Vec<2> {
    return {x[0] * x[0] + x[1] * x[1] - 4.0, x[0] - x[1]};
  };
  const auto res = newton_solve<2>(f, {1.0, 0.5});
  const double r = std::sqrt(2.0);
  REQUIRE(res.x[0] == Catch::Approx(r).margin(1e-10));
  REQUIRE(res.x[1] == Catch::Approx(r).margin(1e-10));
}

TEST_CASE("damping rescues the classic Newton two-cycle", "[rootfind]") {
  // Undamped Newton on x^3 - 2x + 2 oscillates between 0 and 1 forever.
  auto f = [](const Vec<1>& x) -> Vec<1> {
    return {x[0] * x[0] * x[0] - 2.0 * x[0] + 2.0};
  };
  const auto res = newton_solve<1>(f, {0.0});
  REQUIRE(std::abs(res.residual[0]) <= 1e-12);
  REQUIRE(res.x[0] == Catch::Approx(-1.7692923542386314).margin(1e-9));
}

TEST_CASE("singular Jacobian is reported", "[rootfind][errors]") {
  auto f = [](const Vec<2>& x) -> Vec<2> {
    return {x[0] + x[1] - 1.0, 2.0 * x[0] + 2.0 * x[1] - 2.0};
  };
  REQUIRE_THROWS_AS(newton_solve<2>(f, {0.0, 0.0}), ssflow::SingularJacobian);
}

TEST_CASE("iteration cap is enforced", "[rootfind][errors]") {
  // exp(-x) has no root; Newton marches x up by 1 per iteration and the
  // residual decays by a factor of e, far too slowly for 10 iterations.
  auto f = [](const Vec<1>& x) -> Vec<1> { return {std::exp(-x[0])}; };
  NewtonOptions opt;
  opt.max_iter = 10;
  REQUIRE_THROWS_AS(newton_solve<1>(f, {0.0}, opt), ssflow::MaxIterations);
}

TEST_CASE("failed evaluations damp the line search", "[rootfind]") {
  // f throws left of x = 0.5; full steps from the seed overshoot into the
  // forbidden region, so progress relies on backtracking.
  auto f = [](const Vec<1>& x) -> Vec<1> {
    if (x[0] < 0.5) throw ssflow::EvaluationFailure("out of domain");
    return {std::log(x[0])};
  };
  const auto res = newton_solve<1>(f, {6.0});
  REQUIRE(res.x[0] == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("scalar secant-style iteration", "[rootfind]") {
  SECTION("simple quadratic") {
    const double r = scalar_root([](double x) { return x * x - 4.0; }, 3.0);
    REQUIRE(r == Catch::Approx(2.0).margin(1e-10));
  }
  SECTION("bracketed root stays bracketed") {
    ScalarRootOptions opt;
    opt.bracket = {{1.0, 2.0}};
    const double r = scalar_root([](double x) { return std::cos(x); }, 1.2, opt);
    REQUIRE(r == Catch::Approx(std::acos(-1.0) / 2.0).margin(1e-10));
  }
  SECTION("bracket without sign change") {
    ScalarRootOptions opt;
    opt.bracket = {{0.0, 1.0}};
    REQUIRE_THROWS_AS(
        scalar_root([](double x) { return std::cos(x); }, 0.5, opt),
        ssflow::NoSignChange);
  }
  SECTION("no convergence without a root") {
    REQUIRE_THROWS_AS(scalar_root([](double x) { return x * x + 1.0; }, 0.7),
                      ssflow::MaxIterations);
  }
}

TEST_CASE("dense solve recovers a known 3x3 solution", "[rootfind]") {
  // A * (1, -2, 3) with A below.
  std::array<Vec<3>, 3> A = {{{4.0, 1.0, 0.5}, {1.0, 3.0, -1.0},
                              {0.25, -0.5, 2.0}}};
  const Vec<3> b = {3.5, -8.0, 7.25};
  const Vec<3> x = ssflow::detail::solve_dense<3>(A, b, 1e12);
  REQUIRE(x[0] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(x[1] == Catch::Approx(-2.0).margin(1e-12));
  REQUIRE(x[2] == Catch::Approx(3.0).margin(1e-12));
}
