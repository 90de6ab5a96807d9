#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ssflow/flow_cdf.hpp"

using namespace ssflow;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("unit circle endpoint functionals at alpha = 0", "[cdf][base]") {
  // with alpha = 0 the arc is the unit circle and Phi integrates to
  // -sin(L) - eps*L in closed form
  const double eps = 0.3, L = 2.0;
  const CdfEndpoint e = cdf_endpoint({0.0, eps}, L);
  REQUIRE(e.Phi == Catch::Approx(-std::sin(L) - eps * L).margin(1e-10));
  REQUIRE(e.B == Catch::Approx(-std::sin(L)).margin(1e-10));
  REQUIRE(e.Theta == Catch::Approx(L).margin(1e-10));
}

TEST_CASE("base solution closes exactly at L = pi", "[cdf][base]") {
  const CdfEndpoint e = cdf_endpoint({0.0, 0.0}, kPi);
  REQUIRE(std::abs(e.Phi) <= 1e-10);
  REQUIRE(std::abs(e.B) <= 1e-10);
}

TEST_CASE("velocity is proportional to the angle accumulator", "[cdf]") {
  // v' = alpha*A and phi' = -A share the same integrand, so v = -alpha*phi
  // identically along any trajectory
  const CdfParams P{0.37, 0.12};
  const CdfEndpoint e = cdf_endpoint(P, 2.5);
  REQUIRE(std::abs(e.end[4] + P.alpha * e.end[5]) <= 1e-12);
}

TEST_CASE("fundamental arc drives both functionals to zero", "[cdf]") {
  const CdfArc arc = cdf_fundamental_arc(0.05);
  REQUIRE(std::abs(arc.res_Phi) <= 1e-10);
  REQUIRE(std::abs(arc.res_B) <= 1e-10);
  REQUIRE(arc.sigma == -arc.eps * arc.alpha);
  REQUIRE(arc.sigma > 0.0);
  REQUIRE(arc.Theta < kPi);
  REQUIRE(arc.Theta > 0.5 * kPi);
  REQUIRE(arc.traj.s_end() == Catch::Approx(arc.L));

  // leading-order branch behaviour: alpha ~ -2 eps, L ~ pi (1 + 2 eps)
  REQUIRE(arc.alpha == Catch::Approx(-2.0 * 0.05).epsilon(0.25));
  REQUIRE(arc.L == Catch::Approx(kPi * 1.1).epsilon(0.05));
}

TEST_CASE("five-fold target reproduces the published epsilon",
          "[cdf][solve]") {
  BranchInfo info;
  const CdfArc arc = cdf_solve_epsilon(4, 5, {}, &info);
  REQUIRE(std::abs(arc.eps - 0.19672) <= 5e-6);
  REQUIRE(std::abs(arc.Theta - 4.0 * kPi / 5.0) <= 1e-9);
  REQUIRE(std::abs(arc.res_Phi) <= 1e-10);
  REQUIRE(std::abs(arc.res_B) <= 1e-10);
  REQUIRE(info.branch_points >= 2);
}

TEST_CASE("angle window is enforced unless unlocked", "[cdf][errors]") {
  // p*pi/q at or below pi/2 needs the explicit unlock
  REQUIRE_THROWS_AS(cdf_solve_epsilon(1, 3), UsageError);
  REQUIRE_THROWS_AS(cdf_solve_epsilon(1, 2), UsageError);
  REQUIRE_THROWS_AS(cdf_solve_epsilon(2, 5), UsageError);
}

TEST_CASE("argument validation", "[cdf][errors]") {
  REQUIRE_THROWS_AS(cdf_solve_epsilon(3, 0), UsageError);
  REQUIRE_THROWS_AS(cdf_solve_epsilon(0, 4), UsageError);
  REQUIRE_THROWS_AS(cdf_solve_epsilon(4, 4), UsageError);
  REQUIRE_THROWS_AS(cdf_solve_epsilon(6, 8), UsageError);
}
