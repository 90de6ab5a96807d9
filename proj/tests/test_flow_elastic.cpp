#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ssflow/flow_elastic.hpp"

using namespace ssflow;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("base constants match their gamma-function closed forms",
          "[elastic][constants]") {
  const EfBaseConstants c = ef_base_constants();
  const double G = std::tgamma(0.25);
  const double root2pi = std::sqrt(2.0 * kPi);

  const double L0_exact = G * G / root2pi;
  const double y0_exact = 4.0 * kPi * root2pi / (G * G);
  const double I_exact = L0_exact / 3.0;
  const double ap_exact = -12.0 * kPi * kPi / (G * G * G * G);

  REQUIRE(c.L0 == Catch::Approx(L0_exact).epsilon(1e-12));
  REQUIRE(c.y0 == Catch::Approx(y0_exact).epsilon(1e-12));
  REQUIRE(c.I_cos2 == Catch::Approx(I_exact).epsilon(1e-12));
  REQUIRE(c.alpha_prime0 == Catch::Approx(ap_exact).epsilon(1e-12));

  // pinned decimals, guarding against silent regressions in the quadrature
  REQUIRE(c.L0 == Catch::Approx(5.2441151085842396).margin(1e-11));
  REQUIRE(c.y0 == Catch::Approx(2.3962804694711844).margin(1e-11));
  REQUIRE(c.I_cos2 == Catch::Approx(1.7480383695280799).margin(1e-11));
  REQUIRE(c.alpha_prime0 == Catch::Approx(-0.6854198715666954).margin(1e-11));
}

TEST_CASE("base arc from the ODE agrees with the quadrature constants",
          "[elastic][base]") {
  const EfBaseConstants c = ef_base_constants();
  const EfBaseArc arc = ef_base_arc();

  // two independent computations of the same three numbers
  REQUIRE(std::abs(arc.L0 - c.L0) <= 1e-9);
  REQUIRE(std::abs(arc.y_end - c.y0) <= 1e-9);
  REQUIRE(std::abs(arc.I_cos2 - c.I_cos2) <= 1e-9);

  // the terminal point: tangent back to horizontal, curvature at -1
  // tangentially (v has a simple zero there, k - (-1) a double one)
  REQUIRE(std::abs(arc.theta_end) <= 1e-9);
  REQUIRE(std::abs(arc.k_end + 1.0) <= 1e-7);
}

TEST_CASE("base arc conserves the curvature energy", "[elastic][base]") {
  const EfBaseArc arc = ef_base_arc();
  // v^2 = (1 - k^4)/4 holds along the unforced arc
  for (int i = 0; i <= 64; ++i) {
    const State<6> u = arc.traj(arc.L0 * i / 64.0);
    const double k = u[3], v = u[4];
    REQUIRE(std::abs(v * v - 0.25 * (1.0 - k * k * k * k)) <= 1e-10);
  }
}

TEST_CASE("fundamental arc at small eps solves both boundary conditions",
          "[elastic]") {
  const EfArc arc = ef_fundamental_arc(0.01);
  REQUIRE(std::abs(arc.res_b1) <= 1e-10);
  REQUIRE(std::abs(arc.res_b2) <= 1e-10);
  REQUIRE(arc.sigma == -arc.eps * arc.alpha);
  REQUIRE(arc.sigma > 0.0);
  REQUIRE(arc.theta_bar > 0.0);
  REQUIRE(arc.traj.s_end() == Catch::Approx(arc.L));

  // the terminal angle grows linearly with eps at rate y0 to leading order
  // (the quadratic term contributes ~2.5% at this eps)
  const EfBaseConstants c = ef_base_constants();
  REQUIRE(arc.theta_bar == Catch::Approx(c.y0 * 0.01).epsilon(5e-2));
}

TEST_CASE("interior velocity stays negative on the fundamental arc",
          "[elastic]") {
  const EfArc arc = ef_fundamental_arc(0.05);
  for (int i = 1; i < 200; ++i) {
    const double s = arc.L * i / 200.0;
    REQUIRE(arc.traj(s)[4] < 0.0);
  }
}

TEST_CASE("reflection symmetry maps the arc to the mirrored system",
          "[elastic]") {
  const EfArc a = ef_fundamental_arc(0.04);
  const EfParams Pm{-a.alpha, -a.eps};
  Trajectory<5> mirror = integrate(
      [&Pm](double, const State<5>& u) { return ef_rhs(u, Pm); }, 0.0, a.L,
      State<5>{0.0, 0.0, 0.0, -1.0, 0.0});
  for (int i = 0; i <= 32; ++i) {
    const double s = a.L * i / 32.0;
    const State<5> u = a.traj(s);
    const State<5> m = mirror(s);
    REQUIRE(std::abs(m[0] + u[0]) <= 1e-9);
    REQUIRE(std::abs(m[1] - u[1]) <= 1e-9);
    REQUIRE(std::abs(m[2] + u[2]) <= 1e-9);
    REQUIRE(std::abs(m[3] + u[3]) <= 1e-9);
    REQUIRE(std::abs(m[4] + u[4]) <= 1e-9);
  }
}

TEST_CASE("seven-fold target reproduces the published epsilon",
          "[elastic][solve]") {
  BranchInfo info;
  const EfArc arc = ef_solve_epsilon(1, 7, {}, &info);
  REQUIRE(std::abs(arc.eps - 0.13290) <= 5e-6);
  REQUIRE(std::abs(arc.theta_bar - kPi / 7.0) <= 1e-9);
  REQUIRE(std::abs(arc.res_b1) <= 1e-10);
  REQUIRE(std::abs(arc.res_b2) <= 1e-10);
  REQUIRE(info.branch_points >= 2);
  // the last march point brackets the crossing from above
  REQUIRE(info.eps_last >= arc.eps - 1e-12);
  REQUIRE(info.eps_last <= arc.eps + 0.011);
}

TEST_CASE("five-fold target lands on the frozen branch value",
          "[elastic][solve]") {
  const EfArc arc = ef_solve_epsilon(1, 5);
  // regression pin for this implementation's converged value
  REQUIRE(arc.eps == Catch::Approx(0.19377124648364583).margin(1e-8));
  REQUIRE(std::abs(arc.theta_bar - kPi / 5.0) <= 1e-9);
}

TEST_CASE("argument validation", "[elastic][errors]") {
  REQUIRE_THROWS_AS(ef_solve_epsilon(0, 5), UsageError);
  REQUIRE_THROWS_AS(ef_solve_epsilon(1, 2), UsageError);
  REQUIRE_THROWS_AS(ef_solve_epsilon(5, 5), UsageError);
  REQUIRE_THROWS_AS(ef_solve_epsilon(2, 4), UsageError);
  REQUIRE_THROWS_AS(ef_solve_epsilon(7, 5), UsageError);
}
