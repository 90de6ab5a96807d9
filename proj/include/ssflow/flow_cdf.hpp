#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <optional>

#include "ssflow/continuation.hpp"
#include "ssflow/errors.hpp"
#include "ssflow/ode.hpp"
#include "ssflow/rootfind.hpp"

namespace ssflow {

/// Curve diffusion flow profile shooting problem.
///
/// State layout: (x, y, theta, k, v, phi) with v = k_s and an accumulator
/// phi' = -A for the integrated flux A = cos(theta) + eps*(x cos + y sin);
/// phi(L) equals the first endpoint residual exactly, and the identity
/// v(L) = -alpha*phi(L) holds along every trajectory.
struct CdfParams {
  double alpha = 0.0;
  double eps = 0.0;
};

inline State<6> cdf_rhs(const State<6>& u, const CdfParams& P) {
  const double th = u[2], k = u[3], v = u[4];
  const double c = std::cos(th), s = std::sin(th);
  const double A = c + P.eps * (u[0] * c + u[1] * s);
  State<6> d;
  d[0] = -s;
  d[1] = c;
  d[2] = k;
  d[3] = v;
  d[4] = P.alpha * A;
  d[5] = -A;
  return d;
}

inline double cdf_B(const State<6>& u, double eps) {
  const double c = std::cos(u[2]), s = std::sin(u[2]);
  return -s + eps * (u[1] * c - u[0] * s);
}

struct CdfEndpoint {
  double Phi;
  double B;
  double Theta;
  State<6> end;
};

inline CdfEndpoint cdf_endpoint(const CdfParams& P, double L,
                                const IntegratorSettings& set = {}) {
  const State<6> u0{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  Trajectory<6> traj = integrate(
      [&P](double, const State<6>& u) { return cdf_rhs(u, P); }, 0.0, L, u0,
      set);
  const State<6> end = traj.back();
  return CdfEndpoint{end[5], cdf_B(end, P.eps), end[2], end};
}

struct CdfArc {
  double alpha;
  double eps;
  double L;
  double Theta;  // terminal tangent angle
  double sigma;  // profile coefficient -eps*alpha
  double res_Phi;
  double res_B;
  Trajectory<6> traj;  // spans exactly [0, L]
};

/// Solve the arc at fixed eps: a 2-dimensional Newton iteration on
/// (alpha, L) drives the endpoint pair (Phi, B) to zero.
inline CdfArc cdf_fundamental_arc(double eps,
                                  std::optional<std::array<double, 2>> seed = {},
                                  const SolveOptions& opt = {}) {
  const double pi = std::acos(-1.0);
  Vec<2> x0;
  if (seed) {
    x0 = {(*seed)[0], (*seed)[1]};
  } else {
    x0 = {-2.0 * eps + 8.0 * eps * eps,
          pi * (1.0 + 2.0 * eps + 3.5 * eps * eps)};
  }

  auto F = [&](const Vec<2>& x) -> Vec<2> {
    if (!(x[1] > 0.1)) throw EvaluationFailure("cdf arc: length collapsed");
    const CdfEndpoint ep = cdf_endpoint(CdfParams{x[0], eps}, x[1], opt.ode);
    return {ep.Phi, ep.B};
  };
  const NewtonResult<2> nr = newton_solve(F, x0);

  const double alpha = nr.x[0], L = nr.x[1];
  if (std::abs(alpha) < 1e-8 && std::abs(eps) > 1e-4) {
    throw DegenerateCircle("cdf arc: alpha ~ 0 at finite eps");
  }
  const CdfParams P{alpha, eps};
  const State<6> u0{1.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  Trajectory<6> traj = integrate(
      [&P](double, const State<6>& u) { return cdf_rhs(u, P); }, 0.0, L, u0,
      opt.ode);
  const State<6> end = traj.back();
  return CdfArc{alpha,  eps,
                L,      end[2],
                -eps * alpha, end[5],
                cdf_B(end, eps), std::move(traj)};
}

/// Find the smallest eps > 0 whose arc meets the target terminal angle
/// p*pi/q. Targets outside (pi/2, pi) need unlock_wide_angles.
inline CdfArc cdf_solve_epsilon(int p, int q, const SolveOptions& opt = {},
                                BranchInfo* info = nullptr) {
  if (q < 2 || p < 1 || p >= q || std::gcd(p, q) != 1) {
    throw UsageError("cdf_solve_epsilon: need coprime 1 <= p < q");
  }
  if (!opt.unlock_wide_angles && 2 * p <= q) {
    throw UsageError(
        "cdf_solve_epsilon: target angle outside (pi/2, pi); pass "
        "unlock_wide_angles to try anyway");
  }
  const double pi = std::acos(-1.0);
  const double target = pi * p / q;

  auto resolve = [&](double eps,
                     const std::vector<double>& u) -> detail::BranchPoint {
    CdfArc arc = cdf_fundamental_arc(eps, std::array<double, 2>{u[0], u[1]}, opt);
    return detail::BranchPoint{eps, {arc.alpha, arc.L}, arc.Theta};
  };
  auto analytic_seed = [&](double eps) -> std::vector<double> {
    return {-2.0 * eps + 8.0 * eps * eps,
            pi * (1.0 + 2.0 * eps + 3.5 * eps * eps)};
  };

  detail::ContinuationResult res =
      detail::continue_to_angle(resolve, analytic_seed, pi, target, opt);
  if (info) *info = BranchInfo{res.branch_points, res.eps_last};
  return cdf_fundamental_arc(
      res.final.eps, std::array<double, 2>{res.final.u[0], res.final.u[1]},
      opt);
}

}  // namespace ssflow
