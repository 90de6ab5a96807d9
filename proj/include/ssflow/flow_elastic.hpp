#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <optional>

#include "ssflow/continuation.hpp"
#include "ssflow/errors.hpp"
#include "ssflow/ode.hpp"
#include "ssflow/quadrature.hpp"
#include "ssflow/rootfind.hpp"

namespace ssflow {

/// Elastic flow profile shooting problem.
///
/// State layout: (x, y, theta, k, v) with v = k_s. The curve is traced by
/// x' = -sin(theta), y' = cos(theta) and the profile ODE closes with
/// v' = -k^3/2 - alpha*cos(theta) - alpha*eps*(x*cos(theta) + y*sin(theta)).
struct EfParams {
  double alpha = 0.0;
  double eps = 0.0;
};

inline State<5> ef_rhs(const State<5>& u, const EfParams& P) {
  const double th = u[2], k = u[3], v = u[4];
  const double c = std::cos(th), s = std::sin(th);
  State<5> d;
  d[0] = -s;
  d[1] = c;
  d[2] = k;
  d[3] = v;
  d[4] = -0.5 * k * k * k - P.alpha * c - P.alpha * P.eps * (u[0] * c + u[1] * s);
  return d;
}

/// Seam alignment function at the far end of the arc; vanishes when the
/// tangent is orthogonal to the ray from the homothety centre.
inline double ef_b1(const State<5>& u, double eps) {
  const double c = std::cos(u[2]), s = std::sin(u[2]);
  return -s + eps * (u[1] * c - u[0] * s);
}

inline double ef_b2(const State<5>& u) { return u[4]; }

/// Base arc constants from quadrature, using the substitution k = sin(phi)
/// which removes the endpoint singularity of the arclength element.
struct EfBaseConstants {
  double L0;            // arc length of the base arc
  double y0;            // height of the far endpoint
  double I_cos2;        // integral of cos^2(theta) over the base arc
  double alpha_prime0;  // first-order response of alpha along the branch
};

inline EfBaseConstants ef_base_constants(double tol = 1e-13) {
  const double half_pi = std::asin(1.0);
  auto dphi = [](double phi) {
    const double s = std::sin(phi);
    return 2.0 / std::sqrt(1.0 + s * s);
  };
  EfBaseConstants out;
  out.L0 = integrate_adaptive([&](double p) { return dphi(p); }, -half_pi,
                              half_pi, tol);
  out.y0 = integrate_adaptive(
      [&](double p) {
        const double s = std::sin(p);
        return s * s * dphi(p);
      },
      -half_pi, half_pi, tol);
  out.I_cos2 = integrate_adaptive(
      [&](double p) {
        const double s = std::sin(p);
        return s * s * s * s * dphi(p);
      },
      -half_pi, half_pi, tol);
  out.alpha_prime0 = -out.y0 / (2.0 * out.I_cos2);
  return out;
}

/// Base arc integrated as an ODE, with an extra accumulator state
/// w' = cos^2(theta) so the I_cos2 constant has an independent second
/// computation. The terminal point is the transversal zero of v; the
/// curvature reaches -1 there tangentially, which callers can verify via
/// k_end.
struct EfBaseArc {
  Trajectory<6> traj;
  double L0;
  double theta_end;
  double k_end;
  double y_end;
  double I_cos2;
};

inline EfBaseArc ef_base_arc(const IntegratorSettings& set = {}) {
  auto rhs = [](double, const State<6>& u) {
    const double th = u[2], k = u[3], v = u[4];
    const double c = std::cos(th), s = std::sin(th);
    return State<6>{-s, c, k, v, -0.5 * k * k * k, c * c};
  };
  const State<6> u0{0.0, 0.0, 0.0, 1.0, 0.0, 0.0};
  Trajectory<6> traj = integrate(rhs, 0.0, 6.8, u0, set);
  const double L0 = locate_event(
      traj, [](double, const State<6>& u) { return u[4]; }, 1.0, 6.5);
  const State<6> end = traj(L0);
  return EfBaseArc{std::move(traj), L0, end[2], end[3], end[1], end[5]};
}

struct EfArc {
  double alpha;
  double eps;
  double L;
  double theta_bar;  // terminal tangent angle
  double sigma;      // profile coefficient -eps*alpha
  double res_b1;
  double res_b2;
  Trajectory<5> traj;  // spans exactly [0, L]
};

/// Locate the seam length: the zero of the alignment function b1 nearest
/// the guess, searched inside [0.55, 1.4]*L_guess. The trajectory must
/// cover that window.
inline double ef_solve_L(const Trajectory<5>& traj, double eps,
                         double L_guess) {
  auto g = [eps](double, const State<5>& u) { return ef_b1(u, eps); };
  const double lo = 0.55 * L_guess;
  const double hi = std::min(1.4 * L_guess, traj.s_end());
  try {
    return locate_event(traj, g, lo, hi);
  } catch (const AmbiguousEvent&) {
    return locate_event(traj, g, 0.75 * L_guess,
                        std::min(1.2 * L_guess, traj.s_end()));
  }
}

/// Solve the arc at fixed eps: an outer scalar Newton drives v(L(alpha)) to
/// zero while the inner stage relocates the seam length for every alpha.
inline EfArc ef_fundamental_arc(double eps,
                                std::optional<std::array<double, 2>> seed = {},
                                const SolveOptions& opt = {}) {
  static const EfBaseConstants kBase = ef_base_constants();
  double alpha0 = seed ? (*seed)[0] : kBase.alpha_prime0 * eps;
  double L_state = seed ? (*seed)[1] : kBase.L0;

  const State<5> u0{0.0, 0.0, 0.0, 1.0, 0.0};
  auto arc_at = [&](double alpha) {
    const EfParams P{alpha, eps};
    Trajectory<5> traj = integrate(
        [&P](double, const State<5>& u) { return ef_rhs(u, P); }, 0.0,
        1.4 * L_state, u0, opt.ode);
    const double L = ef_solve_L(traj, eps, L_state);
    return std::make_pair(std::move(traj), L);
  };

  auto g = [&](double alpha) {
    auto [traj, L] = arc_at(alpha);
    L_state = L;
    return ef_b2(traj(L));
  };

  ScalarRootOptions ro;
  ro.tol = 1e-12;
  const double alpha_star = scalar_root(g, alpha0, ro);

  const double L_star = arc_at(alpha_star).second;
  const EfParams P{alpha_star, eps};
  Trajectory<5> traj = integrate(
      [&P](double, const State<5>& u) { return ef_rhs(u, P); }, 0.0, L_star,
      u0, opt.ode);
  const State<5> end = traj.back();
  EfArc arc{alpha_star,        eps,        L_star,
            end[2],            -eps * alpha_star,
            ef_b1(end, eps),   ef_b2(end), std::move(traj)};
  return arc;
}

/// Find the smallest eps > 0 whose arc meets the target terminal angle
/// p*pi/q, by continuation from the base arc.
inline EfArc ef_solve_epsilon(int p, int q, const SolveOptions& opt = {},
                              BranchInfo* info = nullptr) {
  if (q < 3 || p < 1 || p >= q || std::gcd(p, q) != 1) {
    throw UsageError("ef_solve_epsilon: need coprime 1 <= p < q, q >= 3");
  }
  static const EfBaseConstants kBase = ef_base_constants();
  const double target = std::acos(-1.0) * p / q;

  auto resolve = [&](double eps,
                     const std::vector<double>& u) -> detail::BranchPoint {
    EfArc arc = ef_fundamental_arc(eps, std::array<double, 2>{u[0], u[1]}, opt);
    return detail::BranchPoint{eps, {arc.alpha, arc.L}, arc.theta_bar};
  };
  auto analytic_seed = [&](double eps) -> std::vector<double> {
    return {kBase.alpha_prime0 * eps, kBase.L0};
  };

  detail::ContinuationResult res =
      detail::continue_to_angle(resolve, analytic_seed, 0.0, target, opt);
  if (info) *info = BranchInfo{res.branch_points, res.eps_last};
  EfArc arc = ef_fundamental_arc(
      res.final.eps, std::array<double, 2>{res.final.u[0], res.final.u[1]},
      opt);
  return arc;
}

}  // namespace ssflow
