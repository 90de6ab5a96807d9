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

/// Sixth-order (ideal) flow profile shooting problem.
///
/// State layout: (x, y, theta, k, p, Qre, Qim) where p = k_s and the
/// complex accumulator Q carries the third and mixed jets:
///   M = Re(Q e^{i theta}) = k_sss,  N = Im(Q e^{i theta}) = k k_ss - k_s^2/2,
/// so k_ss = (N + p^2/2) / k, which requires curvature bounded away from 0.
struct IdealParams {
  double alpha = 0.0;
  double eps = 0.0;
  double b = 0.0;         // initial N value, Q(0) = i b
  double k_floor = 1e-3;  // below this |k| the jet recovery degenerates
};

inline double ideal_M(const State<7>& u) {
  return u[5] * std::cos(u[2]) - u[6] * std::sin(u[2]);
}

inline double ideal_N(const State<7>& u) {
  return u[5] * std::sin(u[2]) + u[6] * std::cos(u[2]);
}

inline double ideal_k_ss(const State<7>& u) {
  return (ideal_N(u) + 0.5 * u[4] * u[4]) / u[3];
}

inline State<7> ideal_rhs(const State<7>& u, const IdealParams& P) {
  const double th = u[2], k = u[3], p = u[4];
  if (std::abs(k) < P.k_floor) {
    throw CurvatureVanished("ideal flow: |k| fell below the jet floor");
  }
  const double c = std::cos(th), s = std::sin(th);
  const double N = u[5] * s + u[6] * c;
  const double A = c + P.eps * (u[0] * c + u[1] * s);
  State<7> d;
  d[0] = -s;
  d[1] = c;
  d[2] = k;
  d[3] = p;
  d[4] = (N + 0.5 * p * p) / k;
  d[5] = -P.alpha * A * c;
  d[6] = P.alpha * A * s;
  return d;
}

inline double ideal_B(const State<7>& u, double eps) {
  const double c = std::cos(u[2]), s = std::sin(u[2]);
  return -s + eps * (u[1] * c - u[0] * s);
}

struct IdealEndpoint {
  double Phi;
  double U;
  double B;
  double Theta;
  double V;  // k_s at the far end; the seam defect left by the reduction
  State<7> end;
};

inline constexpr double kIdealAlphaSwitch = 1e-6;

/// Endpoint functional. V + U is differenced against the alpha = 0
/// baseline at the same (eps, b, L); below the switch the quotient turns
/// into a symmetric difference to stay well conditioned.
inline IdealEndpoint ideal_endpoint(const IdealParams& P, double L,
                                    const IntegratorSettings& set = {}) {
  const State<7> u0{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, P.b};
  auto run = [&](double alpha) -> State<7> {
    const IdealParams Q{alpha, P.eps, P.b, P.k_floor};
    return integrate([&Q](double, const State<7>& u) { return ideal_rhs(u, Q); },
                     0.0, L, u0, set)
        .back();
  };

  const State<7> end = run(P.alpha);
  const double V = end[4];
  const double U = ideal_M(end);
  const double G = V + U;

  double Phi;
  if (std::abs(P.alpha) >= kIdealAlphaSwitch) {
    const State<7> base = run(0.0);
    const double G0 = base[4] + ideal_M(base);
    Phi = (G - G0) / P.alpha;
  } else {
    const State<7> plus = run(kIdealAlphaSwitch);
    const State<7> minus = run(-kIdealAlphaSwitch);
    const double Gp = plus[4] + ideal_M(plus);
    const double Gm = minus[4] + ideal_M(minus);
    Phi = (Gp - Gm) / (2.0 * kIdealAlphaSwitch);
  }
  return IdealEndpoint{Phi, U, ideal_B(end, P.eps), end[2], V, end};
}

struct IdealArc {
  double alpha;
  double eps;
  double b;
  double L;
  double Theta;  // terminal tangent angle
  double sigma;  // profile coefficient -eps*alpha
  double res_Phi;
  double res_U;
  double res_B;
  double seam_defect;  // |k_s(L)|; not controlled by the reduced system
  Trajectory<7> traj;  // spans exactly [0, L]
};

/// Solve the arc at fixed eps: a 3-dimensional Newton iteration on
/// (alpha, b, L) drives (Phi, U, B) to zero.
inline IdealArc ideal_fundamental_arc(
    double eps, std::optional<std::array<double, 3>> seed = {},
    const SolveOptions& opt = {}) {
  const double pi = std::acos(-1.0);
  Vec<3> x0;
  if (seed) {
    x0 = {(*seed)[0], (*seed)[1], (*seed)[2]};
  } else {
    x0 = {0.0, -(8.0 / 3.0) * eps, pi * (1.0 + (8.0 / 3.0) * eps)};
  }

  auto F = [&](const Vec<3>& x) -> Vec<3> {
    if (!(x[2] > 0.1)) throw EvaluationFailure("ideal arc: length collapsed");
    const IdealEndpoint ep =
        ideal_endpoint(IdealParams{x[0], eps, x[1]}, x[2], opt.ode);
    return {ep.Phi, ep.U, ep.B};
  };
  const NewtonResult<3> nr = newton_solve(F, x0);

  const double alpha = nr.x[0], b = nr.x[1], L = nr.x[2];
  const IdealParams P{alpha, eps, b};
  const State<7> u0{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, b};
  Trajectory<7> traj = integrate(
      [&P](double, const State<7>& u) { return ideal_rhs(u, P); }, 0.0, L, u0,
      opt.ode);
  const State<7> end = traj.back();
  const IdealEndpoint ep = ideal_endpoint(P, L, opt.ode);
  return IdealArc{alpha,
                  eps,
                  b,
                  L,
                  end[2],
                  -eps * alpha,
                  ep.Phi,
                  ep.U,
                  ep.B,
                  std::abs(end[4]),
                  std::move(traj)};
}

/// Find the smallest eps > 0 whose arc meets the target terminal angle
/// p*pi/q. Targets outside (pi/2, pi) need unlock_wide_angles. The branch
/// angle folds at a deficit of about 0.1183 rad, so small q raise
/// TargetUnreachable.
inline IdealArc ideal_solve_epsilon(int p, int q, const SolveOptions& opt = {},
                                    BranchInfo* info = nullptr) {
  if (q < 2 || p < 1 || p >= q || std::gcd(p, q) != 1) {
    throw UsageError("ideal_solve_epsilon: need coprime 1 <= p < q");
  }
  if (!opt.unlock_wide_angles && 2 * p <= q) {
    throw UsageError(
        "ideal_solve_epsilon: target angle outside (pi/2, pi); pass "
        "unlock_wide_angles to try anyway");
  }
  const double pi = std::acos(-1.0);
  const double target = pi * p / q;

  auto resolve = [&](double eps,
                     const std::vector<double>& u) -> detail::BranchPoint {
    IdealArc arc =
        ideal_fundamental_arc(eps, std::array<double, 3>{u[0], u[1], u[2]}, opt);
    return detail::BranchPoint{eps, {arc.alpha, arc.b, arc.L}, arc.Theta};
  };
  auto analytic_seed = [&](double eps) -> std::vector<double> {
    return {0.0, -(8.0 / 3.0) * eps, pi * (1.0 + (8.0 / 3.0) * eps)};
  };

  detail::ContinuationResult res =
      detail::continue_to_angle(resolve, analytic_seed, pi, target, opt);
  if (info) *info = BranchInfo{res.branch_points, res.eps_last};
  return ideal_fundamental_arc(
      res.final.eps,
      std::array<double, 3>{res.final.u[0], res.final.u[1], res.final.u[2]},
      opt);
}

}  // namespace ssflow
