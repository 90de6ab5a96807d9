#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssflow/errors.hpp"
#include "ssflow/ode.hpp"
#include "ssflow/rootfind.hpp"

namespace ssflow {

enum class FlowKind { elastic, curve_diffusion, ideal };

inline const char* flow_name(FlowKind k) {
  switch (k) {
    case FlowKind::elastic:
      return "ef";
    case FlowKind::curve_diffusion:
      return "cdf";
    case FlowKind::ideal:
      return "ideal";
  }
  return "?";
}

/// Continuation metadata reported in run manifests.
struct BranchInfo {
  std::size_t branch_points = 0;
  double eps_last = 0.0;
};

/// Options shared by the per-flow epsilon solvers.
struct SolveOptions {
  IntegratorSettings ode{};
  double angle_tol = 1e-10;
  double eps_step0 = 0.01;
  double eps_step_min = 1e-5;
  double eps_step_max = 0.01;
  double eps_max = 0.9;
  bool unlock_wide_angles = false;
  std::optional<double> seed_eps;
};

namespace detail {

struct BranchPoint {
  double eps = 0.0;
  std::vector<double> u;  // flow unknowns at this eps
  double angle = 0.0;     // terminal tangent angle of the solved arc
};

struct ContinuationResult {
  BranchPoint final;
  std::size_t branch_points = 0;
  double eps_last = 0.0;
};

/// March a solution branch in eps from 0+ until the terminal angle crosses
/// `target`, then refine the first crossing. `resolve(eps, seed)` solves the
/// arc at fixed eps; `analytic_seed(eps)` provides first-order seeds near 0.
///
/// Steps halve when a resolve fails (BranchLost below the minimum step) and
/// the march aborts with TargetUnreachable when the branch's closest angle
/// approach starts receding or eps_max is hit without a bracket.
inline ContinuationResult continue_to_angle(
    const std::function<BranchPoint(double, const std::vector<double>&)>&
        resolve,
    const std::function<std::vector<double>(double)>& analytic_seed,
    double angle_at_zero, double target, const SolveOptions& opt) {
  std::vector<BranchPoint> pts;
  pts.push_back(BranchPoint{0.0, analytic_seed(0.0), angle_at_zero});

  auto seed_at = [&](double eps) -> std::vector<double> {
    if (pts.size() < 2) {
      if (pts.size() == 1 && pts.back().eps > 0.0) return pts.back().u;
      return analytic_seed(eps);
    }
    const BranchPoint& p1 = pts[pts.size() - 2];
    const BranchPoint& p2 = pts.back();
    const double t = (eps - p1.eps) / (p2.eps - p1.eps);
    std::vector<double> u(p2.u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = p1.u[i] + t * (p2.u[i] - p1.u[i]);
    }
    return u;
  };

  auto refine = [&](const BranchPoint& lo, const BranchPoint& hi)
      -> BranchPoint {
    BranchPoint found;
    auto h = [&](double eps) {
      const double t = (eps - lo.eps) / (hi.eps - lo.eps);
      std::vector<double> u(lo.u.size());
      for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = lo.u[i] + t * (hi.u[i] - lo.u[i]);
      }
      found = resolve(eps, u);
      return found.angle - target;
    };
    ScalarRootOptions ro;
    ro.tol = opt.angle_tol;
    ro.bracket = std::make_pair(lo.eps, hi.eps);
    ro.max_iter = 200;
    const double root = scalar_root(h, 0.5 * (lo.eps + hi.eps), ro);
    if (found.eps != root) found = resolve(root, found.u);
    return found;
  };

  double de = opt.eps_step0;
  double eps = opt.eps_step0;
  if (opt.seed_eps && *opt.seed_eps > 0.0) {
    try {
      BranchPoint bp = resolve(*opt.seed_eps, analytic_seed(*opt.seed_eps));
      const double f0 = pts.back().angle - target;
      const double f1 = bp.angle - target;
      if ((f0 < 0.0) != (f1 < 0.0)) {
        ContinuationResult res;
        res.final = refine(pts.back(), bp);
        res.branch_points = 2;
        res.eps_last = bp.eps;
        return res;
      }
      pts.push_back(bp);
      eps = bp.eps + de;
    } catch (const Error&) {
      // fall back to the standard march from small eps
    }
  }

  double best_miss = std::abs(angle_at_zero - target);
  int receding = 0;
  while (true) {
    BranchPoint bp;
    try {
      bp = resolve(eps, seed_at(eps));
    } catch (const Error&) {
      de *= 0.5;
      if (de < opt.eps_step_min) {
        throw BranchLost("continue_to_angle: branch lost at eps = " +
                         std::to_string(pts.back().eps));
      }
      eps = pts.back().eps + de;
      continue;
    }

    const double f_prev = pts.back().angle - target;
    const double f_here = bp.angle - target;
    if ((f_prev < 0.0) != (f_here < 0.0) || f_here == 0.0) {
      ContinuationResult res;
      res.final = refine(pts.back(), bp);
      res.branch_points = pts.size() + 1;
      res.eps_last = bp.eps;
      return res;
    }

    const double miss = std::abs(f_here);
    if (miss < best_miss - opt.angle_tol) {
      best_miss = miss;
      receding = 0;
    } else {
      ++receding;
    }
    pts.push_back(bp);
    if (receding >= 3 && best_miss > 10.0 * opt.angle_tol) {
      throw TargetUnreachable(
          "continue_to_angle: branch angle recedes from target; closest "
          "approach " +
          std::to_string(best_miss) + " rad at eps <= " +
          std::to_string(bp.eps));
    }
    if (eps >= opt.eps_max) {
      throw TargetUnreachable(
          "continue_to_angle: eps_max reached without bracketing target");
    }
    de = std::min(opt.eps_step_max, de * 1.3);
    eps = std::min(pts.back().eps + de, opt.eps_max);
  }
}

}  // namespace detail

}  // namespace ssflow
