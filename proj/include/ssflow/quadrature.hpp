#pragma once

#include <cmath>
#include <cstdint>

#include "ssflow/errors.hpp"

namespace ssflow {

/// Adaptive Simpson quadrature with Richardson-extrapolated panels.
///
/// Intended for smooth integrands; panels split until the local Simpson
/// error estimate (S_fine - S_coarse)/15 meets the pro-rated tolerance.
/// Throws QuadratureFailure when the depth budget runs out.
template <class F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-13,
                          int max_depth = 48) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw UsageError("integrate_adaptive: non-finite interval");
  }
  if (a == b) return 0.0;

  struct Panel {
    static double simpson(double fa, double fm, double fb, double h) {
      return (h / 6.0) * (fa + 4.0 * fm + fb);
    }
    static double recurse(F& f, double a, double m, double b, double fa,
                          double fm, double fb, double whole, double tol,
                          int depth, int max_depth) {
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = simpson(fa, flm, fm, m - a);
      const double right = simpson(fm, frm, fb, b - m);
      const double err = (left + right - whole) / 15.0;
      if (std::abs(err) <= tol || (b - a) <= 1e-15 * (std::abs(a) + 1.0)) {
        return left + right + err;
      }
      if (depth >= max_depth) {
        throw QuadratureFailure("integrate_adaptive: depth exhausted");
      }
      return recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1,
                     max_depth) +
             recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1,
                     max_depth);
    }
  };

  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  if (!(std::isfinite(fa) && std::isfinite(fm) && std::isfinite(fb))) {
    throw QuadratureFailure("integrate_adaptive: non-finite integrand");
  }
  const double whole = Panel::simpson(fa, fm, fb, b - a);
  return Panel::recurse(f, a, m, b, fa, fm, fb, whole, abs_tol, 0, max_depth);
}

}  // namespace ssflow
