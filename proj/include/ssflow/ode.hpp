#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ssflow/errors.hpp"

namespace ssflow {

template <std::size_t N>
using State = std::array<double, N>;

struct IntegratorSettings {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double h_init = 0.0;  // 0 means choose automatically
  double h_max = 0.0;   // 0 means the full span
  std::size_t max_steps = 200000;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double kC[7] = {0.0,     1.0 / 5, 3.0 / 10, 4.0 / 5,
                                 8.0 / 9, 1.0,     1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// Difference between the 5th and the embedded 4th order weights.
inline constexpr double kE[7] = {71.0 / 57600,     0.0,          -71.0 / 16695,
                                 71.0 / 1920,      -17253.0 / 339200,
                                 22.0 / 525,       -1.0 / 40};
// Dense output weights.
inline constexpr double kD[7] = {-12715105075.0 / 11282082432.0,
                                 0.0,
                                 87487479700.0 / 32700410799.0,
                                 -10690763975.0 / 1880347072.0,
                                 701980252875.0 / 199316789632.0,
                                 -1453857185.0 / 822651844.0,
                                 69997945.0 / 29380423.0};

template <std::size_t N>
bool finite(const State<N>& y) {
  for (double v : y) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace detail

/// Result of an adaptive integration: step nodes plus a quartic dense
/// interpolant on every step, evaluable anywhere in [s_begin, s_end].
template <std::size_t N>
class Trajectory {
 public:
  struct Step {
    double s0;
    double h;
    State<N> r1, r2, r3, r4, r5;
  };

  Trajectory(double s0, State<N> y0) : s_begin_(s0), s_end_(s0), y0_(y0) {}

  double s_begin() const { return s_begin_; }
  double s_end() const { return s_end_; }

  const State<N>& front() const { return y0_; }
  const State<N>& back() const { return y_end_; }

  std::size_t step_count() const { return steps_.size(); }

  std::vector<double> nodes() const {
    std::vector<double> out;
    out.reserve(steps_.size() + 1);
    out.push_back(s_begin_);
    for (const Step& st : steps_) out.push_back(st.s0 + st.h);
    return out;
  }

  State<N> operator()(double s) const {
    const double span = s_end_ - s_begin_;
    const double slack = 1e-12 * (std::abs(span) + std::abs(s_begin_) + 1.0);
    if (s < s_begin_ - slack || s > s_end_ + slack) {
      throw UsageError("Trajectory: evaluation outside integration span");
    }
    if (steps_.empty()) return y0_;
    s = std::clamp(s, s_begin_, s_end_);
    std::size_t lo = 0, hi = steps_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (s <= steps_[mid].s0 + steps_[mid].h) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const Step& st = steps_[lo];
    const double th = (s - st.s0) / st.h;
    const double th1 = 1.0 - th;
    State<N> out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = st.r1[i] +
               th * (st.r2[i] +
                     th1 * (st.r3[i] + th * (st.r4[i] + th1 * st.r5[i])));
    }
    return out;
  }

  template <std::size_t M, class RHS>
  friend Trajectory<M> integrate(RHS&& f, double s0, double s1,
                                 const State<M>& y0,
                                 const IntegratorSettings& set);

 private:
  double s_begin_, s_end_;
  State<N> y0_, y_end_ = {};
  std::vector<Step> steps_;
};

namespace detail {

template <std::size_t N, class RHS>
double initial_step(RHS& f, double s0, const State<N>& y0, const State<N>& f0,
                    double span, double rel_tol, double abs_tol) {
  auto scn = [&](const State<N>& v, const State<N>& ref) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = abs_tol + rel_tol * std::abs(ref[i]);
      acc += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(acc / N);
  };
  const double d0 = scn(y0, y0);
  const double d1 = scn(f0, y0);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  State<N> y1;
  for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + h0 * f0[i];
  const State<N> f1 = f(s0 + h0, y1);
  State<N> df;
  for (std::size_t i = 0; i < N; ++i) df[i] = f1[i] - f0[i];
  const double d2 = scn(df, y0) / h0;
  const double dm = std::max(d1, d2);
  const double h1 =
      dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
  return std::min({100.0 * h0, h1, span});
}

}  // namespace detail

/// Integrate y' = f(s, y) from s0 to s1 (s1 >= s0) with the adaptive
/// embedded Dormand-Prince 5(4) pair, recording dense output.
template <std::size_t N, class RHS>
Trajectory<N> integrate(RHS&& f, double s0, double s1, const State<N>& y0,
                        const IntegratorSettings& set = {}) {
  if (s1 < s0) throw UsageError("integrate: backward span");
  if (!detail::finite(y0)) throw NonFiniteState("integrate: bad initial state");

  Trajectory<N> traj(s0, y0);
  traj.y_end_ = y0;
  if (s1 == s0) return traj;

  const double span = s1 - s0;
  const double h_max = set.h_max > 0.0 ? set.h_max : span;

  double s = s0;
  State<N> y = y0;
  State<N> k[7];
  k[0] = f(s, y);
  if (!detail::finite(k[0])) throw NonFiniteState("integrate: bad derivative");

  double h = set.h_init > 0.0
                 ? std::min(set.h_init, span)
                 : detail::initial_step(f, s0, y, k[0], span, set.rel_tol,
                                        set.abs_tol);
  h = std::min(h, h_max);

  bool last_rejected = false;
  std::size_t n_steps = 0;
  while (s < s1) {
    if (++n_steps > set.max_steps) {
      throw StepLimitExceeded("integrate: step budget exhausted");
    }
    const double h_floor = 16.0 * 2.22e-16 * std::max(std::abs(s), 1.0);
    h = std::max(h, h_floor);
    if (s + 1.01 * h >= s1) h = s1 - s;

    State<N> yi;
    for (int st = 1; st < 7; ++st) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (int j = 0; j < st; ++j) acc += detail::kA[st][j] * k[j][i];
        yi[i] = y[i] + h * acc;
      }
      k[st] = f(s + detail::kC[st] * h, yi);
      if (!detail::finite(k[st])) {
        throw NonFiniteState("integrate: non-finite derivative");
      }
    }
    // Stage 7 already produced the 5th order solution state.
    const State<N>& y1 = yi;
    if (!detail::finite(y1)) throw NonFiniteState("integrate: non-finite state");

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double e = 0.0;
      for (int j = 0; j < 7; ++j) e += detail::kE[j] * k[j][i];
      const double sc = set.abs_tol +
                        set.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
      const double q = h * e / sc;
      err += q * q;
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      typename Trajectory<N>::Step rec;
      rec.s0 = s;
      rec.h = h;
      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k[0][i] - ydiff;
        rec.r1[i] = y[i];
        rec.r2[i] = ydiff;
        rec.r3[i] = bspl;
        rec.r4[i] = ydiff - h * k[6][i] - bspl;
        double dacc = 0.0;
        for (int j = 0; j < 7; ++j) dacc += detail::kD[j] * k[j][i];
        rec.r5[i] = h * dacc;
      }
      traj.steps_.push_back(rec);
      s += h;
      y = y1;
      k[0] = k[6];  // first-same-as-last
      const double fac =
          std::min(last_rejected ? 1.0 : 10.0,
                   std::max(0.2, 0.9 * std::pow(err, -0.2)));
      h = std::min(h * fac, h_max);
      last_rejected = false;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
  traj.s_end_ = s1;
  traj.y_end_ = y;
  return traj;
}

struct EventOptions {
  double tol = 1e-13;      // |g| convergence target
  int scan_points = 128;   // uniform scan resolution across the bracket
  int max_iter = 200;
};

/// Locate a zero of g(s, y(s)) along a trajectory inside [s_lo, s_hi].
/// The scan must isolate exactly one sign change; the root is then polished
/// by a bisection-safeguarded Newton iteration on the dense interpolant.
template <std::size_t N, class G>
double locate_event(const Trajectory<N>& traj, G&& g, double s_lo, double s_hi,
                    const EventOptions& opt = {}) {
  if (!(s_hi > s_lo)) throw UsageError("locate_event: empty bracket");
  auto gs = [&](double s) { return g(s, traj(s)); };

  const int m = std::max(2, opt.scan_points);
  double prev_s = s_lo;
  double prev_g = gs(s_lo);
  double root_lo = 0.0, root_hi = 0.0, g_lo = 0.0, g_hi = 0.0;
  int crossings = 0;
  for (int i = 1; i <= m; ++i) {
    const double si = s_lo + (s_hi - s_lo) * static_cast<double>(i) / m;
    const double gi = gs(si);
    if ((prev_g < 0.0 && gi > 0.0) || (prev_g > 0.0 && gi < 0.0) ||
        (gi == 0.0 && i < m)) {
      ++crossings;
      if (crossings == 1) {
        root_lo = prev_s;
        root_hi = si;
        g_lo = prev_g;
        g_hi = gi;
      }
    }
    prev_s = si;
    prev_g = gi;
  }
  if (crossings == 0) throw NoSignChange("locate_event: no zero in bracket");
  if (crossings > 1) {
    throw AmbiguousEvent("locate_event: multiple zeros in bracket");
  }
  if (g_hi == 0.0) return root_hi;
  if (g_lo == 0.0) return root_lo;

  double a = root_lo, b = root_hi, ga = g_lo;
  double x = 0.5 * (a + b);
  const double fd_h = 1e-7 * (s_hi - s_lo);
  for (int it = 0; it < opt.max_iter; ++it) {
    const double gx = gs(x);
    if (std::abs(gx) <= opt.tol) return x;
    if ((ga < 0.0) == (gx < 0.0)) {
      a = x;
      ga = gx;
    } else {
      b = x;
    }
    if (b - a <= 1e-15 * std::max(1.0, std::abs(x))) return x;
    const double xl = std::max(a, x - fd_h);
    const double xr = std::min(b, x + fd_h);
    const double d = (gs(xr) - gs(xl)) / (xr - xl);
    double xn = std::isfinite(d) && d != 0.0 ? x - gx / d : 0.5 * (a + b);
    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    x = xn;
  }
  return x;
}

}  // namespace ssflow
