#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "ssflow/errors.hpp"
#include "ssflow/flow_cdf.hpp"
#include "ssflow/flow_elastic.hpp"
#include "ssflow/flow_ideal.hpp"

namespace ssflow {

struct CurveSample {
  double s;
  double x, y;   // centred frame: homothety centre at the origin
  double theta;  // cumulative tangent angle, T = (-sin, cos) of it
  double k, k_s, k_ss, k_sss;
};

/// A fundamental arc resampled uniformly in the centred frame. The sample
/// list has n+1 entries covering [0, L]; the start lies on the positive
/// x-axis with vertical tangent.
struct ArcSamples {
  FlowKind kind;
  double alpha = 0.0, eps = 0.0, b = 0.0, L = 0.0, sigma = 0.0;
  double angle = 0.0;  // terminal tangent angle of the arc
  std::vector<CurveSample> pts;
};

inline ArcSamples to_centred(const EfArc& arc, int n_samples = 2048) {
  if (arc.eps == 0.0) throw EpsilonZero("to_centred: eps must be nonzero");
  ArcSamples out{FlowKind::elastic, arc.alpha, arc.eps, 0.0,
                 arc.L, arc.sigma, arc.theta_bar, {}};
  out.pts.reserve(n_samples + 1);
  const double ds = arc.L / n_samples;
  for (int i = 0; i <= n_samples; ++i) {
    const double s = i == n_samples ? arc.L : i * ds;
    const State<5> u = arc.traj(s);
    const double c = std::cos(u[2]), sn = std::sin(u[2]);
    const double X = u[0] + 1.0 / arc.eps, Y = u[1];
    const double radial = X * c + Y * sn;
    const double trans = -X * sn + Y * c;
    const double k = u[3], v = u[4];
    const double k_ss = -0.5 * k * k * k - arc.alpha * arc.eps * radial;
    const double k_sss = -1.5 * k * k * v - arc.alpha * arc.eps * k * trans;
    out.pts.push_back(CurveSample{s, X, Y, u[2], k, v, k_ss, k_sss});
  }
  return out;
}

inline ArcSamples to_centred(const CdfArc& arc, int n_samples = 2048) {
  if (arc.eps == 0.0) throw EpsilonZero("to_centred: eps must be nonzero");
  ArcSamples out{FlowKind::curve_diffusion, arc.alpha, arc.eps, 0.0,
                 arc.L, arc.sigma, arc.Theta, {}};
  out.pts.reserve(n_samples + 1);
  const double ds = arc.L / n_samples;
  for (int i = 0; i <= n_samples; ++i) {
    const double s = i == n_samples ? arc.L : i * ds;
    const State<6> u = arc.traj(s);
    const double c = std::cos(u[2]), sn = std::sin(u[2]);
    const double X = u[0] + 1.0 / arc.eps, Y = u[1];
    const double radial = X * c + Y * sn;
    const double trans = -X * sn + Y * c;
    const double k = u[3], v = u[4];
    const double k_ss = arc.alpha * arc.eps * radial;
    const double k_sss = arc.alpha * arc.eps * k * trans;
    out.pts.push_back(CurveSample{s, X, Y, u[2], k, v, k_ss, k_sss});
  }
  return out;
}

inline ArcSamples to_centred(const IdealArc& arc, int n_samples = 2048) {
  if (arc.eps == 0.0) throw EpsilonZero("to_centred: eps must be nonzero");
  ArcSamples out{FlowKind::ideal, arc.alpha, arc.eps, arc.b,
                 arc.L, arc.sigma, arc.Theta, {}};
  out.pts.reserve(n_samples + 1);
  const double ds = arc.L / n_samples;
  for (int i = 0; i <= n_samples; ++i) {
    const double s = i == n_samples ? arc.L : i * ds;
    const State<7> u = arc.traj(s);
    const double X = u[0] + 1.0 / arc.eps, Y = u[1];
    out.pts.push_back(CurveSample{s, X, Y, u[2], u[3], u[4], ideal_k_ss(u),
                                  ideal_M(u)});
  }
  return out;
}

struct SeamJumps {
  double k = 0.0, k_s = 0.0, k_ss = 0.0, k_sss = 0.0;
};

struct ClosedProfile {
  FlowKind kind;
  int p = 0, q = 0;
  double alpha = 0.0, eps = 0.0, b = 0.0, L = 0.0, sigma = 0.0;
  double angle = 0.0;           // solved terminal angle of the arc
  double angle_residual = 0.0;  // |angle - p*pi/q|
  int n_arc = 0;                // intervals per fundamental arc
  std::vector<CurveSample> pts;  // 2*n_arc*q points; closes onto pts[0]
  CurveSample closing;           // terminal point; coincides with pts[0]
                                 // up to closure_residual
  SeamJumps max_seam_jump;
  double closure_residual = 0.0;
  double turning = 0.0;  // total tangent winding / 2*pi
  double rho_pow_q_dev = 0.0;
  double diameter = 0.0;
};

namespace detail {

inline double polygon_diameter(const std::vector<CurveSample>& pts) {
  std::vector<std::array<double, 2>> P;
  P.reserve(pts.size());
  for (const CurveSample& c : pts) P.push_back({c.x, c.y});
  std::sort(P.begin(), P.end());
  P.erase(std::unique(P.begin(), P.end()), P.end());
  const std::size_t n = P.size();
  if (n < 2) return 0.0;
  auto cross = [](const std::array<double, 2>& O, const std::array<double, 2>& A,
                  const std::array<double, 2>& B) {
    return (A[0] - O[0]) * (B[1] - O[1]) - (A[1] - O[1]) * (B[0] - O[0]);
  };
  std::vector<std::array<double, 2>> H(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(H[k - 2], H[k - 1], P[i]) <= 0.0) --k;
    H[k++] = P[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(H[k - 2], H[k - 1], P[i]) <= 0.0) --k;
    H[k++] = P[i];
  }
  H.resize(k - 1);
  const std::size_t m = H.size();
  auto dist2 = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1];
    return dx * dx + dy * dy;
  };
  if (m < 3) return std::sqrt(dist2(H[0], H[m - 1]));
  double best = 0.0;
  std::size_t j = 1;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t ni = (i + 1) % m;
    std::size_t guard = 0;
    while (guard++ < 2 * m &&
           cross(H[i], H[ni], H[(j + 1) % m]) > cross(H[i], H[ni], H[j])) {
      j = (j + 1) % m;
    }
    best = std::max({best, dist2(H[i], H[j]), dist2(H[ni], H[j]),
                     dist2(H[i], H[(j + 1) % m]), dist2(H[ni], H[(j + 1) % m])});
  }
  return std::sqrt(best);
}

}  // namespace detail

/// Double the arc across its terminal seam line and lay down q rotated
/// copies. The seam line is taken at the exact rational angle p*pi/q and
/// the copy rotations at exact multiples of 2*p*pi/q; the mismatch between
/// the solved terminal angle and p*pi/q is recorded, not absorbed.
inline ClosedProfile double_and_close(const ArcSamples& arc, int p, int q,
                                      double angle_tol = 1e-10) {
  const int n = static_cast<int>(arc.pts.size()) - 1;
  if (n < 2 || q < 1 || p < 1) throw UsageError("double_and_close: bad input");
  const double pi = std::acos(-1.0);
  const double phi = pi * p / q;
  const double angle_residual = std::abs(arc.angle - phi);
  if (angle_residual > std::max(1e-6, 10.0 * angle_tol)) {
    throw SeamViolation("double_and_close: arc angle does not match p*pi/q");
  }

  ClosedProfile out;
  out.kind = arc.kind;
  out.p = p;
  out.q = q;
  out.alpha = arc.alpha;
  out.eps = arc.eps;
  out.b = arc.b;
  out.L = arc.L;
  out.sigma = arc.sigma;
  out.angle = arc.angle;
  out.angle_residual = angle_residual;
  out.n_arc = n;

  const double c2 = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);
  std::vector<CurveSample> doubled(2 * n + 1);
  for (int t = 0; t <= n; ++t) doubled[t] = arc.pts[t];
  for (int m = 1; m <= n; ++m) {
    const CurveSample& src = arc.pts[n - m];
    CurveSample d;
    d.s = arc.L + (arc.L - src.s);
    d.x = c2 * src.x + s2 * src.y;
    d.y = s2 * src.x - c2 * src.y;
    d.theta = 2.0 * phi - src.theta;
    d.k = src.k;
    d.k_s = -src.k_s;
    d.k_ss = src.k_ss;
    d.k_sss = -src.k_sss;
    doubled[n + m] = d;
  }

  out.pts.reserve(static_cast<std::size_t>(2 * n) * q);
  for (int j = 0; j < q; ++j) {
    const double beta = 2.0 * pi * p * j / q;
    const double cb = std::cos(beta), sb = std::sin(beta);
    for (int t = 0; t < 2 * n; ++t) {
      CurveSample smp = doubled[t];
      const double X = smp.x, Y = smp.y;
      smp.x = cb * X - sb * Y;
      smp.y = sb * X + cb * Y;
      smp.theta += beta;
      smp.s += j * 2.0 * arc.L;
      out.pts.push_back(smp);
    }
  }

  // Closing point: the last copy's doubled endpoint, rotated into place.
  {
    const double beta = 2.0 * pi * p * (q - 1) / q;
    const double cb = std::cos(beta), sb = std::sin(beta);
    const CurveSample& e = doubled[2 * n];
    CurveSample close = e;
    close.x = cb * e.x - sb * e.y;
    close.y = sb * e.x + cb * e.y;
    close.theta = e.theta + beta;
    close.s = e.s + (q - 1) * 2.0 * arc.L;
    out.closing = close;
    out.turning = (close.theta - out.pts[0].theta) / (2.0 * pi);

    // Adjacent copies meet where the arc endpoints sit on their seam
    // lines; the gap at a seam is twice the endpoint's distance from the
    // line. The composed full-turn defect of the closing point is pure
    // rotation round-off but is folded in for completeness.
    const CurveSample& a0 = arc.pts[0];
    const CurveSample& aL = arc.pts[n];
    const double near_gap = 2.0 * std::abs(a0.y);
    const double far_gap =
        2.0 * std::abs(-std::sin(phi) * aL.x + std::cos(phi) * aL.y);
    const double dx = close.x - out.pts[0].x, dy = close.y - out.pts[0].y;
    out.closure_residual = std::max({near_gap, far_gap, std::hypot(dx, dy)});
  }

  // Jet jumps across the two seam classes; every other seam is an
  // isometric image of one of these.
  {
    const CurveSample& a0 = arc.pts[0];
    const CurveSample& aL = arc.pts[n];
    out.max_seam_jump.k = 0.0;
    out.max_seam_jump.k_s = 2.0 * std::max(std::abs(a0.k_s), std::abs(aL.k_s));
    out.max_seam_jump.k_ss = 0.0;
    out.max_seam_jump.k_sss =
        2.0 * std::max(std::abs(a0.k_sss), std::abs(aL.k_sss));
  }

  // Literal q-th power of the copy rotation.
  {
    const double a = 2.0 * pi * p / q;
    double R[2][2] = {{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}};
    double Pw[2][2] = {{1.0, 0.0}, {0.0, 1.0}};
    for (int i = 0; i < q; ++i) {
      const double m00 = R[0][0] * Pw[0][0] + R[0][1] * Pw[1][0];
      const double m01 = R[0][0] * Pw[0][1] + R[0][1] * Pw[1][1];
      const double m10 = R[1][0] * Pw[0][0] + R[1][1] * Pw[1][0];
      const double m11 = R[1][0] * Pw[0][1] + R[1][1] * Pw[1][1];
      Pw[0][0] = m00;
      Pw[0][1] = m01;
      Pw[1][0] = m10;
      Pw[1][1] = m11;
    }
    out.rho_pow_q_dev =
        std::max({std::abs(Pw[0][0] - 1.0), std::abs(Pw[0][1]),
                  std::abs(Pw[1][0]), std::abs(Pw[1][1] - 1.0)});
  }

  out.diameter = detail::polygon_diameter(out.pts);
  if (out.closure_residual > 1e-4 * std::max(out.diameter, 1e-12)) {
    throw ClosureFailure("double_and_close: closing gap exceeds bound");
  }
  return out;
}

/// Scan the open interior of the arc for radial seam alignments: zeros of
/// f(s) = <position, tangent>. For elastic arcs, interior zeros of k_s are
/// appended as well (the valid arcs keep k_s strictly negative inside).
/// Returns approximate arclengths; an empty result means the seam
/// conditions hold only at the arc ends.
inline std::vector<double> seam_scan(const ArcSamples& arc) {
  const int n = static_cast<int>(arc.pts.size()) - 1;
  std::vector<double> hits;
  const double min_sep = 4.0 * arc.L / n;

  auto sweep = [&](const std::vector<double>& f) {
    double scale = 0.0;
    for (double v : f) scale = std::max(scale, std::abs(v));
    const double floor = 1e-9 * scale;
    double last = -2.0 * min_sep;
    auto push = [&](double s) {
      if (s - last > min_sep) hits.push_back(s);
      last = s;
    };
    for (int i = 1; i <= n - 1; ++i) {
      if (std::abs(f[i]) <= floor) {
        push(arc.pts[i].s);
        continue;
      }
      if (i + 1 <= n - 1 && std::abs(f[i + 1]) > floor &&
          (f[i] < 0.0) != (f[i + 1] < 0.0)) {
        const double t = f[i] / (f[i] - f[i + 1]);
        push(arc.pts[i].s + t * (arc.pts[i + 1].s - arc.pts[i].s));
      }
    }
  };

  std::vector<double> f(n + 1);
  for (int i = 0; i <= n; ++i) {
    const CurveSample& c = arc.pts[i];
    f[i] = c.x * (-std::sin(c.theta)) + c.y * std::cos(c.theta);
  }
  sweep(f);
  if (arc.kind == FlowKind::elastic) {
    for (int i = 0; i <= n; ++i) f[i] = arc.pts[i].k_s;
    sweep(f);
  }
  return hits;
}

/// Largest mismatch when reflecting the closed sample set across the
/// initial seam line (the x-axis); the construction makes the reflected
/// set coincide with the sample set reparametrized backwards.
inline double dihedral_residual(const ClosedProfile& prof) {
  const std::size_t M = prof.pts.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const CurveSample& a = prof.pts[i];
    const CurveSample& b = prof.pts[(M - i) % M];
    worst = std::max(worst, std::hypot(a.x - b.x, -a.y - b.y));
  }
  return worst;
}

/// Largest pointwise residual of the flow's homothetic profile equation
/// over interior samples (two samples are skipped on each side of every
/// seam; the ideal flow reconstructs k_ssss by finite differences).
inline double profile_residual(const ClosedProfile& prof) {
  const int n = prof.n_arc;
  const std::size_t M = prof.pts.size();
  const double ds = prof.L / n;
  double worst = 0.0;
  for (std::size_t g = 0; g < M; ++g) {
    const int r = static_cast<int>(g % static_cast<std::size_t>(n));
    if (r < 2 || r > n - 2) continue;
    const CurveSample& c = prof.pts[g];
    const double co = std::cos(c.theta), sn = std::sin(c.theta);
    const double radial = c.x * co + c.y * sn;
    double res = 0.0;
    switch (prof.kind) {
      case FlowKind::elastic:
        res = c.k_ss + 0.5 * c.k * c.k * c.k - prof.sigma * radial;
        break;
      case FlowKind::curve_diffusion:
        res = c.k_ss + prof.sigma * radial;
        break;
      case FlowKind::ideal: {
        const auto at = [&](std::size_t off) -> const CurveSample& {
          return prof.pts[(g + off) % M];
        };
        const double Ms = (at(M - 2).k_sss - 8.0 * at(M - 1).k_sss +
                           8.0 * at(1).k_sss - at(2).k_sss) /
                          (12.0 * ds);
        const double Ncurv = c.k * c.k_ss - 0.5 * c.k_s * c.k_s;
        res = Ms + c.k * Ncurv - prof.sigma * radial;
        break;
      }
    }
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace ssflow
