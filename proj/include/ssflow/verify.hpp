#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ssflow/flow_cdf.hpp"
#include "ssflow/flow_elastic.hpp"
#include "ssflow/flow_ideal.hpp"
#include "ssflow/glue.hpp"

namespace ssflow {

/// One verification record. The metric is max_i |computed_i - reference_i|
/// divided by max(1, |reference_i|); a check passes when metric <= tolerance.
struct CheckReport {
  std::string id;
  std::vector<double> computed;
  std::vector<double> reference;
  double tolerance = 0.0;
  double metric = 0.0;
  bool passed = false;
  std::string note;
  double runtime = 0.0;  // seconds
};

namespace detail {

inline void finish_report(CheckReport& r) {
  double worst = 0.0;
  for (std::size_t i = 0; i < r.computed.size(); ++i) {
    const double ref = i < r.reference.size() ? r.reference[i] : 0.0;
    const double d = std::abs(r.computed[i] - ref) / std::max(1.0, std::abs(ref));
    worst = std::max(worst, d);
  }
  r.metric = worst;
  r.passed = worst <= r.tolerance;
}

using BranchFn = std::function<std::vector<double>(double)>;

inline std::vector<double> stencil_d1(const BranchFn& f, double h) {
  const auto fm2 = f(-2 * h), fm1 = f(-h), fp1 = f(h), fp2 = f(2 * h);
  std::vector<double> out(fm2.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (fm2[i] - 8.0 * fm1[i] + 8.0 * fp1[i] - fp2[i]) / (12.0 * h);
  }
  return out;
}

inline std::vector<double> stencil_d2(const BranchFn& f, double h) {
  const auto fm2 = f(-2 * h), fm1 = f(-h), f0 = f(0.0), fp1 = f(h),
             fp2 = f(2 * h);
  std::vector<double> out(fm2.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (-fm2[i] + 16.0 * fm1[i] - 30.0 * f0[i] + 16.0 * fp1[i] -
              fp2[i]) /
             (12.0 * h * h);
  }
  return out;
}

// Least squares fit of val ~ c2 e^2 + c3 e^3 + c4 e^4; returns c2.
inline double fit_quadratic_coeff(const std::vector<double>& eps,
                                  const std::vector<double>& val) {
  std::array<Vec<3>, 3> A{};
  Vec<3> rhs{};
  for (std::size_t m = 0; m < eps.size(); ++m) {
    const double e2 = eps[m] * eps[m];
    const double basis[3] = {e2, e2 * eps[m], e2 * e2};
    for (int i = 0; i < 3; ++i) {
      rhs[i] += basis[i] * val[m];
      for (int j = 0; j < 3; ++j) A[i][j] += basis[i] * basis[j];
    }
  }
  return solve_dense<3>(A, rhs, 1e15)[0];
}

}  // namespace detail

inline const std::vector<std::string>& verify_check_ids() {
  static const std::vector<std::string> ids = {
      "ef_energy",          "ef_force",
      "ef_b1s",             "ef_alpha_prime",
      "ef_thetabar_prime",  "ef_sigma_positive",
      "ef_reflection",      "cdf_jacobian",
      "cdf_eps_row",        "cdf_first_order",
      "cdf_second_order",   "cdf_faa",
      "cdf_theta_expansion","ideal_Q_identity",
      "ideal_jacobian",     "ideal_first_order",
      "ideal_theta_expansion", "profile_residual_ef",
      "profile_residual_cdf",  "profile_residual_ideal",
      "seam_smoothness_ef",    "seam_smoothness_cdf",
      "seam_smoothness_ideal"};
  return ids;
}

namespace detail {

inline CheckReport check_ef_energy(const IntegratorSettings& set) {
  CheckReport r{"ef_energy", {}, {0.0}, 1e-10, 0, false,
                "max |v^2 - (1 - k^4)/4| along the base arc"};
  const EfBaseArc base = ef_base_arc(set);
  double worst = 0.0;
  for (int i = 0; i <= 512; ++i) {
    const State<6> u = base.traj(base.L0 * i / 512.0);
    const double k = u[3], v = u[4];
    worst = std::max(worst, std::abs(v * v - 0.25 * (1.0 - k * k * k * k)));
  }
  r.computed = {worst};
  finish_report(r);
  return r;
}

inline CheckReport check_ef_force(const IntegratorSettings& set) {
  CheckReport r{"ef_force", {}, {0.0, 0.0}, 1e-10, 0, false,
                "internal force of the base arc stays (0, 1/2)"};
  const EfBaseArc base = ef_base_arc(set);
  double wx = 0.0, wy = 0.0;
  for (int i = 0; i <= 512; ++i) {
    const State<6> u = base.traj(base.L0 * i / 512.0);
    const double c = std::cos(u[2]), s = std::sin(u[2]);
    const double k = u[3], v = u[4];
    wx = std::max(wx, std::abs(-0.5 * k * k * s - v * c));
    wy = std::max(wy, std::abs(0.5 * k * k * c - v * s - 0.5));
  }
  r.computed = {wx, wy};
  finish_report(r);
  return r;
}

inline CheckReport check_ef_b1s(const IntegratorSettings& set) {
  CheckReport r{"ef_b1s", {}, {1.0}, 1e-8, 0, false,
                "d/ds of the seam alignment at the base terminal point"};
  const EfBaseArc base = ef_base_arc(set);
  auto b1 = [&](double s) {
    const State<6> u = base.traj(s);
    return -std::sin(u[2]);
  };
  auto central = [&](double h) {
    return (b1(base.L0 + h) - b1(base.L0 - h)) / (2.0 * h);
  };
  const double d1 = central(1e-4), d2 = central(5e-5);
  r.computed = {(4.0 * d2 - d1) / 3.0};
  finish_report(r);
  return r;
}

inline SolveOptions solve_opts(const IntegratorSettings& set) {
  SolveOptions o;
  o.ode = set;
  return o;
}

inline std::vector<double> ef_branch(double eps, const IntegratorSettings& set) {
  static const EfBaseConstants kBase = ef_base_constants();
  if (eps == 0.0) return {0.0, 0.0};
  const EfArc arc = ef_fundamental_arc(
      eps, std::array<double, 2>{kBase.alpha_prime0 * eps, kBase.L0},
      solve_opts(set));
  return {arc.alpha, arc.theta_bar};
}

inline CheckReport check_ef_alpha_prime(const IntegratorSettings& set) {
  const EfBaseConstants base = ef_base_constants();
  CheckReport r{"ef_alpha_prime", {}, {base.alpha_prime0}, 1e-4, 0, false,
                "branch derivative of alpha vs the quadrature constant"};
  const auto d = stencil_d1([&](double e) { return ef_branch(e, set); }, 1e-3);
  r.computed = {d[0]};
  finish_report(r);
  return r;
}

inline CheckReport check_ef_thetabar_prime(const IntegratorSettings& set) {
  const EfBaseConstants base = ef_base_constants();
  CheckReport r{"ef_thetabar_prime", {}, {base.y0}, 1e-4, 0, false,
                "branch derivative of the terminal angle vs y0"};
  const auto d = stencil_d1([&](double e) { return ef_branch(e, set); }, 1e-3);
  r.computed = {d[1]};
  finish_report(r);
  return r;
}

inline CheckReport check_ef_sigma_positive(const IntegratorSettings& set) {
  CheckReport r;
  r.id = "ef_sigma_positive";
  r.note = "profile coefficient at eps = +/-0.05; metric is -min(sigma)";
  r.tolerance = 0.0;
  const EfArc a = ef_fundamental_arc(0.05, {}, solve_opts(set));
  const EfArc b = ef_fundamental_arc(-0.05, {}, solve_opts(set));
  r.computed = {a.sigma, b.sigma};
  r.reference = {0.0, 0.0};
  r.metric = std::max(-a.sigma, -b.sigma);
  r.passed = r.metric <= r.tolerance;
  return r;
}

inline CheckReport check_ef_reflection(const IntegratorSettings& set) {
  CheckReport r{"ef_reflection", {}, {0.0, 0.0, 0.0}, 1e-9, 0, false,
                "the mirrored arc solves the system at (-alpha, -eps), "
                "launched with the opposite curvature sign"};
  const EfArc a = ef_fundamental_arc(0.05, {}, solve_opts(set));
  const EfParams Pm{-a.alpha, -a.eps};
  const State<5> u0{0.0, 0.0, 0.0, -1.0, 0.0};
  Trajectory<5> tilde = integrate(
      [&Pm](double, const State<5>& u) { return ef_rhs(u, Pm); }, 0.0, a.L,
      u0, set);
  double worst = 0.0;
  for (int i = 0; i <= 64; ++i) {
    const double s = a.L * i / 64.0;
    const State<5> ua = a.traj(s);
    const State<5> ut = tilde(s);
    worst = std::max({worst, std::abs(ut[0] + ua[0]), std::abs(ut[1] - ua[1]),
                      std::abs(ut[2] + ua[2]), std::abs(ut[3] + ua[3]),
                      std::abs(ut[4] + ua[4])});
  }
  const State<5> endt = tilde.back();
  r.computed = {worst, std::abs(ef_b1(endt, Pm.eps) + a.res_b1),
                std::abs(ef_b2(endt) + a.res_b2)};
  finish_report(r);
  return r;
}

inline CheckReport check_cdf_jacobian(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"cdf_jacobian", {}, {pi / 2, 1.0, pi, 1.0, -pi / 2}, 1e-5, 0,
                false, "endpoint Jacobian in (alpha, L) at the base circle"};
  auto F = [&](double alpha, double L) -> std::array<double, 2> {
    const CdfEndpoint ep = cdf_endpoint(CdfParams{alpha, 0.0}, L, set);
    return {ep.Phi, ep.B};
  };
  auto jac = [&](double h) -> std::array<double, 4> {
    const auto fa_p = F(h, pi), fa_m = F(-h, pi);
    const auto fl_p = F(0.0, pi + h), fl_m = F(0.0, pi - h);
    return {(fa_p[0] - fa_m[0]) / (2 * h), (fl_p[0] - fl_m[0]) / (2 * h),
            (fa_p[1] - fa_m[1]) / (2 * h), (fl_p[1] - fl_m[1]) / (2 * h)};
  };
  const auto j1 = jac(1e-4), j2 = jac(5e-5);
  std::array<double, 4> J;
  for (int i = 0; i < 4; ++i) J[i] = (4.0 * j2[i] - j1[i]) / 3.0;
  r.computed = {J[0], J[1], J[2], J[3], J[0] * J[3] - J[1] * J[2]};
  finish_report(r);
  return r;
}

inline CheckReport check_cdf_eps_row(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"cdf_eps_row", {}, {-pi, 0.0}, 1e-5, 0, false,
                "endpoint derivative in eps at the base circle"};
  auto F = [&](double eps) -> std::array<double, 2> {
    const CdfEndpoint ep = cdf_endpoint(CdfParams{0.0, eps}, pi, set);
    return {ep.Phi, ep.B};
  };
  auto row = [&](double h) -> std::array<double, 2> {
    const auto fp = F(h), fm = F(-h);
    return {(fp[0] - fm[0]) / (2 * h), (fp[1] - fm[1]) / (2 * h)};
  };
  const auto r1 = row(1e-4), r2 = row(5e-5);
  r.computed = {(4.0 * r2[0] - r1[0]) / 3.0, (4.0 * r2[1] - r1[1]) / 3.0};
  finish_report(r);
  return r;
}

inline std::vector<double> cdf_branch(double eps, const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  if (eps == 0.0) return {0.0, pi, pi};
  const CdfArc arc = cdf_fundamental_arc(eps, {}, solve_opts(set));
  return {arc.alpha, arc.L, arc.Theta};
}

inline CheckReport check_cdf_first_order(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"cdf_first_order", {}, {-2.0, 2.0 * pi}, 1e-4, 0, false,
                "branch derivatives (alpha'(0), L'(0))"};
  const auto d = stencil_d1([&](double e) { return cdf_branch(e, set); }, 1e-3);
  r.computed = {d[0], d[1]};
  finish_report(r);
  return r;
}

inline CheckReport check_cdf_second_order(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"cdf_second_order", {}, {16.0, 7.0 * pi}, 1e-3, 0, false,
                "branch second derivatives (alpha''(0), L''(0))"};
  const auto d = stencil_d2([&](double e) { return cdf_branch(e, set); }, 1e-3);
  r.computed = {d[0], d[1]};
  finish_report(r);
  return r;
}

inline CheckReport check_cdf_faa(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"cdf_faa",
                {},
                {pi * (2 * pi * pi - 39.0) / 12.0,
                 pi * (2 * pi * pi - 27.0) / 12.0},
                1e-3,
                0,
                false,
                "second alpha-derivative of the endpoint pair at the base"};
  auto F = [&](double alpha) -> std::array<double, 2> {
    const CdfEndpoint ep = cdf_endpoint(CdfParams{alpha, 0.0}, pi, set);
    return {ep.Phi, ep.B};
  };
  auto second = [&](double h) -> std::array<double, 2> {
    const auto fp = F(h), f0 = F(0.0), fm = F(-h);
    return {(fp[0] - 2 * f0[0] + fm[0]) / (h * h),
            (fp[1] - 2 * f0[1] + fm[1]) / (h * h)};
  };
  const auto s1 = second(1e-3), s2 = second(5e-4);
  r.computed = {(4.0 * s2[0] - s1[0]) / 3.0, (4.0 * s2[1] - s1[1]) / 3.0};
  finish_report(r);
  return r;
}

inline CheckReport check_cdf_theta_expansion(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"cdf_theta_expansion", {}, {-pi, -2.0 * pi}, 0.02, 0, false,
                "quadratic coefficient of Theta(eps) by fit and by stencil"};
  std::vector<double> es = {0.01, 0.02, 0.03, 0.04, 0.05};
  std::vector<double> deficit;
  for (double e : es) deficit.push_back(pi - cdf_branch(e, set)[2]);
  const double c2 = fit_quadratic_coeff(es, deficit);
  const auto d2 = stencil_d2([&](double e) { return cdf_branch(e, set); }, 1e-3);
  r.computed = {-c2, d2[2]};
  finish_report(r);
  return r;
}

inline CheckReport check_ideal_Q_identity(const IntegratorSettings& set) {
  CheckReport r{"ideal_Q_identity", {}, {0.0, 0.0}, 1e-6, 0, false,
                "jet transport identities d/ds k_ss = k_sss and "
                "d/ds N = k k_sss along a generic arc"};
  const IdealParams P{0.05, 0.03, -0.08};
  const State<7> u0{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, P.b};
  const double L = 3.2;
  Trajectory<7> traj = integrate(
      [&P](double, const State<7>& u) { return ideal_rhs(u, P); }, 0.0, L, u0,
      set);
  const double h = 1e-5;
  double w1 = 0.0, w2 = 0.0;
  for (int i = 1; i < 64; ++i) {
    const double s = L * i / 64.0;
    const State<7> um = traj(s - h), up = traj(s + h), uc = traj(s);
    const double dq = (ideal_k_ss(up) - ideal_k_ss(um)) / (2 * h);
    const double dN = (ideal_N(up) - ideal_N(um)) / (2 * h);
    w1 = std::max(w1, std::abs(dq - ideal_M(uc)));
    w2 = std::max(w2, std::abs(dN - uc[3] * ideal_M(uc)));
  }
  r.computed = {w1, w2};
  finish_report(r);
  return r;
}

inline CheckReport check_ideal_jacobian(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"ideal_jacobian",
                {},
                {5 * pi / 8, 1.0, pi / 2, 0.0, 0.0, -pi / 2, pi, 1.0,
                 -3.0 * pi * pi / 16.0},
                1e-5,
                0,
                false,
                ""};
  auto F = [&](double alpha, double b, double L) -> std::array<double, 3> {
    const IdealEndpoint ep = ideal_endpoint(IdealParams{alpha, 0.0, b}, L, set);
    return {ep.Phi, ep.U, ep.B};
  };
  auto col = [&](int j, double h) -> std::array<double, 3> {
    double xp[3] = {0.0, 0.0, pi}, xm[3] = {0.0, 0.0, pi};
    xp[j] += h;
    xm[j] -= h;
    const auto fp = F(xp[0], xp[1], xp[2]);
    const auto fm = F(xm[0], xm[1], xm[2]);
    return {(fp[0] - fm[0]) / (2 * h), (fp[1] - fm[1]) / (2 * h),
            (fp[2] - fm[2]) / (2 * h)};
  };
  std::array<double, 3> J[3];  // J[j] is the column for variable j
  for (int j = 0; j < 3; ++j) {
    const auto c1 = col(j, 1e-4), c2 = col(j, 5e-5);
    for (int i = 0; i < 3; ++i) J[j][i] = (4.0 * c2[i] - c1[i]) / 3.0;
  }
  const double combo = J[0][1] * (J[1][0] * J[2][2] - J[2][0] * J[1][2]);
  r.computed = {J[1][0], J[2][0], J[0][1], J[1][1], J[2][1],
                J[0][2], J[1][2], J[2][2], combo};
  std::ostringstream note;
  note.precision(10);
  note << "Phi_alpha(0,0,0,pi) = " << J[0][0]
       << " (recorded, no reference); last entry is the second-row "
          "expansion U_alpha*(Phi_b*B_L - Phi_L*B_b)";
  r.note = note.str();
  finish_report(r);
  return r;
}

inline std::vector<double> ideal_branch(double eps,
                                        const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  if (eps == 0.0) return {0.0, 0.0, pi, pi};
  const IdealArc arc = ideal_fundamental_arc(eps, {}, solve_opts(set));
  return {arc.alpha, arc.b, arc.L, arc.Theta};
}

inline CheckReport check_ideal_first_order(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"ideal_first_order", {}, {0.0, -8.0 / 3.0, 8.0 * pi / 3.0},
                1e-4, 0, false, "branch derivatives (alpha'(0), b'(0), L'(0))"};
  const auto d =
      stencil_d1([&](double e) { return ideal_branch(e, set); }, 1e-3);
  r.computed = {d[0], d[1], d[2]};
  finish_report(r);
  return r;
}

inline CheckReport check_ideal_theta_expansion(const IntegratorSettings& set) {
  const double pi = std::acos(-1.0);
  CheckReport r{"ideal_theta_expansion", {}, {-4.0 * pi / 3.0, -8.0 * pi / 3.0},
                0.02, 0, false,
                "quadratic coefficient of Theta(eps) by fit and by stencil"};
  std::vector<double> es = {0.01, 0.02, 0.03, 0.04, 0.05};
  std::vector<double> deficit;
  for (double e : es) deficit.push_back(pi - ideal_branch(e, set)[3]);
  const double c2 = fit_quadratic_coeff(es, deficit);
  const auto d2 =
      stencil_d2([&](double e) { return ideal_branch(e, set); }, 1e-3);
  r.computed = {-c2, d2[3]};
  finish_report(r);
  return r;
}

inline ClosedProfile reference_profile(FlowKind kind,
                                       const IntegratorSettings& set) {
  // The three reference targets are expensive; cache per settings so the
  // residual and seam checks share one solve.
  static std::mutex mu;
  static std::map<std::tuple<int, double, double>, ClosedProfile> cache;
  const auto key = std::make_tuple(static_cast<int>(kind), set.rel_tol,
                                   set.abs_tol);
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const SolveOptions opt = solve_opts(set);
  ClosedProfile prof;
  switch (kind) {
    case FlowKind::elastic:
      prof = double_and_close(to_centred(ef_solve_epsilon(1, 5, opt)), 1, 5);
      break;
    case FlowKind::curve_diffusion:
      prof = double_and_close(to_centred(cdf_solve_epsilon(4, 5, opt)), 4, 5);
      break;
    case FlowKind::ideal:
      prof = double_and_close(to_centred(ideal_solve_epsilon(26, 27, opt)), 26,
                              27);
      break;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = prof;
  return prof;
}

inline CheckReport check_profile_residual(FlowKind kind,
                                          const IntegratorSettings& set) {
  CheckReport r;
  r.id = std::string("profile_residual_") + flow_name(kind);
  r.reference = {0.0};
  r.tolerance = 1e-8;
  r.note = "max pointwise residual of the homothetic profile equation";
  r.computed = {profile_residual(reference_profile(kind, set))};
  finish_report(r);
  return r;
}

inline CheckReport check_seam_smoothness(FlowKind kind,
                                         const IntegratorSettings& set) {
  CheckReport r;
  r.id = std::string("seam_smoothness_") + flow_name(kind);
  r.tolerance = 1e-8;
  const ClosedProfile prof = reference_profile(kind, set);
  if (kind == FlowKind::ideal) {
    r.computed = {prof.max_seam_jump.k, prof.max_seam_jump.k_s,
                  prof.max_seam_jump.k_ss, prof.max_seam_jump.k_sss};
    r.reference = {0.0, 0.0, 0.0, 0.0};
    r.note = "jet jumps across seams through k_sss";
  } else {
    r.computed = {prof.max_seam_jump.k, prof.max_seam_jump.k_s};
    r.reference = {0.0, 0.0};
    r.note = "jet jumps across seams through k_s";
  }
  finish_report(r);
  return r;
}

}  // namespace detail

namespace detail {

inline CheckReport dispatch_check(const std::string& id,
                                  const IntegratorSettings& set) {
  if (id == "ef_energy") return detail::check_ef_energy(set);
  if (id == "ef_force") return detail::check_ef_force(set);
  if (id == "ef_b1s") return detail::check_ef_b1s(set);
  if (id == "ef_alpha_prime") return detail::check_ef_alpha_prime(set);
  if (id == "ef_thetabar_prime") return detail::check_ef_thetabar_prime(set);
  if (id == "ef_sigma_positive") return detail::check_ef_sigma_positive(set);
  if (id == "ef_reflection") return detail::check_ef_reflection(set);
  if (id == "cdf_jacobian") return detail::check_cdf_jacobian(set);
  if (id == "cdf_eps_row") return detail::check_cdf_eps_row(set);
  if (id == "cdf_first_order") return detail::check_cdf_first_order(set);
  if (id == "cdf_second_order") return detail::check_cdf_second_order(set);
  if (id == "cdf_faa") return detail::check_cdf_faa(set);
  if (id == "cdf_theta_expansion") {
    return detail::check_cdf_theta_expansion(set);
  }
  if (id == "ideal_Q_identity") return detail::check_ideal_Q_identity(set);
  if (id == "ideal_jacobian") return detail::check_ideal_jacobian(set);
  if (id == "ideal_first_order") return detail::check_ideal_first_order(set);
  if (id == "ideal_theta_expansion") {
    return detail::check_ideal_theta_expansion(set);
  }
  if (id == "profile_residual_ef") {
    return detail::check_profile_residual(FlowKind::elastic, set);
  }
  if (id == "profile_residual_cdf") {
    return detail::check_profile_residual(FlowKind::curve_diffusion, set);
  }
  if (id == "profile_residual_ideal") {
    return detail::check_profile_residual(FlowKind::ideal, set);
  }
  if (id == "seam_smoothness_ef") {
    return detail::check_seam_smoothness(FlowKind::elastic, set);
  }
  if (id == "seam_smoothness_cdf") {
    return detail::check_seam_smoothness(FlowKind::curve_diffusion, set);
  }
  if (id == "seam_smoothness_ideal") {
    return detail::check_seam_smoothness(FlowKind::ideal, set);
  }
  throw UnknownCheck("run_verify_check: unknown check id '" + id + "'");
}

}  // namespace detail

inline CheckReport run_verify_check(const std::string& id,
                                    const IntegratorSettings& set = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport r = detail::dispatch_check(id, set);
  const auto t1 = std::chrono::steady_clock::now();
  r.runtime = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

inline std::vector<CheckReport> run_all_verify_checks(
    const IntegratorSettings& set = {}) {
  std::vector<CheckReport> out;
  for (const std::string& id : verify_check_ids()) {
    out.push_back(run_verify_check(id, set));
  }
  return out;
}

}  // namespace ssflow
