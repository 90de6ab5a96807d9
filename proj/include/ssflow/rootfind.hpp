#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

#include "ssflow/errors.hpp"

namespace ssflow {

template <std::size_t N>
using Vec = std::array<double, N>;

namespace detail {

template <std::size_t N>
double norm_inf(const Vec<N>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Solve A x = b and estimate cond_inf(A) by forming the inverse explicitly;
// the systems here are at most 4x4.
template <std::size_t N>
Vec<N> solve_dense(std::array<Vec<N>, N> A, Vec<N> b, double cond_limit) {
  std::array<Vec<N>, N> inv{};
  for (std::size_t i = 0; i < N; ++i) inv[i][i] = 1.0;

  double norm_a = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < N; ++j) row += std::abs(A[i][j]);
    norm_a = std::max(norm_a, row);
  }

  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    }
    if (A[piv][col] == 0.0) throw SingularJacobian("solve_dense: zero pivot");
    std::swap(A[piv], A[col]);
    std::swap(inv[piv], inv[col]);
    std::swap(b[piv], b[col]);
    const double d = A[col][col];
    for (std::size_t j = 0; j < N; ++j) {
      A[col][j] /= d;
      inv[col][j] /= d;
    }
    b[col] /= d;
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col) continue;
      const double m = A[r][col];
      if (m == 0.0) continue;
      for (std::size_t j = 0; j < N; ++j) {
        A[r][j] -= m * A[col][j];
        inv[r][j] -= m * inv[col][j];
      }
      b[r] -= m * b[col];
    }
  }

  double norm_inv = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < N; ++j) row += std::abs(inv[i][j]);
    norm_inv = std::max(norm_inv, row);
  }
  if (norm_a * norm_inv > cond_limit) {
    throw SingularJacobian("solve_dense: condition estimate too large");
  }
  return b;
}

}  // namespace detail

struct NewtonOptions {
  double tol_residual = 1e-12;
  double tol_step = 1e-14;
  int max_iter = 50;
  double fd_step = 1e-6;  // scaled by max(1, |x_i|) per component
  int max_backtrack = 20;
  double cond_limit = 1e12;
};

template <std::size_t N>
struct NewtonResult {
  Vec<N> x;
  Vec<N> residual;
  double residual_norm;
  int iterations;
};

/// Damped Newton iteration with a central-difference Jacobian.
/// Convergence means the residual max-norm dropped below tol_residual.
template <std::size_t N, class F>
NewtonResult<N> newton_solve(F&& f, Vec<N> x, const NewtonOptions& opt = {}) {
  auto eval = [&](const Vec<N>& p) -> Vec<N> {
    try {
      return f(p);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw EvaluationFailure(std::string("newton_solve: ") + e.what());
    }
  };

  Vec<N> r = eval(x);
  double rn = detail::norm_inf(r);
  for (int it = 1; it <= opt.max_iter; ++it) {
    if (rn <= opt.tol_residual) {
      return NewtonResult<N>{x, r, rn, it - 1};
    }
    std::array<Vec<N>, N> J{};  // row i, column j
    for (std::size_t j = 0; j < N; ++j) {
      const double h = opt.fd_step * std::max(1.0, std::abs(x[j]));
      Vec<N> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Vec<N> fp = eval(xp);
      const Vec<N> fm = eval(xm);
      for (std::size_t i = 0; i < N; ++i) J[i][j] = (fp[i] - fm[i]) / (2 * h);
    }
    const Vec<N> dx = detail::solve_dense<N>(J, r, opt.cond_limit);

    double lam = 1.0;
    Vec<N> x_new{};
    Vec<N> r_new{};
    double rn_new = 0.0;
    for (int bt = 0;; ++bt) {
      for (std::size_t i = 0; i < N; ++i) x_new[i] = x[i] - lam * dx[i];
      bool ok = true;
      try {
        r_new = eval(x_new);
        rn_new = detail::norm_inf(r_new);
      } catch (const Error&) {
        ok = false;  // step left the evaluable region; damp further
      }
      if (ok && (rn_new < rn || bt >= opt.max_backtrack)) break;
      if (!ok && bt >= opt.max_backtrack) {
        throw EvaluationFailure("newton_solve: line search failed");
      }
      lam *= 0.5;
    }
    double step = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      step = std::max(step, std::abs(lam * dx[i]));
    }
    x = x_new;
    r = r_new;
    rn = rn_new;
    if (rn <= opt.tol_residual) {
      return NewtonResult<N>{x, r, rn, it};
    }
    if (step <= opt.tol_step * std::max(1.0, detail::norm_inf(x))) {
      break;  // stagnated above the residual target
    }
  }
  throw MaxIterations("newton_solve: no convergence");
}

struct ScalarRootOptions {
  double tol = 1e-12;  // |f| convergence target
  int max_iter = 100;
  double fd_step = 1e-7;  // scaled by max(1, |x|)
  std::optional<std::pair<double, double>> bracket;
};

/// Scalar root solve: Newton from a seed with finite-difference slope,
/// falling back to bisection whenever a bracket is available and the
/// Newton step leaves it.
template <class F>
double scalar_root(F&& f, double seed, const ScalarRootOptions& opt = {}) {
  double a = 0.0, b = 0.0, fa = 0.0;
  bool have_bracket = false;
  if (opt.bracket) {
    a = opt.bracket->first;
    b = opt.bracket->second;
    if (!(b > a)) throw UsageError("scalar_root: empty bracket");
    fa = f(a);
    const double fb = f(b);
    if (std::abs(fa) <= opt.tol) return a;
    if (std::abs(fb) <= opt.tol) return b;
    if ((fa < 0.0) == (fb < 0.0)) {
      throw NoSignChange("scalar_root: bracket does not straddle a zero");
    }
    have_bracket = true;
  }

  double x = seed;
  if (have_bracket && !(x > a && x < b)) x = 0.5 * (a + b);
  for (int it = 0; it < opt.max_iter; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= opt.tol) return x;
    if (have_bracket) {
      if ((fa < 0.0) == (fx < 0.0)) {
        a = x;
        fa = fx;
      } else {
        b = x;
      }
      if (b - a <= 1e-15 * std::max(1.0, std::abs(x))) return x;
    }
    const double h = opt.fd_step * std::max(1.0, std::abs(x));
    const double d = (f(x + h) - f(x - h)) / (2 * h);
    double xn = (std::isfinite(d) && d != 0.0) ? x - fx / d : x;
    if (have_bracket) {
      if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    } else if (!std::isfinite(xn) || xn == x) {
      throw MaxIterations("scalar_root: derivative vanished away from a root");
    }
    x = xn;
  }
  throw MaxIterations("scalar_root: no convergence");
}

}  // namespace ssflow
