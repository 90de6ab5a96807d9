#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ssflow/continuation.hpp"
#include "ssflow/errors.hpp"
#include "ssflow/glue.hpp"
#include "ssflow/verify.hpp"
#include "ssflow/version.hpp"

namespace ssflow {

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open for writing: " + path);
  return os;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Curve file: comma-separated text, one header row, 17 significant digits.
// The final row is the closing point, so a reload can recompute the turning
// number and closure residual without any geometry code.

inline void write_curve_csv(std::ostream& os, const ClosedProfile& prof) {
  const bool high = prof.kind == FlowKind::ideal;
  os << (high ? "s,x,y,theta,k,k_s,k_ss,k_sss" : "s,x,y,theta,k,k_s") << "\n";
  auto row = [&](const CurveSample& c) {
    os << detail::fmt17(c.s) << ',' << detail::fmt17(c.x) << ','
       << detail::fmt17(c.y) << ',' << detail::fmt17(c.theta) << ','
       << detail::fmt17(c.k) << ',' << detail::fmt17(c.k_s);
    if (high) {
      os << ',' << detail::fmt17(c.k_ss) << ',' << detail::fmt17(c.k_sss);
    }
    os << "\n";
  };
  for (const CurveSample& c : prof.pts) row(c);
  row(prof.closing);
}

inline void write_curve_csv(const std::string& path,
                            const ClosedProfile& prof) {
  std::ofstream os = detail::open_out(path);
  write_curve_csv(os, prof);
}

struct CsvCurve {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline CsvCurve read_curve_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open for reading: " + path);
  CsvCurve out;
  std::string line;
  if (!std::getline(is, line)) throw UsageError("empty curve file: " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.columns.push_back(cell);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(out.columns.size());
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != out.columns.size()) {
      throw UsageError("ragged curve file: " + path);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// Turning number recomputed from a loaded curve file.
inline double csv_turning(const CsvCurve& c) {
  if (c.rows.size() < 2) throw UsageError("csv_turning: too few rows");
  const double pi = std::acos(-1.0);
  return (c.rows.back()[3] - c.rows.front()[3]) / (2.0 * pi);
}

/// Closing gap recomputed from a loaded curve file.
inline double csv_closure(const CsvCurve& c) {
  if (c.rows.size() < 2) throw UsageError("csv_closure: too few rows");
  return std::hypot(c.rows.back()[1] - c.rows.front()[1],
                    c.rows.back()[2] - c.rows.front()[2]);
}

// ---------------------------------------------------------------------------
// Manifest: ordered key = value text, lossless for its string values; reals
// are written with 17 significant digits.

struct RunManifest {
  std::vector<std::pair<std::string, std::string>> entries;

  void set(const std::string& key, const std::string& value) {
    for (auto& e : entries) {
      if (e.first == key) {
        e.second = value;
        return;
      }
    }
    entries.emplace_back(key, value);
  }
  void set(const std::string& key, double value) {
    set(key, detail::fmt17(value));
  }
  void set(const std::string& key, int value) { set(key, std::to_string(value)); }

  bool has(const std::string& key) const {
    for (const auto& e : entries) {
      if (e.first == key) return true;
    }
    return false;
  }
  const std::string& get(const std::string& key) const {
    for (const auto& e : entries) {
      if (e.first == key) return e.second;
    }
    throw UsageError("manifest key missing: " + key);
  }
  double get_real(const std::string& key) const { return std::stod(get(key)); }
};

/// Fill a manifest from a closed profile and the solve configuration.
/// The timestamp is stamped here; data files stay timestamp-free.
inline RunManifest make_manifest(const ClosedProfile& prof,
                                 const SolveOptions& opt,
                                 const BranchInfo* branch = nullptr) {
  RunManifest m;
  m.set("tool.version", std::string(kVersion));
  {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    m.set("run.timestamp", std::string(buf));
  }
  m.set("flow", std::string(flow_name(prof.kind)));
  m.set("p", prof.p);
  m.set("q", prof.q);
  m.set("epsilon", prof.eps);
  m.set("alpha", prof.alpha);
  if (prof.kind == FlowKind::ideal) m.set("b", prof.b);
  m.set("L", prof.L);
  m.set("sigma", prof.sigma);
  m.set("theta_terminal", prof.angle);
  m.set("angle_residual", prof.angle_residual);
  m.set("seam.jump_k", prof.max_seam_jump.k);
  m.set("seam.jump_k_s", prof.max_seam_jump.k_s);
  m.set("seam.jump_k_ss", prof.max_seam_jump.k_ss);
  m.set("seam.jump_k_sss", prof.max_seam_jump.k_sss);
  m.set("closure_residual", prof.closure_residual);
  m.set("turning_number", prof.turning);
  m.set("rho_pow_q_dev", prof.rho_pow_q_dev);
  m.set("diameter", prof.diameter);
  m.set("samples_per_arc", prof.n_arc);
  if (branch) {
    m.set("branch.eps_last", branch->eps_last);
    m.set("branch.points", static_cast<int>(branch->branch_points));
  }
  m.set("integrator.rel_tol", opt.ode.rel_tol);
  m.set("integrator.abs_tol", opt.ode.abs_tol);
  m.set("angle_tol", opt.angle_tol);
  return m;
}

inline void write_manifest(std::ostream& os, const RunManifest& m) {
  for (const auto& e : m.entries) os << e.first << " = " << e.second << "\n";
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
  std::ofstream os = detail::open_out(path);
  write_manifest(os, m);
}

inline RunManifest read_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open for reading: " + path);
  RunManifest m;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t sep = line.find(" = ");
    if (sep == std::string::npos) {
      throw UsageError("bad manifest line: " + line);
    }
    m.entries.emplace_back(line.substr(0, sep), line.substr(sep + 3));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Vector graphic: the closed profile in a fixed 1000x1000 viewport, one
// polyline per fundamental arc, alternating two colours so the doubling
// pattern is visible.

inline void write_svg(std::ostream& os, const ClosedProfile& prof) {
  const int n = prof.n_arc;
  const int copies = static_cast<int>(prof.pts.size()) / n;
  double xmin = prof.pts[0].x, xmax = xmin, ymin = prof.pts[0].y, ymax = ymin;
  for (const CurveSample& c : prof.pts) {
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
  const double scale = 900.0 / span;
  const double ox = 50.0 + (900.0 - (xmax - xmin) * scale) / 2.0;
  const double oy = 50.0 + (900.0 - (ymax - ymin) * scale) / 2.0;
  auto px = [&](double x) { return ox + (x - xmin) * scale; };
  auto py = [&](double y) { return 1000.0 - (oy + (y - ymin) * scale); };
  auto put = [&](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    os << buf;
  };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" "
        "height=\"1000\" viewBox=\"0 0 1000 1000\">\n"
        "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n"
        "<g fill=\"none\" stroke-width=\"2.5\" stroke-linecap=\"round\">\n";
  const char* colours[2] = {"#1f6f8b", "#c2472e"};
  for (int j = 0; j < copies; ++j) {
    os << "<polyline stroke=\"" << colours[j % 2] << "\" points=\"";
    for (int t = 0; t <= n; ++t) {
      const std::size_t g = static_cast<std::size_t>(j) * n + t;
      const CurveSample& c =
          g < prof.pts.size() ? prof.pts[g] : prof.closing;
      if (t) os << ' ';
      put(px(c.x));
      os << ',';
      put(py(c.y));
    }
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
}

inline void write_svg(const std::string& path, const ClosedProfile& prof) {
  std::ofstream os = detail::open_out(path);
  write_svg(os, prof);
}

// ---------------------------------------------------------------------------
// Verification report: one record per check.

inline void write_verify_report(std::ostream& os,
                                const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    os << "check = " << r.id << "\n";
    os << "passed = " << (r.passed ? "true" : "false") << "\n";
    os << "tolerance = " << detail::fmt17(r.tolerance) << "\n";
    os << "metric = " << detail::fmt17(r.metric) << "\n";
    os << "runtime_s = " << detail::fmt17(r.runtime) << "\n";
    os << "computed =";
    for (double v : r.computed) os << ' ' << detail::fmt17(v);
    os << "\n";
    os << "reference =";
    for (double v : r.reference) os << ' ' << detail::fmt17(v);
    os << "\n";
    if (!r.note.empty()) os << "note = " << r.note << "\n";
    os << "\n";
  }
}

inline void write_verify_report(const std::string& path,
                                const std::vector<CheckReport>& reports) {
  std::ofstream os = detail::open_out(path);
  write_verify_report(os, reports);
}

}  // namespace ssflow
