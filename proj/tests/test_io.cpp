#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ssflow/glue.hpp"
#include "ssflow/io.hpp"

using namespace ssflow;

namespace {

const double kPi = std::acos(-1.0);

ArcSamples circle_arc(double span, int n, FlowKind kind) {
  ArcSamples arc;
  arc.kind = kind;
  arc.alpha = -0.4;
  arc.eps = 0.25;
  arc.L = span;
  arc.sigma = 0.1;
  arc.angle = span;
  arc.pts.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = span * i / n;
    CurveSample& c = arc.pts[i];
    c.s = s;
    c.x = std::cos(s);
    c.y = std::sin(s);
    c.theta = s;
    c.k = 1.0;
    c.k_s = c.k_ss = c.k_sss = 0.0;
  }
  return arc;
}

ClosedProfile sample_profile(FlowKind kind, int p, int q, int n) {
  return double_and_close(circle_arc(kPi * p / q, n, kind), p, q);
}

std::string tmp_path(const char* name) {
  return std::string("/tmp/ssflow_io_test_") + name;
}

}  // namespace

TEST_CASE("seventeen significant digits survive the round trip", "[io]") {
  REQUIRE(detail::fmt17(kPi) == "3.1415926535897931");
  REQUIRE(std::stod(detail::fmt17(0.1)) == 0.1);
  REQUIRE(std::stod(detail::fmt17(-1.2345678901234567e-101)) ==
          -1.2345678901234567e-101);
}

TEST_CASE("curve files round trip and reproduce derived quantities", "[io]") {
  const ClosedProfile prof = sample_profile(FlowKind::curve_diffusion, 1, 4, 64);
  const std::string path = tmp_path("curve.csv");
  write_curve_csv(path, prof);

  const CsvCurve c = read_curve_csv(path);
  REQUIRE(c.columns ==
          std::vector<std::string>{"s", "x", "y", "theta", "k", "k_s"});
  REQUIRE(c.rows.size() == prof.pts.size() + 1);  // samples plus closing row

  REQUIRE(std::abs(csv_turning(c) - prof.turning) <= 1e-8);
  REQUIRE(std::abs(csv_closure(c) - prof.closure_residual) <= 1e-8);

  // position samples are reproduced exactly
  REQUIRE(c.rows[17][1] == prof.pts[17].x);
  REQUIRE(c.rows[17][2] == prof.pts[17].y);
  std::remove(path.c_str());
}

TEST_CASE("ideal curve files carry the higher jets", "[io]") {
  const ClosedProfile prof = sample_profile(FlowKind::ideal, 1, 2, 32);
  std::ostringstream os;
  write_curve_csv(os, prof);
  std::istringstream head(os.str());
  std::string line;
  std::getline(head, line);
  REQUIRE(line == "s,x,y,theta,k,k_s,k_ss,k_sss");
}

TEST_CASE("curve output is deterministic byte for byte", "[io]") {
  const ClosedProfile prof = sample_profile(FlowKind::elastic, 1, 3, 48);
  std::ostringstream a, b;
  write_curve_csv(a, prof);
  write_curve_csv(b, prof);
  REQUIRE(a.str() == b.str());
  REQUIRE(a.str().find("e+00") == std::string::npos);  // no padded exponents

  std::ostringstream sa, sb;
  write_svg(sa, prof);
  write_svg(sb, prof);
  REQUIRE(sa.str() == sb.str());
}

TEST_CASE("malformed curve files are rejected", "[io][errors]") {
  const std::string path = tmp_path("ragged.csv");
  {
    std::ofstream os(path);
    os << "s,x,y,theta,k,k_s\n";
    os << "0,1,0,0,1,0\n";
    os << "0.1,0.99,0.1,0.1\n";  // short row
  }
  REQUIRE_THROWS_AS(read_curve_csv(path), UsageError);
  std::remove(path.c_str());
  REQUIRE_THROWS_AS(read_curve_csv("/tmp/ssflow_io_test_missing.csv"),
                    UsageError);
  REQUIRE_THROWS_AS(write_curve_csv("/no-such-dir/x.csv",
                                    sample_profile(FlowKind::elastic, 1, 3, 8)),
                    UsageError);
}

TEST_CASE("manifests round trip losslessly", "[io]") {
  const ClosedProfile prof = sample_profile(FlowKind::curve_diffusion, 3, 4, 32);
  SolveOptions opt;
  BranchInfo info{7, 0.21};
  RunManifest m = make_manifest(prof, opt, &info);

  REQUIRE(m.has("run.timestamp"));
  REQUIRE(m.get("flow") == "cdf");
  REQUIRE(m.get_real("epsilon") == prof.eps);
  REQUIRE(m.get_real("branch.eps_last") == 0.21);
  REQUIRE(m.get("branch.points") == "7");

  const std::string path = tmp_path("manifest.txt");
  write_manifest(path, m);
  const RunManifest back = read_manifest(path);
  REQUIRE(back.entries == m.entries);
  REQUIRE(back.get_real("L") == prof.L);
  REQUIRE(back.get_real("closure_residual") == prof.closure_residual);
  std::remove(path.c_str());
}

TEST_CASE("manifest set is an upsert", "[io]") {
  RunManifest m;
  m.set("key", 1.5);
  m.set("key", 2.5);
  REQUIRE(m.entries.size() == 1);
  REQUIRE(m.get_real("key") == 2.5);
  REQUIRE_FALSE(m.has("other"));
  REQUIRE_THROWS_AS(m.get("other"), UsageError);
}

TEST_CASE("vector graphic has one polyline per doubled half-arc", "[io]") {
  const int q = 5;
  const ClosedProfile prof = sample_profile(FlowKind::curve_diffusion, 1, q, 32);
  std::ostringstream os;
  write_svg(os, prof);
  const std::string svg = os.str();

  REQUIRE(svg.find("<svg") != std::string::npos);
  REQUIRE(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
  REQUIRE(svg.rfind("</svg>\n") == svg.size() - 7);

  std::size_t count = 0;
  for (std::size_t at = svg.find("<polyline"); at != std::string::npos;
       at = svg.find("<polyline", at + 1)) {
    ++count;
  }
  REQUIRE(count == 2 * q);
  REQUIRE(svg.find("#1f6f8b") != std::string::npos);
  REQUIRE(svg.find("#c2472e") != std::string::npos);
}

TEST_CASE("verify reports list every field per record", "[io]") {
  CheckReport r;
  r.id = "demo_check";
  r.computed = {1.0, 2.0};
  r.reference = {1.0, 2.0};
  r.tolerance = 1e-9;
  r.metric = 3e-12;
  r.passed = true;
  r.runtime = 0.25;
  r.note = "two matching values";

  std::ostringstream os;
  write_verify_report(os, {r});
  const std::string rep = os.str();
  REQUIRE(rep.find("check = demo_check") != std::string::npos);
  REQUIRE(rep.find("passed = true") != std::string::npos);
  REQUIRE(rep.find("tolerance = ") != std::string::npos);
  REQUIRE(rep.find("metric = ") != std::string::npos);
  REQUIRE(rep.find("computed = ") != std::string::npos);
  REQUIRE(rep.find("reference = ") != std::string::npos);
  REQUIRE(rep.find("note = two matching values") != std::string::npos);
}
