// Command-line front end: solve one (p, q) target, run the verification
// catalogue, or sweep a range of symmetry orders.
//
// Exit codes: 0 success; 1 target unreachable or branch lost; 2 usage
// errors (bad flags, unknown checks, out-of-window targets); 3 any other
// numeric failure.

#include <atomic>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ssflow/errors.hpp"
#include "ssflow/flow_cdf.hpp"
#include "ssflow/flow_elastic.hpp"
#include "ssflow/flow_ideal.hpp"
#include "ssflow/glue.hpp"
#include "ssflow/io.hpp"
#include "ssflow/verify.hpp"
#include "ssflow/version.hpp"

namespace {

using namespace ssflow;

int classify(const Error& e) {
  if (dynamic_cast<const UsageError*>(&e)) return 2;
  if (dynamic_cast<const UnknownCheck*>(&e)) return 2;
  if (dynamic_cast<const TargetUnreachable*>(&e)) return 1;
  if (dynamic_cast<const BranchLost*>(&e)) return 1;
  return 3;
}

FlowKind parse_flow(const std::string& s) {
  if (s == "ef") return FlowKind::elastic;
  if (s == "cdf") return FlowKind::curve_diffusion;
  if (s == "ideal") return FlowKind::ideal;
  throw UsageError("unknown flow '" + s + "' (expected ef, cdf or ideal)");
}

struct SolveOutcome {
  ClosedProfile profile;
  RunManifest manifest;
};

SolveOutcome run_one(FlowKind kind, int p, int q, int samples,
                     const SolveOptions& opt) {
  BranchInfo branch;
  ArcSamples arc;
  switch (kind) {
    case FlowKind::elastic:
      arc = to_centred(ef_solve_epsilon(p, q, opt, &branch), samples);
      break;
    case FlowKind::curve_diffusion:
      arc = to_centred(cdf_solve_epsilon(p, q, opt, &branch), samples);
      break;
    case FlowKind::ideal:
      arc = to_centred(ideal_solve_epsilon(p, q, opt, &branch), samples);
      break;
  }
  ClosedProfile prof = double_and_close(arc, p, q, opt.angle_tol);
  RunManifest m = make_manifest(prof, opt, &branch);
  m.set("profile_residual", profile_residual(prof));
  m.set("dihedral_residual", dihedral_residual(prof));
  m.set("interior_seam_hits", static_cast<int>(seam_scan(arc).size()));
  if (kind == FlowKind::elastic) {
    double worst = -1.0;
    const int n = static_cast<int>(arc.pts.size()) - 1;
    for (int i = 1; i < n; ++i) worst = std::max(worst, arc.pts[i].k_s);
    m.set("ef.max_interior_k_s", worst);
  }
  return SolveOutcome{std::move(prof), std::move(m)};
}

void write_outputs(const std::string& dir, const SolveOutcome& out) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_curve_csv((base / "curve.csv").string(), out.profile);
  write_svg((base / "profile.svg").string(), out.profile);
  write_manifest((base / "manifest.txt").string(), out.manifest);
}

SolveOptions make_options(double tol_rel, double tol_abs, double angle_tol,
                          bool unlock, std::optional<double> seed_eps) {
  SolveOptions opt;
  opt.ode.rel_tol = tol_rel;
  opt.ode.abs_tol = tol_abs;
  opt.angle_tol = angle_tol;
  opt.unlock_wide_angles = unlock;
  opt.seed_eps = seed_eps;
  return opt;
}

int cmd_solve(const std::string& flow, int p, int q, const std::string& out,
              int samples, const SolveOptions& opt) {
  const FlowKind kind = parse_flow(flow);
  const SolveOutcome res = run_one(kind, p, q, samples, opt);
  write_outputs(out, res);
  std::cout << "flow=" << flow << " p=" << p << " q=" << q
            << " epsilon=" << res.manifest.get("epsilon")
            << " closure=" << res.manifest.get("closure_residual")
            << " turning=" << res.manifest.get("turning_number") << "\n";
  return 0;
}

int cmd_verify(const std::vector<std::string>& only, const std::string& out,
               const SolveOptions& opt) {
  std::vector<std::string> ids = only;
  if (ids.empty()) ids = verify_check_ids();
  std::vector<CheckReport> reports;
  bool all_passed = true;
  for (const std::string& id : ids) {
    CheckReport r = run_verify_check(id, opt.ode);
    all_passed = all_passed && r.passed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id
              << " metric=" << ssflow::detail::fmt17(r.metric)
              << " tol=" << ssflow::detail::fmt17(r.tolerance) << " ("
              << r.runtime << " s)\n";
    reports.push_back(std::move(r));
  }
  if (!out.empty()) write_verify_report(out, reports);
  return all_passed ? 0 : 1;
}

int cmd_sweep(const std::string& flow, int q_min, int q_max,
              const std::string& out, int jobs, int samples,
              const SolveOptions& opt) {
  const FlowKind kind = parse_flow(flow);
  if (q_min < 2 || q_max < q_min) throw UsageError("sweep: bad q range");

  struct Row {
    int q = 0, p = 0;
    bool ok = false;
    std::string text;
  };
  std::vector<Row> rows(static_cast<std::size_t>(q_max - q_min + 1));
  std::atomic<int> next{q_min};
  const unsigned n_workers = jobs > 0
                                 ? static_cast<unsigned>(jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());

  auto worker = [&]() {
    for (;;) {
      const int q = next.fetch_add(1);
      if (q > q_max) return;
      const int p = kind == FlowKind::elastic ? 1 : q - 1;
      Row row;
      row.q = q;
      row.p = p;
      try {
        const SolveOutcome res = run_one(kind, p, q, samples, opt);
        if (!out.empty()) {
          write_outputs(
              (std::filesystem::path(out) / ("q_" + std::to_string(q))).string(),
              res);
        }
        row.ok = true;
        row.text = "eps=" + res.manifest.get("epsilon") +
                   " closure=" + res.manifest.get("closure_residual") +
                   " turning=" + res.manifest.get("turning_number");
      } catch (const Error& e) {
        row.ok = false;
        row.text = std::string("error: ") + e.what();
      }
      rows[static_cast<std::size_t>(q - q_min)] = std::move(row);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  bool all_ok = true;
  for (const Row& row : rows) {
    all_ok = all_ok && row.ok;
    std::cout << "q=" << row.q << " p=" << row.p << " "
              << (row.ok ? "ok " : "FAILED ") << row.text << "\n";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar profile curves for three curvature flows"};
  app.set_version_flag("--version", std::string(ssflow::kVersion));
  app.require_subcommand(1);

  std::string flow, out_dir, report_out;
  int p = 0, q = 0, samples = 2048;
  int q_min = 5, q_max = 64, jobs = 1;
  double tol_rel = 1e-12, tol_abs = 1e-12, angle_tol = 1e-10;
  bool unlock = false;
  double seed_eps_val = 0.0;
  std::vector<std::string> only;

  CLI::App* solve = app.add_subcommand("solve", "solve one (p, q) target");
  solve->add_option("--flow", flow, "flow kind: ef, cdf or ideal")->required();
  solve->add_option("--p", p, "turning number")->required();
  solve->add_option("--q", q, "symmetry order")->required();
  solve->add_option("--out", out_dir, "output directory")->required();
  solve->add_option("--samples", samples, "samples per fundamental arc")
      ->check(CLI::Range(2048, 1 << 20));
  solve->add_option("--tol-rel", tol_rel, "integrator relative tolerance");
  solve->add_option("--tol-abs", tol_abs, "integrator absolute tolerance");
  solve->add_option("--angle-tol", angle_tol, "terminal angle tolerance");
  solve->add_flag("--unlock-wide-angles", unlock,
                  "allow targets outside (pi/2, pi) for cdf/ideal");
  CLI::Option* seed_opt =
      solve->add_option("--seed-eps", seed_eps_val, "continuation seed for eps");

  CLI::App* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("--only", only, "comma-separated check ids")
      ->delimiter(',');
  verify->add_option("--out", report_out, "write the report to this file");
  verify->add_option("--tol-rel", tol_rel, "integrator relative tolerance");
  verify->add_option("--tol-abs", tol_abs, "integrator absolute tolerance");

  CLI::App* sweep = app.add_subcommand("sweep", "solve a range of q");
  sweep->add_option("--flow", flow, "flow kind: ef, cdf or ideal")->required();
  sweep->add_option("--q-min", q_min, "first symmetry order");
  sweep->add_option("--q-max", q_max, "last symmetry order");
  sweep->add_option("--out", out_dir, "per-target output root (optional)");
  sweep->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  sweep->add_option("--samples", samples, "samples per fundamental arc")
      ->check(CLI::Range(16, 1 << 20));
  sweep->add_option("--tol-rel", tol_rel, "integrator relative tolerance");
  sweep->add_option("--tol-abs", tol_abs, "integrator absolute tolerance");
  sweep->add_option("--angle-tol", angle_tol, "terminal angle tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::optional<double> seed_eps;
  if (seed_opt->count() > 0) seed_eps = seed_eps_val;
  const ssflow::SolveOptions opt =
      make_options(tol_rel, tol_abs, angle_tol, unlock, seed_eps);

  try {
    if (solve->parsed()) return cmd_solve(flow, p, q, out_dir, samples, opt);
    if (verify->parsed()) return cmd_verify(only, report_out, opt);
    if (sweep->parsed()) {
      return cmd_sweep(flow, q_min, q_max, out_dir, jobs, samples, opt);
    }
  } catch (const ssflow::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
