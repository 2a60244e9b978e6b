// Command-line driver: geometry dumps, equation listings, seeded integrations
// with drift reports, the reduction cross-check and the (k+1)-variable system.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "z2top/dynamics.hpp"
#include "z2top/error.hpp"
#include "z2top/fixtures.hpp"
#include "z2top/geometry.hpp"
#include "z2top/invariants.hpp"
#include "z2top/io.hpp"
#include "z2top/reduction.hpp"
#include "z2top/sampling.hpp"
#include "z2top/zktop.hpp"

namespace {

using namespace z2top;

enum ExitCode : int {
  kOk = 0,
  kError = 1,
  kBlowUp = 2,
  kStepFailure = 3,
  kDegenerate = 4,
  kDriftExceeded = 5,
  kBranchFailure = 6,
  kUsage = 64,
};

int exit_code(Termination t) {
  switch (t) {
    case Termination::completed: return kOk;
    case Termination::blow_up: return kBlowUp;
    case Termination::step_failure: return kStepFailure;
    case Termination::branch_failure: return kBranchFailure;
  }
  return kError;
}

bool use_color() { return std::getenv("Z2TOP_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO); }

struct StateOptions {
  std::vector<double> omega0;
  std::uint64_t seed = 1;
  std::vector<double> range{0.1, 0.5};
  std::optional<double> t_end;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  std::size_t samples = 100;
  std::string format = "json";
  std::string out;

  void add_to(CLI::App* cmd, const std::vector<std::string>& formats) {
    cmd->add_option("--omega0", omega0, "Initial w, comma separated (default: seeded random)")
        ->delimiter(',');
    cmd->add_option("--seed", seed, "Seed for random initial states")->capture_default_str();
    cmd->add_option("--range", range, "Interval lo,hi for random initial entries")
        ->delimiter(',')
        ->expected(2)
        ->capture_default_str();
    cmd->add_option("--t-end", t_end, "Final time (default: guarded horizon)");
    cmd->add_option("--rel-tol", rel_tol, "Relative tolerance")->capture_default_str();
    cmd->add_option("--abs-tol", abs_tol, "Absolute tolerance")->capture_default_str();
    cmd->add_option("--samples", samples, "Number of output intervals")->capture_default_str();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember(formats))
        ->capture_default_str();
    cmd->add_option("--out", out, "Output path (written atomically)");
  }

  IntegratorOptions integrator() const {
    IntegratorOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = abs_tol;
    opt.output_intervals = samples;
    return opt;
  }

  std::vector<double> initial_state(std::size_t dim) const {
    if (!omega0.empty()) {
      if (omega0.size() != dim) {
        throw InvalidParameter("--omega0 needs " + std::to_string(dim) + " values, got " +
                               std::to_string(omega0.size()));
      }
      return omega0;
    }
    if (range.size() != 2 || !(range[0] < range[1])) throw InvalidParameter("--range needs lo < hi");
    return UniformSampler(seed).vector(dim, range[0], range[1]);
  }

  nlohmann::json metadata() const {
    return {{"seed", omega0.empty() ? nlohmann::json(seed) : nlohmann::json(nullptr)},
            {"rel_tol", rel_tol},
            {"abs_tol", abs_tol},
            {"samples", samples}};
  }
};

void emit(const std::string& out, const std::string& contents) {
  if (out.empty()) {
    std::cout << contents;
  } else {
    io::write_atomic(out, contents);
  }
}

int cmd_geometry(int n, const std::string& format, const std::string& out) {
  const auto g = geometry::Geometry::build(n);
  emit(out, format == "dot" ? io::geometry_dot(g) : io::dump(io::geometry_json(g)));
  return kOk;
}

int cmd_equations(int n, const std::string& labelling, const std::string& out) {
  const TopSystem system(n);
  const auto map = labelling == "reference" ? fixtures::reference_labelling(n)
                                            : geometry::Collineation::identity(n);
  emit(out, io::equations_text(system, map));
  return kOk;
}

int cmd_run(int n, const std::string& rhs, const StateOptions& opt,
            std::optional<double> drift_threshold, std::string drift_out) {
  const TopSystem system(n);
  const std::vector<double> omega0 = opt.initial_state(system.dim());
  const Coordinates coords = rhs == "a" ? Coordinates::a : Coordinates::omega;
  const std::vector<double> x0 = coords == Coordinates::a ? a_transform(system, omega0) : omega0;
  const double t_end = opt.t_end.value_or(guarded_horizon(system, omega0));

  const Trajectory traj = integrate(system, coords, x0, t_end, opt.integrator());
  const DriftReport report = drift_report(system, traj, coords);

  nlohmann::json meta = opt.metadata();
  meta["system"] = "top";
  meta["n"] = n;
  meta["dimension"] = system.dim();
  meta["coordinates"] = std::string(to_string(coords));
  meta["t_end"] = t_end;

  if (!opt.out.empty()) {
    io::write_atomic(opt.out, opt.format == "csv" ? io::trajectory_csv(traj)
                                                  : io::dump(io::trajectory_json(traj, meta)));
    if (drift_out.empty()) drift_out = opt.out + ".drift.json";
  }
  if (!drift_out.empty()) io::write_atomic(drift_out, io::dump(io::drift_json(report)));

  std::cout << "n=" << n << " d=" << system.dim() << " coordinates=" << to_string(coords)
            << " t_end=" << t_end << " termination=" << to_string(traj.termination)
            << " steps=" << traj.accepted_steps << "\n";
  std::cout << io::drift_table(report, use_color());

  if (!traj.completed()) return exit_code(traj.termination);
  if (drift_threshold && report.max_drift() > *drift_threshold) {
    std::cerr << "max drift " << report.max_drift() << " exceeds threshold " << *drift_threshold
              << "\n";
    return kDriftExceeded;
  }
  return kOk;
}

int cmd_reduce(int n, const StateOptions& opt) {
  const TopSystem system(n);
  const std::vector<double> omega0 = opt.initial_state(system.dim());
  const double t_end = opt.t_end.value_or(guarded_horizon(system, omega0));
  const RouteComparison cmp = compare_routes(system, omega0, t_end, opt.integrator());

  std::cout << "n=" << n << " genus=" << cmp.genus << " t_end=" << t_end
            << " samples=" << cmp.t_grid.size() << " max_rel_err=" << cmp.max_rel_err << "\n";
  if (!opt.out.empty()) io::write_atomic(opt.out, io::dump(io::comparison_json(cmp)));
  if (cmp.omega_termination != Termination::completed) return exit_code(cmp.omega_termination);
  return exit_code(cmp.r_termination);
}

int cmd_zk(int k, const StateOptions& opt) {
  const ZkSystem system(k);
  const std::vector<double> omega0 = opt.initial_state(system.dim());
  const double t_end = opt.t_end.value_or(zk_guarded_horizon(system, omega0));
  const Trajectory traj = integrate_zk(system, omega0, t_end, opt.integrator());
  const ZkDrift drift = zk_drift(system, traj);

  std::cout << "k=" << k << " genus=" << zk_genus(k) << " t_end=" << t_end
            << " termination=" << to_string(traj.termination) << " max_drift=" << drift.worst
            << "\n";
  if (!opt.out.empty()) {
    nlohmann::json meta = opt.metadata();
    meta["system"] = "zk";
    meta["k"] = k;
    meta["t_end"] = t_end;
    io::write_atomic(opt.out, opt.format == "csv" ? io::trajectory_csv(traj)
                                                  : io::dump(io::trajectory_json(traj, meta)));
    io::write_atomic(opt.out + ".invariants.json", io::dump(io::zk_json(system, traj, drift)));
  }
  return exit_code(traj.termination);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrable tops over PG(n-1, 2)"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  int n = 3;
  int k = 2;
  std::string geo_format = "json";
  std::string geo_out;
  auto* geo = app.add_subcommand("geometry", "Dump points, lines and hyperplanes");
  geo->add_option("--n", n, "Projective dimension + 1")->capture_default_str();
  geo->add_option("--format", geo_format)->check(CLI::IsMember({"json", "dot"}))
      ->capture_default_str();
  geo->add_option("--out", geo_out, "Output path");

  std::string labelling = "canonical";
  std::string eq_out;
  auto* eqs = app.add_subcommand("equations", "List the top equations");
  eqs->add_option("--n", n)->capture_default_str();
  eqs->add_option("--labelling", labelling, "canonical or reference (published labels)")
      ->transform(CLI::IsMember({"canonical", "reference"}))
      ->capture_default_str();
  eqs->add_option("--out", eq_out, "Output path");

  StateOptions run_opt;
  std::string rhs = "omega";
  std::optional<double> drift_threshold;
  std::string drift_out;
  auto* run = app.add_subcommand("run", "Integrate the top and report invariant drift");
  run->add_option("--n", n)->capture_default_str();
  run->add_option("--rhs", rhs, "Integrate in omega or a coordinates")
      ->check(CLI::IsMember({"omega", "a"}))
      ->capture_default_str();
  run->add_option("--drift-threshold", drift_threshold, "Exit 5 if max drift exceeds this");
  run->add_option("--drift-out", drift_out, "Drift report path (default: <out>.drift.json)");
  run_opt.add_to(run, {"json", "csv"});

  StateOptions reduce_opt;
  auto* reduce = app.add_subcommand("reduce", "Compare the full flow with the scalar reduction");
  reduce->add_option("--n", n)->capture_default_str();
  reduce_opt.add_to(reduce, {"json"});

  StateOptions zk_opt;
  auto* zk = app.add_subcommand("zk", "Integrate the (k+1)-variable product system");
  zk->add_option("--k", k)->capture_default_str();
  zk_opt.add_to(zk, {"json", "csv"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*geo) return cmd_geometry(n, geo_format, geo_out);
    if (*eqs) return cmd_equations(n, labelling, eq_out);
    if (*run) return cmd_run(n, rhs, run_opt, drift_threshold, drift_out);
    if (*reduce) return cmd_reduce(n, reduce_opt);
    if (*zk) return cmd_zk(k, zk_opt);
  } catch (const DegenerateOrbit& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const DomainError& e) {
    std::cerr << "branch failure: " << e.what() << "\n";
    return kBranchFailure;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
