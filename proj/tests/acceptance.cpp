// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: acceptance <path-to-z2top-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "z2top/dynamics.hpp"
#include "z2top/fixtures.hpp"
#include "z2top/geometry.hpp"
#include "z2top/invariants.hpp"
#include "z2top/reduction.hpp"
#include "z2top/sampling.hpp"
#include "z2top/zktop.hpp"

using namespace z2top;
using geometry::PointIndex;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

IntegratorOptions tolerance(double tol) {
  IntegratorOptions opt;
  opt.rel_tol = opt.abs_tol = tol;
  return opt;
}

Outcome geometry_counts() {
  for (int n = 2; n <= 6; ++n) {
    const auto g = geometry::Geometry::build(n);
    const std::size_t d = geometry::point_count(n);
    const std::size_t m = geometry::plane_order(n);
    if (g.points.size() != d || g.hyperplanes.size() != d) {
      return {false, "point/hyperplane count at n=" + std::to_string(n)};
    }
    std::vector<std::size_t> on_lines(d + 1, 0), on_planes(d + 1, 0);
    for (const auto& l : g.lines)
      for (auto p : l.points) ++on_lines[p];
    for (const auto& h : g.hyperplanes) {
      if (h.points.size() != m) return {false, "hyperplane size at n=" + std::to_string(n)};
      for (auto p : h.points) ++on_planes[p];
    }
    for (std::size_t p = 1; p <= d; ++p) {
      if (on_lines[p] != m || on_planes[p] != m) {
        return {false, "incidence at n=" + std::to_string(n)};
      }
    }
  }
  return {true, "n=2..6 exact"};
}

Outcome labelling_certification() {
  const auto start = std::chrono::steady_clock::now();
  const auto c3 = geometry::find_collineation(3, fixtures::fano_lines());
  const auto c4 = geometry::find_hyperplane_collineation(4, fixtures::pg32_planes());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = c3 && geometry::maps_lines(3, *c3, fixtures::fano_lines()) && c4.has_value();
  if (c4) {
    std::vector<std::vector<PointIndex>> sorted;
    for (auto p : fixtures::pg32_planes()) {
      std::sort(p.begin(), p.end());
      sorted.push_back(p);
    }
    for (const auto& h : geometry::hyperplanes(4)) {
      ok = ok && std::find(sorted.begin(), sorted.end(), c4->apply(h.points)) != sorted.end();
    }
  }
  return {ok && secs < 10.0, "search time " + std::to_string(secs) + " s"};
}

Outcome transform_commutation() {
  UniformSampler rng(3);
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const TopSystem sys(n);
    for (int trial = 0; trial < 100; ++trial) {
      const auto w = rng.vector(sys.dim(), -1, 1);
      const auto lhs = a_transform(sys, omega_rhs(sys, w));
      const auto rhs = a_rhs(sys, a_transform(sys, w));
      for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    }
  }
  return {worst < 1e-12, "max |A f(w) - g(A w)| = " + sci(worst)};
}

Outcome matrix_identity() {
  for (int n = 2; n <= 6; ++n) {
    const TopSystem sys(n);
    const auto d = static_cast<PointIndex>(sys.dim());
    for (PointIndex v = 1; v <= d; ++v) {
      for (PointIndex w = 1; w <= d; ++w) {
        long s = 0;
        for (PointIndex p = 1; p <= d; ++p) s += sys.a_entry(v, p) * sys.a_entry(p, w);
        if (s != (1L << (n - 2)) * ((v == w) + 1)) {
          return {false, "mismatch at n=" + std::to_string(n)};
        }
      }
    }
  }
  return {true, "n=2..6 exact"};
}

Outcome invariant_conservation() {
  std::ostringstream detail;
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    const TopSystem sys(n);
    UniformSampler rng(1000 + n);
    double worst_10 = 0.0, worst_12 = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto w0 = rng.vector(sys.dim(), 0.1, 0.5);
      const double horizon = guarded_horizon(sys, w0);
      const auto t10 = integrate(sys, Coordinates::omega, w0, horizon, tolerance(1e-10));
      const auto t12 = integrate(sys, Coordinates::omega, w0, horizon, tolerance(1e-12));
      if (!t10.completed() || !t12.completed()) return {false, "integration did not complete"};
      worst_10 = std::max(worst_10, drift_report(sys, t10, Coordinates::omega).max_drift());
      worst_12 = std::max(worst_12, drift_report(sys, t12, Coordinates::omega).max_drift());
    }
    ok = ok && worst_10 < 1e-8 && worst_12 < worst_10;
    detail << "n=" << n << ": " << sci(worst_10) << " -> " << sci(worst_12) << "  ";
  }
  return {ok, detail.str()};
}

Outcome independence_count() {
  UniformSampler rng(6);
  std::ostringstream detail;
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    const TopSystem sys(n);
    const auto a = rng.vector(sys.dim(), 0.2, 2.0);
    const int rank = numerical_rank(n_first_row_jacobian(a), 1e-8);
    ok = ok && rank == (1 << n) - 2;
    detail << "n=" << n << " rank " << rank << "  ";
  }
  return {ok, detail.str()};
}

Outcome reduction_equivalence() {
  double worst_route = 0.0, worst_tu = 0.0, worst_sum = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const TopSystem sys(n);
    UniformSampler rng(2000 + n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto w0 = rng.vector(sys.dim(), 0.1, 0.5);
      const double horizon = guarded_horizon(sys, w0);
      const auto cmp = compare_routes(sys, w0, horizon, tolerance(1e-10));
      if (cmp.omega_termination != Termination::completed ||
          cmp.r_termination != Termination::completed) {
        return {false, "route did not complete"};
      }
      worst_route = std::max(worst_route, cmp.max_rel_err);

      const auto data = compute_reduction(sys, a_transform(sys, w0));
      worst_sum = std::max(worst_sum, std::abs(std::accumulate(data.M.begin(), data.M.end(), 0.0)));

      const auto traj = integrate(sys, Coordinates::omega, w0, horizon, tolerance(1e-10));
      for (const auto& s : traj.samples) {
        worst_tu = std::max(worst_tu, tu_relation_residual(sys, a_transform(sys, s.x)));
      }
    }
  }
  return {worst_route < 1e-6 && worst_tu < 1e-10 && worst_sum < 1e-12,
          "route " + sci(worst_route) + ", T-U residual " + sci(worst_tu) + ", |sum M| " +
              sci(worst_sum)};
}

Outcome genus_values() {
  bool ok = genus(2) == 1 && genus(3) == 9 && genus(4) == 49;
  for (int k = 2; k <= 10; ++k) ok = ok && zk_genus(k) == k - 1;
  return {ok, "g(2,3,4) = " + std::to_string(genus(2)) + "," + std::to_string(genus(3)) + "," +
                  std::to_string(genus(4))};
}

Outcome zk_conservation() {
  double worst = 0.0;
  for (int k = 2; k <= 5; ++k) {
    const ZkSystem sys(k);
    UniformSampler rng(3000 + k);
    for (int trial = 0; trial < 10; ++trial) {
      const auto w0 = rng.vector(sys.dim(), 0.1, 0.5);
      const auto traj = integrate_zk(sys, w0, zk_guarded_horizon(sys, w0), tolerance(1e-10));
      if (!traj.completed()) return {false, "integration did not complete"};
      worst = std::max(worst, zk_drift(sys, traj).worst);
    }
  }
  const ZkSystem zk(2);
  const TopSystem top(2);
  UniformSampler rng(3100);
  double divergence = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto w0 = rng.vector(3, 0.1, 0.5);
    const double horizon = zk_guarded_horizon(zk, w0);
    const auto a = integrate_zk(zk, w0, horizon, tolerance(1e-10));
    const auto b = integrate(top, Coordinates::omega, w0, horizon, tolerance(1e-10));
    if (a.samples.size() != b.samples.size()) return {false, "sample grids differ"};
    for (std::size_t s = 0; s < a.samples.size(); ++s)
      for (int j = 0; j < 3; ++j)
        divergence = std::max(divergence, std::abs(a.samples[s].x[j] - b.samples[s].x[j]));
  }
  return {worst < 1e-8 && divergence < 1e-10,
          "drift " + sci(worst) + ", k=2 vs n=2 " + sci(divergence)};
}

Outcome symmetric_3d() {
  const TopSystem sys(2);
  const auto traj = integrate(sys, Coordinates::omega, std::vector<double>{1, 1, 1}, 0.5);
  if (!traj.completed() || traj.back().t != 0.5) return {false, "did not reach t=0.5"};
  double err = 0.0;
  for (double v : traj.back().x) err = std::max(err, std::abs(v - 2.0));
  return {err < 1e-8, "|w(0.5) - 2| = " + sci(err)};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const auto dir = std::filesystem::temp_directory_path() / "z2top_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::vector<std::string> runs = {"run --n 3 --seed 7", "run --n 4 --seed 8 --format csv",
                                   "reduce --n 3 --seed 9", "zk --k 4 --seed 10"};
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::string contents[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / ("out" + std::to_string(r) + "_" + std::to_string(rep));
      const std::string cmd = "\"" + cli + "\" " + runs[r] + " --out \"" + out.string() + "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + runs[r]};
      contents[rep] = read_file(out);
      if (std::filesystem::exists(out.string() + ".drift.json")) {
        contents[rep] += read_file(out.string() + ".drift.json");
      }
    }
    if (contents[0].empty() || contents[0] != contents[1]) {
      return {false, "outputs differ: " + runs[r]};
    }
  }
  std::filesystem::remove_all(dir);
  return {true, std::to_string(runs.size()) + " commands byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1  geometry counts", geometry_counts},
      {"2  labelling certification", labelling_certification},
      {"3  transform commutation", transform_commutation},
      {"4  A^2 = 2^(n-2)(I+J)", matrix_identity},
      {"5  invariant conservation", invariant_conservation},
      {"6  independence count", independence_count},
      {"7  reduction equivalence", reduction_equivalence},
      {"8  genus values", genus_values},
      {"9  zk conservation", zk_conservation},
      {"10 symmetric 3D solution", symmetric_3d},
      {"11 CLI determinism", [&] { return cli_determinism(cli); }},
  };

  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %-28s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu criteria, %d failed, %.2f s\n", criteria.size(), failures, secs);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
