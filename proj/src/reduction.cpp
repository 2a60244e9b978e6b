#include "z2top/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "z2top/error.hpp"
#include "z2top/invariants.hpp"

namespace z2top {

double big_u(std::span<const double> a) {
  double sum = 0.0;
  for (double x : a) sum += 1.0 / x;
  return sum / static_cast<double>(a.size());
}

ReductionData compute_reduction(const TopSystem& system, std::span<const double> a0) {
  const std::size_t d = system.dim();
  if (a0.size() != d) throw InvalidParameter("state length does not match dimension");
  double scale = 0.0;
  for (double x : a0) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw DegenerateOrbit("reduction needs strictly positive a-coordinates");
    }
    scale = std::max(scale, x);
  }
  std::vector<double> sorted(a0.begin(), a0.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < d; ++i) {
    if (sorted[i] - sorted[i - 1] <= kCoincidenceTolerance * scale) {
      throw DegenerateOrbit("reduction needs pairwise distinct a-coordinates");
    }
  }

  ReductionData data;
  data.n = system.n();
  data.T0 = big_t(a0);
  data.U0 = big_u(a0);
  data.R0 = data.T0 * data.U0;

  const Eigen::MatrixXd n = n_matrix(a0);
  data.M.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    data.M[j] = n.col(static_cast<Eigen::Index>(j)).sum() / static_cast<double>(d);
  }

  for (std::size_t j = 0; j < d; ++j) {
    const double lhs = 1.0 / a0[j];
    const double rhs = data.M[j] / data.T0 + data.U0;
    if (std::abs(lhs - rhs) > kReductionResidualTolerance * std::abs(lhs)) {
      throw DegenerateOrbit("1/a_j = M_j/T + U fails at j=" + std::to_string(j + 1));
    }
  }
  if (tu_relation_residual(system, a0) > kReductionResidualTolerance) {
    throw DegenerateOrbit("T-U relation fails at the initial state");
  }
  return data;
}

double tu_relation_residual(const TopSystem& system, std::span<const double> a) {
  const std::size_t d = system.dim();
  const double t = big_t(a);
  const double u = big_u(a);
  const Eigen::MatrixXd n = n_matrix(a);
  // log(prod (T U + M_j)) - 2^(n-1) log T; each factor equals T / a_j > 0.
  double log_prod = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double m = n.col(static_cast<Eigen::Index>(j)).sum() / static_cast<double>(d);
    const double factor = t * u + m;
    if (!(factor > 0.0)) return std::numeric_limits<double>::infinity();
    log_prod += std::log(factor);
  }
  const double log_lhs = std::ldexp(std::log(t), system.n() - 1);
  return std::abs(std::expm1(log_prod - log_lhs));
}

double scalar_rhs(double r, std::span<const double> M, int n) {
  geometry::check_dimension(n);
  if (M.size() != geometry::point_count(n)) throw InvalidParameter("M has the wrong length");
  // Product may be positive with an even number of negative factors; take the
  // real root of |prod| in that case as well.
  double log_abs = 0.0;
  int negatives = 0;
  for (double m : M) {
    const double f = r + m;
    if (f == 0.0) throw DomainError("R + M_j vanishes");
    if (f < 0.0) ++negatives;
    log_abs += std::log(std::abs(f));
  }
  if (negatives % 2 != 0) throw DomainError("prod (R + M_j) is negative");
  return std::exp(std::ldexp(log_abs, -(n - 1)));
}

Trajectory integrate_r(const ReductionData& data, double t_end, const IntegratorOptions& options) {
  const std::vector<double> r0{data.R0};
  return integrate_ode(
      [&data](double, std::span<const double> x, std::span<double> dx) {
        dx[0] = scalar_rhs(x[0], data.M, data.n);
      },
      r0, t_end, options);
}

std::vector<double> reconstruct_a(double r, const ReductionData& data) {
  for (double m : data.M) {
    if (!(r + m > 0.0)) throw DomainError("reconstruction needs R + M_j > 0 for every j");
  }
  const double t = scalar_rhs(r, data.M, data.n);
  std::vector<double> a(data.M.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = t / (r + data.M[j]);
  return a;
}

long long genus(int n) {
  if (n < 2 || n > 32) throw InvalidParameter("genus defined here for 2 <= n <= 32");
  const long long sheets_minus_one = (1LL << (n - 1)) - 1;
  return sheets_minus_one * sheets_minus_one;
}

RouteComparison compare_routes(const TopSystem& system, std::span<const double> omega0,
                               double t_end, const IntegratorOptions& options) {
  const std::vector<double> a0 = a_transform(system, omega0);
  const ReductionData data = compute_reduction(system, a0);

  auto omega_route = std::async(std::launch::async, [&] {
    return integrate(system, Coordinates::omega, omega0, t_end, options);
  });
  const Trajectory r_traj = integrate_r(data, t_end, options);
  const Trajectory w_traj = omega_route.get();

  RouteComparison out;
  out.n = system.n();
  out.genus = genus(system.n());
  out.omega_termination = w_traj.termination;
  out.r_termination = r_traj.termination;
  out.per_component_err.assign(system.dim(), 0.0);

  // Both trajectories share the output grid; stop at the first sample that is
  // off-grid (a blow-up sample) or missing from either side.
  const std::size_t count = std::min(w_traj.samples.size(), r_traj.samples.size());
  for (std::size_t s = 0; s < count; ++s) {
    const Sample& ws = w_traj.samples[s];
    const Sample& rs = r_traj.samples[s];
    if (ws.t != rs.t) break;
    const std::vector<double> a_flow = a_transform(system, ws.x);
    std::vector<double> a_reduced;
    try {
      a_reduced = reconstruct_a(rs.x[0], data);
    } catch (const DomainError&) {
      out.r_termination = Termination::branch_failure;
      break;
    }
    out.t_grid.push_back(ws.t);
    for (std::size_t j = 0; j < a_flow.size(); ++j) {
      const double err = std::abs(a_reduced[j] - a_flow[j]) / std::abs(a_flow[j]);
      out.per_component_err[j] = std::max(out.per_component_err[j], err);
      out.max_rel_err = std::max(out.max_rel_err, err);
    }
  }
  return out;
}

}  // namespace z2top
