#include "z2top/zktop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "z2top/error.hpp"

namespace z2top {

ZkSystem::ZkSystem(int k) : k_(k) {
  if (k < 2 || k > 64) throw InvalidParameter("k must lie in [2, 64], got " + std::to_string(k));
}

void zk_rhs(const ZkSystem& system, std::span<const double> omega, std::span<double> out) {
  const std::size_t d = system.dim();
  if (omega.size() != d || out.size() != d) throw InvalidParameter("state length must be k+1");
  // Prefix/suffix products avoid dividing by zero entries.
  double prefix = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = prefix;
    prefix *= omega[i];
  }
  double suffix = 1.0;
  for (std::size_t i = d; i-- > 0;) {
    out[i] *= suffix;
    suffix *= omega[i];
  }
}

std::vector<double> zk_rhs(const ZkSystem& system, std::span<const double> omega) {
  std::vector<double> out(system.dim());
  zk_rhs(system, omega, out);
  return out;
}

std::vector<double> zk_invariants(const ZkSystem& system, std::span<const double> omega) {
  if (omega.size() != system.dim()) throw InvalidParameter("state length must be k+1");
  std::vector<double> out(system.dim() - 1);
  for (std::size_t i = 0; i + 1 < omega.size(); ++i) {
    out[i] = omega[i] * omega[i] - omega[i + 1] * omega[i + 1];
  }
  return out;
}

int zk_genus(int k) {
  if (k < 2) throw InvalidParameter("k must be at least 2");
  return k - 1;
}

Trajectory integrate_zk(const ZkSystem& system, std::span<const double> omega0, double t_end,
                        const IntegratorOptions& options) {
  if (omega0.size() != system.dim()) throw InvalidParameter("state length must be k+1");
  return integrate_ode(
      [&system](double, std::span<const double> x, std::span<double> dx) {
        zk_rhs(system, x, dx);
      },
      omega0, t_end, options);
}

ZkDrift zk_drift(const ZkSystem& system, const Trajectory& trajectory) {
  if (trajectory.samples.empty()) throw InvalidParameter("empty trajectory");
  ZkDrift out;
  out.initial = zk_invariants(system, trajectory.samples.front().x);
  out.max_drift.assign(out.initial.size(), 0.0);
  for (const Sample& s : trajectory.samples) {
    const std::vector<double> v = zk_invariants(system, s.x);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double diff = std::abs(v[i] - out.initial[i]);
      const double drift =
          std::abs(out.initial[i]) >= 1e-12 ? diff / std::abs(out.initial[i]) : diff;
      out.max_drift[i] = std::max(out.max_drift[i], drift);
    }
  }
  out.worst = out.max_drift.empty()
                  ? 0.0
                  : *std::max_element(out.max_drift.begin(), out.max_drift.end());
  return out;
}

}  // namespace z2top

namespace z2top {

double zk_guarded_horizon(const ZkSystem& system, std::span<const double> omega0) {
  if (omega0.size() != system.dim()) throw InvalidParameter("state length must be k+1");
  double m = 0.0;
  for (double w : omega0) m = std::max(m, std::abs(w));
  if (m == 0.0) return 1.0;
  const int k = system.k();
  return 0.4 / ((k - 1) * std::pow(m, k - 1));
}

}  // namespace z2top
