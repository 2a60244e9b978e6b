#pragma once

// The (k+1)-variable system dw_i/dt = prod_{j != i} w_j. Every d(w_i^2)/dt
// equals 2 prod_j w_j, so the differences w_i^2 - w_j^2 are conserved; the
// reduced quadrature is hyperelliptic of genus k - 1.

#include <span>
#include <vector>

#include "z2top/integrator.hpp"

namespace z2top {

class ZkSystem {
 public:
  explicit ZkSystem(int k);

  int k() const { return k_; }
  std::size_t dim() const { return static_cast<std::size_t>(k_) + 1; }

 private:
  int k_;
};

std::vector<double> zk_rhs(const ZkSystem& system, std::span<const double> omega);
void zk_rhs(const ZkSystem& system, std::span<const double> omega, std::span<double> out);

/// {w_i^2 - w_{i+1}^2 : i = 1..k}.
std::vector<double> zk_invariants(const ZkSystem& system, std::span<const double> omega);

/// k - 1.
int zk_genus(int k);

Trajectory integrate_zk(const ZkSystem& system, std::span<const double> omega0, double t_end,
                        const IntegratorOptions& options = {});

struct ZkDrift {
  std::vector<double> initial;
  std::vector<double> max_drift;  // relative, absolute below 1e-12
  double worst = 0;
};

ZkDrift zk_drift(const ZkSystem& system, const Trajectory& trajectory);

}  // namespace z2top

namespace z2top {

/// 0.4 / ((k-1) max|w0|^(k-1)): the largest |w_i| obeys m' <= m^k, whose
/// solution cannot blow up before 1 / ((k-1) m0^(k-1)). 1 for the zero state.
double zk_guarded_horizon(const ZkSystem& system, std::span<const double> omega0);

}  // namespace z2top
