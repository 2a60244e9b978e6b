#pragma once

// Reduction of the a-flow to one scalar ODE.
//
// With M_j = sum_i N_ij / d and U = mean(1/a_i), every a_j satisfies
// 1/a_j = M_j / T + U. Setting R = T U gives dR/dt = T and
//
//   dR/dt = (prod_j (R + M_j))^(1 / 2^(n-1)),   a_j = T / (R + M_j).
//
// The associated curve has 2^(n-1) sheets, each with 2^(n-1) cuts from the
// degree 2^n - 1 product, and genus (2^(n-1) - 1)^2.

#include <span>
#include <vector>

#include "z2top/dynamics.hpp"
#include "z2top/integrator.hpp"

namespace z2top {

struct ReductionData {
  int n = 0;
  std::vector<double> M;
  double T0 = 0;
  double U0 = 0;
  double R0 = 0;
};

/// Relative spacing below which two a-entries count as coincident.
inline constexpr double kCoincidenceTolerance = 1e-12;
/// Residual bound checked on construction for 1/a_j = M_j/T + U and
/// T^(2^(n-1)) = prod (T U + M_j).
inline constexpr double kReductionResidualTolerance = 1e-10;

/// U = mean of 1/a_i.
double big_u(std::span<const double> a);

/// Throws DegenerateOrbit for non-positive or coincident entries.
ReductionData compute_reduction(const TopSystem& system, std::span<const double> a0);

/// |T^(2^(n-1)) - prod (T U + M_j)| / T^(2^(n-1)) with T, U and M recomputed
/// from a. Evaluated in log space.
double tu_relation_residual(const TopSystem& system, std::span<const double> a);

/// Real 2^(n-1)-th root of prod (R + M_j). Throws DomainError when the
/// product is not positive.
double scalar_rhs(double r, std::span<const double> M, int n);

Trajectory integrate_r(const ReductionData& data, double t_end,
                       const IntegratorOptions& options = {});

/// a_j = T / (R + M_j). Throws DomainError unless every R + M_j > 0.
std::vector<double> reconstruct_a(double r, const ReductionData& data);

/// (2^(n-1) - 1)^2.
long long genus(int n);

struct RouteComparison {
  int n = 0;
  std::vector<double> t_grid;
  double max_rel_err = 0;
  /// Max relative error per a-component over the grid.
  std::vector<double> per_component_err;
  long long genus = 0;
  Termination omega_termination = Termination::completed;
  Termination r_termination = Termination::completed;
};

/// Integrates the w-flow and the scalar R-flow on the same output grid and
/// compares a(t) = A w(t) with the reconstruction from R(t). Only grid points
/// reached by both routes are compared.
RouteComparison compare_routes(const TopSystem& system, std::span<const double> omega0,
                               double t_end, const IntegratorOptions& options = {});

}  // namespace z2top
