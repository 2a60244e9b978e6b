#pragma once

// First integrals of the top in a-coordinates:
//
//   T    = (prod_k a_k)^(1 / (2^(n-1) - 1))         (positive branch)
//   N_ij = T (a_i - a_j) / (a_i a_j)
//   g_i  = a_i prod_{lines {i,j,k}, j<k} (a_j - a_k)  = prod N_jk
//
// N and g are constant along the flow; T is not.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "z2top/dynamics.hpp"

namespace z2top {

/// Throws DomainError unless every entry is strictly positive. The exponent
/// is 1 / ((d - 1) / 2), so the length must be 2^n - 1.
double big_t(std::span<const double> a);

/// Antisymmetric matrix N_ij (0-based storage).
Eigen::MatrixXd n_matrix(std::span<const double> a);

/// The d - 1 quantities N_1j, j = 2..d.
Eigen::VectorXd n_first_row(std::span<const double> a);

std::vector<double> gamma(const TopSystem& system, std::span<const double> a);

struct InvariantSet {
  double T;
  Eigen::MatrixXd N;
  std::vector<double> gamma;
};

InvariantSet evaluate_invariants(const TopSystem& system, std::span<const double> a);

/// Central-difference Jacobian of {N_1j} with respect to a ((d-1) x d).
Eigen::MatrixXd n_first_row_jacobian(std::span<const double> a, double step = 1e-5);

/// Exact Jacobian of {g_i} with respect to a (d x d).
Eigen::MatrixXd gamma_jacobian(const TopSystem& system, std::span<const double> a);

/// Count of singular values above rel_threshold * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double rel_threshold = 1e-8);

// ---------------------------------------------------------------------------
// Drift along trajectories

struct InvariantDrift {
  std::string name;     // "N_1_2", "gamma_3", ...
  double initial = 0;
  double max_drift = 0;  // relative, or absolute when |initial| < 1e-12
  double time_of_max = 0;
  bool relative = true;
};

struct DriftReport {
  std::vector<InvariantDrift> entries;
  /// Sample indices at which T was undefined (non-positive a); the N family
  /// is skipped there.
  std::vector<std::size_t> domain_failures;

  double max_drift() const;
  /// Max over entries whose name starts with `prefix`.
  double max_drift(std::string_view prefix) const;
};

inline constexpr double kAbsoluteDriftFloor = 1e-12;

/// Evaluates {N_1j} and {g_i} at every sample and reports the worst deviation
/// from the t = 0 value.
DriftReport drift_report(const TopSystem& system, const Trajectory& trajectory,
                         Coordinates coordinates);

}  // namespace z2top
