#pragma once

// The (2^n - 1)-dimensional top built from the lines of PG(n-1, 2):
//
//   dw_i/dt = sum over lines {i, j, k} of w_j w_k,
//
// and its linear change of variables a = A w, under which the flow becomes
// da_i/dt = a_i (S - a_i) with S = sum(a) / 2^(n-1).

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "z2top/geometry.hpp"
#include "z2top/integrator.hpp"

namespace z2top {

enum class Coordinates { omega, a };

std::string_view to_string(Coordinates c);

class TopSystem {
 public:
  explicit TopSystem(int n);

  int n() const { return n_; }
  std::size_t dim() const { return dim_; }
  /// 2^(n-1) - 1: product terms per equation.
  std::size_t terms_per_equation() const { return geometry::plane_order(n_); }
  const std::vector<geometry::Line>& lines() const { return lines_; }

  /// Pairs {j, k} (j < k) with {i, j, k} a line; i is 1-based.
  std::span<const std::array<geometry::PointIndex, 2>> partners(geometry::PointIndex i) const {
    return partners_[i - 1];
  }

  /// Entry A[v][p] (both 1-based): 1 iff sum_i v_i p_{n-1-i} = 1 mod 2.
  /// Row v is the indicator of the complement of the hyperplane with normal
  /// reverse(v); the pairing is symmetric.
  int a_entry(geometry::PointIndex v, geometry::PointIndex p) const {
    return a_matrix_[(v - 1) * dim_ + (p - 1)];
  }
  /// Points whose w's are summed into a_v.
  std::span<const geometry::PointIndex> a_support(geometry::PointIndex v) const {
    return a_support_[v - 1];
  }

 private:
  int n_;
  std::size_t dim_;
  std::vector<geometry::Line> lines_;
  std::vector<std::vector<std::array<geometry::PointIndex, 2>>> partners_;
  std::vector<std::uint8_t> a_matrix_;
  std::vector<std::vector<geometry::PointIndex>> a_support_;
};

/// Reverses the n low bits of p.
geometry::PointIndex reverse_bits(geometry::PointIndex p, int n);

std::vector<double> omega_rhs(const TopSystem& system, std::span<const double> omega);
void omega_rhs(const TopSystem& system, std::span<const double> omega, std::span<double> out);

std::vector<double> a_transform(const TopSystem& system, std::span<const double> omega);

/// Inverse of a_transform via A^2 = 2^(n-2) (I + J):
/// w = 2^-(n-2) (A a - sum(a) / 2).
std::vector<double> a_inverse(const TopSystem& system, std::span<const double> a);

/// S = sum(a) / 2^(n-1).
double s_value(const TopSystem& system, std::span<const double> a);

std::vector<double> a_rhs(const TopSystem& system, std::span<const double> a);
void a_rhs(const TopSystem& system, std::span<const double> a, std::span<double> out);

/// Integrates either the w-flow or the a-flow from t = 0 to t_end.
Trajectory integrate(const TopSystem& system, Coordinates rhs_kind, std::span<const double> x0,
                     double t_end, const IntegratorOptions& options = {});

/// Horizon 0.4 / ((2^(n-1) - 1) max|w0|). The largest |w_i| obeys
/// m' <= (2^(n-1) - 1) m^2, so this stays below 40% of the earliest possible
/// pole. Falls back to 1 for the zero state.
double guarded_horizon(const TopSystem& system, std::span<const double> omega0);

/// Applies a relabelling: out[c(p)] = x[p].
std::vector<double> relabel(const geometry::Collineation& c, std::span<const double> x);

}  // namespace z2top
