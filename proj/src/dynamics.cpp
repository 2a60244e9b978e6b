#include "z2top/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "z2top/error.hpp"

namespace z2top {

using geometry::PointIndex;

std::string_view to_string(Coordinates c) {
  return c == Coordinates::omega ? "omega" : "a";
}

PointIndex reverse_bits(PointIndex p, int n) {
  PointIndex r = 0;
  for (int i = 0; i < n; ++i) {
    if ((p >> i) & 1U) r |= PointIndex{1} << (n - 1 - i);
  }
  return r;
}

TopSystem::TopSystem(int n)
    : n_(n), dim_((geometry::check_dimension(n), geometry::point_count(n))),
      lines_(geometry::lines(n)) {
  partners_.resize(dim_);
  for (PointIndex i = 1; i <= dim_; ++i) partners_[i - 1] = geometry::pairs_through(n, i);

  a_matrix_.assign(dim_ * dim_, 0);
  a_support_.resize(dim_);
  for (PointIndex v = 1; v <= dim_; ++v) {
    for (PointIndex p = 1; p <= dim_; ++p) {
      const int bit = geometry::gf2_dot(v, reverse_bits(p, n));
      a_matrix_[(v - 1) * dim_ + (p - 1)] = static_cast<std::uint8_t>(bit);
      if (bit) a_support_[v - 1].push_back(p);
    }
  }
}

namespace {

void check_length(const TopSystem& system, std::size_t size) {
  if (size != system.dim()) {
    throw InvalidParameter("state length " + std::to_string(size) + " does not match dimension " +
                           std::to_string(system.dim()));
  }
}

}  // namespace

void omega_rhs(const TopSystem& system, std::span<const double> omega, std::span<double> out) {
  check_length(system, omega.size());
  check_length(system, out.size());
  for (PointIndex i = 1; i <= system.dim(); ++i) {
    double sum = 0.0;
    for (const auto& [j, k] : system.partners(i)) sum += omega[j - 1] * omega[k - 1];
    out[i - 1] = sum;
  }
}

std::vector<double> omega_rhs(const TopSystem& system, std::span<const double> omega) {
  std::vector<double> out(system.dim());
  omega_rhs(system, omega, out);
  return out;
}

std::vector<double> a_transform(const TopSystem& system, std::span<const double> omega) {
  check_length(system, omega.size());
  std::vector<double> a(system.dim(), 0.0);
  for (PointIndex v = 1; v <= system.dim(); ++v) {
    double sum = 0.0;
    for (PointIndex p : system.a_support(v)) sum += omega[p - 1];
    a[v - 1] = sum;
  }
  return a;
}

std::vector<double> a_inverse(const TopSystem& system, std::span<const double> a) {
  check_length(system, a.size());
  double total = 0.0;
  for (double x : a) total += x;
  const double scale = std::ldexp(1.0, -(system.n() - 2));
  // A is symmetric, so A a reuses the row supports.
  std::vector<double> omega = a_transform(system, a);
  for (double& w : omega) w = scale * (w - 0.5 * total);
  return omega;
}

double s_value(const TopSystem& system, std::span<const double> a) {
  check_length(system, a.size());
  double total = 0.0;
  for (double x : a) total += x;
  return std::ldexp(total, -(system.n() - 1));
}

void a_rhs(const TopSystem& system, std::span<const double> a, std::span<double> out) {
  check_length(system, out.size());
  const double s = s_value(system, a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * (s - a[i]);
}

std::vector<double> a_rhs(const TopSystem& system, std::span<const double> a) {
  std::vector<double> out(system.dim());
  a_rhs(system, a, out);
  return out;
}

Trajectory integrate(const TopSystem& system, Coordinates rhs_kind, std::span<const double> x0,
                     double t_end, const IntegratorOptions& options) {
  check_length(system, x0.size());
  if (rhs_kind == Coordinates::omega) {
    return integrate_ode(
        [&system](double, std::span<const double> x, std::span<double> dx) {
          omega_rhs(system, x, dx);
        },
        x0, t_end, options);
  }
  return integrate_ode(
      [&system](double, std::span<const double> x, std::span<double> dx) {
        a_rhs(system, x, dx);
      },
      x0, t_end, options);
}

double guarded_horizon(const TopSystem& system, std::span<const double> omega0) {
  check_length(system, omega0.size());
  double m = 0.0;
  for (double w : omega0) m = std::max(m, std::abs(w));
  if (m == 0.0) return 1.0;
  return 0.4 / (static_cast<double>(system.terms_per_equation()) * m);
}

std::vector<double> relabel(const geometry::Collineation& c, std::span<const double> x) {
  if (c.size() != x.size()) throw InvalidParameter("relabelling size mismatch");
  std::vector<double> out(x.size());
  for (PointIndex p = 1; p <= x.size(); ++p) out[c(p) - 1] = x[p - 1];
  return out;
}

}  // namespace z2top
