#include "z2top/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "z2top/error.hpp"

namespace z2top {

namespace {

// (d - 1) / 2 for d = 2^n - 1.
int t_exponent_denominator(std::size_t d) {
  if (d < 3 || ((d + 1) & d) != 0) {
    throw InvalidParameter("a-vector length must be 2^n - 1 with n >= 2");
  }
  return static_cast<int>((d - 1) / 2);
}

}  // namespace

double big_t(std::span<const double> a) {
  const int m = t_exponent_denominator(a.size());
  double log_sum = 0.0;
  for (double x : a) {
    if (!(x > 0.0)) throw DomainError("T is defined only for strictly positive a");
    log_sum += std::log(x);
  }
  if (m == 1) {
    double prod = 1.0;
    for (double x : a) prod *= x;
    return prod;
  }
  return std::exp(log_sum / m);
}

Eigen::MatrixXd n_matrix(std::span<const double> a) {
  const double t = big_t(a);
  const auto d = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(d, d);
  // T (a_i - a_j) / (a_i a_j) = T (1/a_j - 1/a_i)
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double v = t * (a[i] - a[j]) / (a[i] * a[j]);
      n(i, j) = v;
      n(j, i) = -v;
    }
  }
  return n;
}

Eigen::VectorXd n_first_row(std::span<const double> a) {
  const double t = big_t(a);
  const auto d = static_cast<Eigen::Index>(a.size());
  Eigen::VectorXd row(d - 1);
  for (Eigen::Index j = 1; j < d; ++j) row(j - 1) = t * (a[0] - a[j]) / (a[0] * a[j]);
  return row;
}

std::vector<double> gamma(const TopSystem& system, std::span<const double> a) {
  if (a.size() != system.dim()) throw InvalidParameter("state length does not match dimension");
  std::vector<double> g(system.dim());
  for (geometry::PointIndex i = 1; i <= system.dim(); ++i) {
    double prod = a[i - 1];
    for (const auto& [j, k] : system.partners(i)) prod *= a[j - 1] - a[k - 1];
    g[i - 1] = prod;
  }
  return g;
}

InvariantSet evaluate_invariants(const TopSystem& system, std::span<const double> a) {
  return InvariantSet{big_t(a), n_matrix(a), gamma(system, a)};
}

Eigen::MatrixXd n_first_row_jacobian(std::span<const double> a, double step) {
  const auto d = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd jac(d - 1, d);
  std::vector<double> probe(a.begin(), a.end());
  for (Eigen::Index k = 0; k < d; ++k) {
    const double h = step * std::max(1.0, std::abs(a[k]));
    probe[k] = a[k] + h;
    const Eigen::VectorXd plus = n_first_row(probe);
    probe[k] = a[k] - h;
    const Eigen::VectorXd minus = n_first_row(probe);
    probe[k] = a[k];
    jac.col(k) = (plus - minus) / (2 * h);
  }
  return jac;
}

Eigen::MatrixXd gamma_jacobian(const TopSystem& system, std::span<const double> a) {
  if (a.size() != system.dim()) throw InvalidParameter("state length does not match dimension");
  const auto d = static_cast<Eigen::Index>(system.dim());
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d, d);
  for (geometry::PointIndex i = 1; i <= system.dim(); ++i) {
    const auto pairs = system.partners(i);
    // factors[0] = a_i, factors[p + 1] = a_j - a_k
    std::vector<double> factors;
    factors.push_back(a[i - 1]);
    for (const auto& [j, k] : pairs) factors.push_back(a[j - 1] - a[k - 1]);
    auto product_without = [&](std::size_t skip) {
      double prod = 1.0;
      for (std::size_t f = 0; f < factors.size(); ++f) {
        if (f != skip) prod *= factors[f];
      }
      return prod;
    };
    jac(i - 1, i - 1) += product_without(0);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const double rest = product_without(p + 1);
      jac(i - 1, pairs[p][0] - 1) += rest;
      jac(i - 1, pairs[p][1] - 1) -= rest;
    }
  }
  return jac;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_threshold * sv(0)) ++rank;
  }
  return rank;
}

double DriftReport::max_drift() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.max_drift);
  return m;
}

double DriftReport::max_drift(std::string_view prefix) const {
  double m = 0.0;
  for (const auto& e : entries) {
    if (std::string_view(e.name).starts_with(prefix)) m = std::max(m, e.max_drift);
  }
  return m;
}

DriftReport drift_report(const TopSystem& system, const Trajectory& trajectory,
                         Coordinates coordinates) {
  if (trajectory.samples.empty()) throw InvalidParameter("empty trajectory");
  const std::size_t d = system.dim();

  auto to_a = [&](const Sample& s) {
    return coordinates == Coordinates::a ? s.x : a_transform(system, s.x);
  };

  auto make_entry = [](std::string name, double initial) {
    InvariantDrift e;
    e.name = std::move(name);
    e.initial = initial;
    e.relative = std::abs(initial) >= kAbsoluteDriftFloor;
    return e;
  };
  auto update = [](InvariantDrift& e, double value, double t) {
    const double diff = std::abs(value - e.initial);
    const double drift = e.relative ? diff / std::abs(e.initial) : diff;
    if (drift > e.max_drift) {
      e.max_drift = drift;
      e.time_of_max = t;
    }
  };

  DriftReport report;
  const std::vector<double> a0 = to_a(trajectory.samples.front());

  std::optional<Eigen::VectorXd> n0;
  try {
    n0 = n_first_row(a0);
  } catch (const DomainError&) {
    report.domain_failures.push_back(0);
  }
  if (n0) {
    for (std::size_t j = 1; j < d; ++j) {
      report.entries.push_back(
          make_entry("N_1_" + std::to_string(j + 1), (*n0)(static_cast<Eigen::Index>(j - 1))));
    }
  }
  const std::vector<double> g0 = gamma(system, a0);
  const std::size_t gamma_offset = report.entries.size();
  for (std::size_t i = 0; i < d; ++i) {
    report.entries.push_back(make_entry("gamma_" + std::to_string(i + 1), g0[i]));
  }

  for (std::size_t s = 1; s < trajectory.samples.size(); ++s) {
    const Sample& sample = trajectory.samples[s];
    const std::vector<double> a = to_a(sample);
    if (n0) {
      try {
        const Eigen::VectorXd row = n_first_row(a);
        for (std::size_t j = 0; j + 1 < d; ++j) {
          update(report.entries[j], row(static_cast<Eigen::Index>(j)), sample.t);
        }
      } catch (const DomainError&) {
        report.domain_failures.push_back(s);
      }
    } else {
      report.domain_failures.push_back(s);
    }
    const std::vector<double> g = gamma(system, a);
    for (std::size_t i = 0; i < d; ++i) update(report.entries[gamma_offset + i], g[i], sample.t);
  }
  return report;
}

}  // namespace z2top
